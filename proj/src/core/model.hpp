#pragma once

// Domain types and closed-form physical-layer evaluators for the three-node
// fading wiretap channel: a transmitter serving an information receiver (IR)
// while an energy receiver (ER) harvests power and may eavesdrop.
//
// Everything here is in linear units (watts, power gains). dBm appears only at
// the configuration boundary through dbm_to_watt / watt_to_dbm.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "core/error.hpp"

namespace swipt {

struct SystemParams {
  double p_avg = 0.1;       // average transmit power limit [W]
  double p_peak = 1.0;      // peak transmit power limit [W]
  double zeta = 0.5;        // harvesting efficiency
  double sigma1_sq = 1e-8;  // IR noise power [W]
  double sigma2_sq = 1e-8;  // ER noise power [W]
  double r0 = 0.0;          // target secrecy rate [bps/Hz], outage problems only

  // Throws Error(kInvalidArgument) naming the first violated invariant.
  void validate() const;
};

struct FadingState {
  double h = 0.0;  // Tx->IR channel power gain
  double g = 0.0;  // Tx->ER channel power gain

  friend bool operator==(const FadingState&, const FadingState&) = default;
};

class FadingEnsemble {
 public:
  FadingEnsemble(std::vector<FadingState> states, std::uint64_t seed);

  std::size_t size() const noexcept { return states_.size(); }
  const FadingState& operator[](std::size_t i) const { return states_[i]; }
  std::span<const FadingState> states() const noexcept { return states_; }
  std::uint64_t seed() const noexcept { return seed_; }

  auto begin() const noexcept { return states_.begin(); }
  auto end() const noexcept { return states_.end(); }

  double mean_g() const;

  friend bool operator==(const FadingEnsemble&, const FadingEnsemble&) = default;

 private:
  std::vector<FadingState> states_;
  std::uint64_t seed_;
};

struct PerStateDecision {
  double p = 0.0;      // transmit power [W]
  double alpha = 0.0;  // fraction of p spent on artificial noise

  friend bool operator==(const PerStateDecision&, const PerStateDecision&) = default;
};

enum class SchemeKind {
  AnCancelled,  // artificial noise known to and removed by the IR
  NoAN,         // no artificial noise, alpha forced to zero
  NoCancel,     // artificial noise interferes with both receivers
};

enum class ProblemKind {
  OutageMin,  // minimize secrecy outage probability
  EscMax,     // maximize ergodic secrecy capacity
};

struct DualPoint {
  double lambda = 0.0;  // average-power multiplier [1/W]
  double mu = 0.0;      // harvested-power multiplier [1/W]

  friend bool operator==(const DualPoint&, const DualPoint&) = default;
};

// One point of an outage-energy or rate-energy boundary. For OutageMin the
// objective is the non-outage probability, for EscMax the ergodic secrecy rate.
struct TradeoffPoint {
  ProblemKind kind = ProblemKind::OutageMin;
  double objective = 0.0;
  double harvested = 0.0;  // achieved average harvested power [W]
};

double secrecy_rate(SchemeKind scheme, const FadingState& state, const PerStateDecision& d,
                    const SystemParams& params);

// Harvested power zeta*g*p. Independent of the split ratio.
double harvested_power(const FadingState& state, double p, const SystemParams& params);

// 1 when the secrecy rate falls strictly below r0, 0 otherwise.
int outage_indicator(SchemeKind scheme, const FadingState& state, const PerStateDecision& d,
                     const SystemParams& params);

// Sample mean of fn(state) over the ensemble.
template <class Fn>
double ensemble_average(const FadingEnsemble& ensemble, Fn&& fn) {
  if (ensemble.size() == 0) throw_invalid("ensemble_average: empty ensemble");
  double sum = 0.0;
  for (const auto& s : ensemble) sum += fn(s);
  return sum / static_cast<double>(ensemble.size());
}

double dbm_to_watt(double dbm);
double watt_to_dbm(double watts);

const char* to_string(SchemeKind scheme);
const char* to_string(ProblemKind kind);

}  // namespace swipt
