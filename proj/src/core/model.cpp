#include "core/model.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace swipt {

void SystemParams::validate() const {
  if (!(p_avg > 0.0)) throw_invalid("p_avg must be positive");
  if (!(p_peak >= p_avg)) throw_invalid("p_peak must be at least p_avg");
  if (!(zeta > 0.0 && zeta <= 1.0)) throw_invalid("zeta must lie in (0, 1]");
  if (!(sigma1_sq > 0.0)) throw_invalid("sigma1_sq must be positive");
  if (!(sigma2_sq > 0.0)) throw_invalid("sigma2_sq must be positive");
  if (!(r0 >= 0.0) || !std::isfinite(r0)) throw_invalid("r0 must be finite and non-negative");
}

FadingEnsemble::FadingEnsemble(std::vector<FadingState> states, std::uint64_t seed)
    : states_(std::move(states)), seed_(seed) {
  if (states_.empty()) throw_invalid("a fading ensemble needs at least one state");
  for (std::size_t i = 0; i < states_.size(); ++i) {
    const auto& s = states_[i];
    if (!(s.h >= 0.0) || !(s.g >= 0.0) || !std::isfinite(s.h) || !std::isfinite(s.g)) {
      throw_invalid("fading state " + std::to_string(i) + " has a negative or non-finite gain");
    }
  }
}

double FadingEnsemble::mean_g() const {
  return ensemble_average(*this, [](const FadingState& s) { return s.g; });
}

namespace {

constexpr double kLn2 = 0.69314718055994530942;

double log2_1p(double x) { return std::log1p(x) / kLn2; }

}  // namespace

double secrecy_rate(SchemeKind scheme, const FadingState& state, const PerStateDecision& d,
                    const SystemParams& params) {
  const double alpha = scheme == SchemeKind::NoAN ? 0.0 : d.alpha;
  const double p = d.p;
  const double info = (1.0 - alpha) * state.h * p;
  const double ir_interference = scheme == SchemeKind::NoCancel ? alpha * state.h * p : 0.0;
  const double snr_ir = info / (ir_interference + params.sigma1_sq);
  const double snr_er = ((1.0 - alpha) * state.g * p) / (alpha * state.g * p + params.sigma2_sq);
  const double r = log2_1p(snr_ir) - log2_1p(snr_er);
  return r > 0.0 ? r : 0.0;
}

double harvested_power(const FadingState& state, double p, const SystemParams& params) {
  return params.zeta * state.g * p;
}

int outage_indicator(SchemeKind scheme, const FadingState& state, const PerStateDecision& d,
                     const SystemParams& params) {
  return secrecy_rate(scheme, state, d, params) < params.r0 ? 1 : 0;
}

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watt_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

const char* to_string(SchemeKind scheme) {
  switch (scheme) {
    case SchemeKind::AnCancelled: return "an-cancelled";
    case SchemeKind::NoAN: return "noan";
    case SchemeKind::NoCancel: return "nocancel";
  }
  return "?";
}

const char* to_string(ProblemKind kind) {
  return kind == ProblemKind::OutageMin ? "outage" : "esc";
}

}  // namespace swipt
