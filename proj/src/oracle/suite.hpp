#pragma once

// Randomized oracle cross-checks shared by `swipt verify` and the acceptance
// binary. Solver results come through the public C API, references from the
// brute-force oracles.

#include <cstdint>
#include <random>

#include "core/model.hpp"

namespace swipt::oracle {

struct Instance {
  FadingState state;
  DualPoint dual;
  SystemParams params;
  double alpha = 0.0;  // a split in [0, 1) for fixed-split checks
  double p_bar = 0.0;  // a power in [1e-4, p_peak] for split checks
};

// Gains and noise log-uniform over a few decades around the default geometry,
// r0 in [0.5, 10], multipliers log-uniform with occasional exact zeros.
class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed) : rng_(seed) {}
  Instance next();

 private:
  double uniform(double lo, double hi);
  double log_uniform(double lo, double hi);

  std::mt19937_64 rng_;
};

struct PerStateSuiteOptions {
  int trials = 1000;
  std::uint64_t seed = 20240601;
  int l1_grid = 500;     // per axis
  int l2_grid = 100000;  // power points
  int split_grid = 10000;
};

struct PerStateSuiteReport {
  int trials = 0;
  int fail_l1 = 0;     // closed-form L1 above grid minimum + 1e-6
  int fail_l2 = 0;     // fixed-split L2 below grid maximum - 1e-6
  int fail_split = 0;  // optimal split rate below grid maximum - 1e-9
  int fail_inverse = 0;
  int inverse_checked = 0;  // cases where both inverses were finite
  double worst_l1 = 0.0;    // largest (solver - grid) seen
  double worst_l2 = 0.0;    // largest (grid - solver) seen
  double worst_split = 0.0;
  double worst_inverse = 0.0;  // largest relative difference
  double seconds = 0.0;

  bool passed() const { return fail_l1 + fail_l2 + fail_split + fail_inverse == 0 && inverse_checked > 0; }
};

PerStateSuiteReport run_perstate_suite(const PerStateSuiteOptions& opts);

struct RateSuiteReport {
  int cases = 0;  // finite cases checked
  int failures = 0;
  double worst_rel = 0.0;
  double seconds = 0.0;

  bool passed() const { return failures == 0 && cases > 0; }
};

// |R(alpha, p1(alpha)) - r0| <= 1e-8 r0 over `cases` finite random cases.
RateSuiteReport run_rate_suite(int cases, std::uint64_t seed);

}  // namespace swipt::oracle
