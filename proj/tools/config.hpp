#pragma once

// INI run configuration for the swipt CLI.
//
//   [system]    p_avg, p_peak, sigma1_sq, sigma2_sq  (power: "<x> dBm|W|mW|uW")
//               zeta, r0
//   [geometry]  d_ir, d_er, a0, d0, path_exp
//   [ensemble]  size, seed, file                      (file: load instead of generate)
//   [solver]    scheme, kind, q_bar (power), tol, max_iter, feas_tol, threads,
//               p2_sub (envelope|two-stage), alpha_grid_n, alt_max_rounds,
//               alt_obj_tol, alt_initial_alpha, trace (true|false)
//   [sweep]     schemes (comma list), points, q_max_fraction
//
// Every key is optional; unknown sections or keys are errors.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "swipt/swipt.h"

namespace swipt_cli {

struct RunConfig {
  swipt_params system{};
  swipt_geometry geometry{};
  std::size_t ensemble_size = 10000;
  std::uint64_t seed = 1;
  std::string ensemble_file;

  std::string scheme = "optimal";
  swipt_kind kind = SWIPT_OUTAGE;
  double q_bar = 0.0;
  swipt_solve_options solver{};

  std::vector<std::string> sweep_schemes{"optimal"};
  int sweep_points = 8;
  double q_max_fraction = 0.98;

  RunConfig();
};

// Collected schema violations, one per line of what().
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> items);
  const std::vector<std::string>& items() const noexcept { return items_; }

 private:
  std::vector<std::string> items_;
};

RunConfig load_config(const std::filesystem::path& path);

// "<number> <unit>" with unit dBm, W, mW or uW; a bare number is watts only
// when bare_is_watts is set.
double parse_power(const std::string& text, bool bare_is_watts);

swipt_kind parse_kind(const std::string& text);
std::string kind_name(swipt_kind kind);

// "key = value" lines, powers in watts, 17 significant digits. Thread count
// is left out: it does not change results.
std::string describe(const RunConfig& cfg);

std::string fmt17(double v);

}  // namespace swipt_cli
