#pragma once

#include <cstdint>
#include <filesystem>
#include <string_view>

#include "core/model.hpp"

namespace swipt {

// Distance-based path-loss geometry; both links see Rayleigh fading around the
// mean gain a0 * (d / d0)^-path_exp.
struct GeometryConfig {
  double d_ir = 2.0;
  double d_er = 2.0;
  double a0 = 1e-3;
  double d0 = 1.0;
  double path_exp = 3.0;

  void validate() const;
};

double path_loss(double d, const GeometryConfig& cfg);

// Draws n independent (h, g) pairs with exponential marginals. The stream is
// std::mt19937_64 seeded with `seed`; each state consumes one draw for h then
// one for g, and uniforms are formed from the top 53 bits so the output does
// not depend on the standard library's distribution implementations.
FadingEnsemble generate_ensemble(const GeometryConfig& cfg, std::size_t n, std::uint64_t seed);

// CSV with header "h,g" and 17 significant digits per value. A "# seed = N"
// comment records the generating seed; each line of `comment` is written
// above it behind "# ".
void save_ensemble(const FadingEnsemble& ensemble, const std::filesystem::path& path,
                   std::string_view comment = {});
FadingEnsemble load_ensemble(const std::filesystem::path& path);

}  // namespace swipt
