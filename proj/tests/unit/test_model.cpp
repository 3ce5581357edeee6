#include <doctest.h>

#include <cmath>
#include <random>

#include "core/channel.hpp"
#include "core/model.hpp"

using namespace swipt;

namespace {

SystemParams params_with(double s1, double s2, double r0 = 1.0) {
  SystemParams p;
  p.sigma1_sq = s1;
  p.sigma2_sq = s2;
  p.r0 = r0;
  return p;
}

}  // namespace

TEST_CASE("secrecy rate: fixed points") {
  const SystemParams p = params_with(1e-8, 1e-8);
  CHECK(secrecy_rate(SchemeKind::NoAN, {1e-3, 1e-3}, {0.5, 0.0}, p) == 0.0);
  for (auto k : {SchemeKind::AnCancelled, SchemeKind::NoAN, SchemeKind::NoCancel})
    CHECK(secrecy_rate(k, {1e-3, 1e-4}, {0.0, 0.3}, p) == 0.0);

  // 50-digit reference
  CHECK(secrecy_rate(SchemeKind::AnCancelled, {1e-3, 1e-4}, {0.1, 0.5}, p) ==
        doctest::Approx(11.289441424066787858).epsilon(1e-14));
  CHECK(secrecy_rate(SchemeKind::NoCancel, {1e-3, 1e-4}, {0.1, 0.5}, p) ==
        doctest::Approx(0.0012962864921858513731).epsilon(1e-10));
}

TEST_CASE("secrecy rate: zero gains and full noise split") {
  const SystemParams p = params_with(1e-8, 1e-8);
  CHECK(secrecy_rate(SchemeKind::AnCancelled, {0.0, 1e-4}, {1.0, 0.5}, p) == 0.0);
  CHECK(secrecy_rate(SchemeKind::AnCancelled, {1e-4, 0.0}, {1.0, 0.5}, p) ==
        doctest::Approx(std::log2(1.0 + 0.5 * 1e-4 / 1e-8)));
  CHECK(secrecy_rate(SchemeKind::AnCancelled, {1e-3, 1e-4}, {1.0, 1.0}, p) == 0.0);
}

TEST_CASE("secrecy rate: properties on random inputs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto lu = [&](double lo, double hi) { return std::exp(std::log(lo) + u(rng) * std::log(hi / lo)); };
  for (int t = 0; t < 2000; ++t) {
    const SystemParams p = params_with(lu(1e-10, 1e-6), lu(1e-10, 1e-6));
    const FadingState s{lu(1e-7, 1e-2), lu(1e-7, 1e-2)};
    const PerStateDecision d{u(rng), u(rng)};
    const double an = secrecy_rate(SchemeKind::AnCancelled, s, d, p);
    CHECK(an >= 0.0);
    CHECK(secrecy_rate(SchemeKind::NoCancel, s, d, p) <= an + 1e-12);
    CHECK(secrecy_rate(SchemeKind::NoAN, s, {d.p, 0.0}, p) == secrecy_rate(SchemeKind::AnCancelled, s, {d.p, 0.0}, p));
    CHECK(harvested_power(s, d.p, p) == p.zeta * s.g * d.p);

    double prev = an;
    for (double scale : {2.0, 4.0, 8.0, 16.0}) {
      const double r = secrecy_rate(SchemeKind::AnCancelled, {s.h, s.g * scale}, d, p);
      CHECK(r <= prev + 1e-12);
      prev = r;
    }
  }
}

TEST_CASE("harvested power") {
  SystemParams p;
  CHECK(harvested_power({1.0, 1e-3}, 1.0, p) == doctest::Approx(5e-4));
  CHECK(harvested_power({1.0, 1e-3}, 0.0, p) == 0.0);
  p.zeta = 1.0;
  CHECK(harvested_power({0.0, 2e-4}, 0.1, p) == doctest::Approx(2e-5));
}

TEST_CASE("outage indicator") {
  SystemParams p = params_with(1e-8, 1e-8, 1.0);
  CHECK(outage_indicator(SchemeKind::AnCancelled, {1e-3, 1e-4}, {0.0, 0.0}, p) == 1);

  // pick r0 equal to the achieved rate: strict inequality means no outage
  const FadingState s{1e-3, 1e-4};
  const PerStateDecision d{0.05, 0.3};
  p.r0 = secrecy_rate(SchemeKind::AnCancelled, s, d, p);
  CHECK(outage_indicator(SchemeKind::AnCancelled, s, d, p) == 0);
  p.r0 = std::nextafter(p.r0, 1e9);
  CHECK(outage_indicator(SchemeKind::AnCancelled, s, d, p) == 1);
}

TEST_CASE("ensemble average") {
  const FadingEnsemble two({{1.0, 0.0}, {2.0, 1.0}}, 0);
  CHECK(ensemble_average(two, [](const FadingState&) { return 3.25; }) == 3.25);
  CHECK(ensemble_average(two, [](const FadingState& s) { return s.g; }) == 0.5);
  CHECK_THROWS_AS(FadingEnsemble({}, 0), Error);

  const SystemParams p;
  const FadingEnsemble e = generate_ensemble(GeometryConfig{}, 1000, 11);
  long double sum = 0;
  for (std::size_t i = 0; i < e.size(); ++i) sum += 0.5L * e[i].g * 0.3L;
  CHECK(ensemble_average(e, [&](const FadingState& s) { return harvested_power(s, 0.3, p); }) ==
        doctest::Approx(static_cast<double>(sum / 1000)).epsilon(1e-13));
}

TEST_CASE("dBm conversion") {
  CHECK(dbm_to_watt(30.0) == doctest::Approx(1.0));
  CHECK(dbm_to_watt(20.0) == doctest::Approx(0.1));
  CHECK(dbm_to_watt(-50.0) == doctest::Approx(1e-8));
  for (double w : {1e-12, 3.7e-8, 0.1, 1.0, 42.0}) CHECK(std::abs(dbm_to_watt(watt_to_dbm(w)) - w) <= 1e-12 * w);
}

TEST_CASE("parameter validation") {
  SystemParams p;
  CHECK_NOTHROW(p.validate());
  p.p_peak = 0.05;
  CHECK_THROWS_AS(p.validate(), Error);
  p = {};
  p.zeta = 1.5;
  CHECK_THROWS_AS(p.validate(), Error);
  p = {};
  p.sigma2_sq = 0.0;
  CHECK_THROWS_AS(p.validate(), Error);
}
