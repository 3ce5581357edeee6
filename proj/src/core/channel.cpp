#include "core/channel.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace swipt {

void GeometryConfig::validate() const {
  if (!(d0 > 0.0)) throw_invalid("geometry: d0 must be positive");
  if (!(d_ir >= d0)) throw_invalid("geometry: d_ir must be at least d0");
  if (!(d_er >= d0)) throw_invalid("geometry: d_er must be at least d0");
  if (!(a0 > 0.0)) throw_invalid("geometry: a0 must be positive");
  if (!(path_exp > 0.0)) throw_invalid("geometry: path_exp must be positive");
}

double path_loss(double d, const GeometryConfig& cfg) {
  if (!(d >= cfg.d0)) throw_invalid("path_loss: distance below the reference distance");
  return cfg.a0 * std::pow(d / cfg.d0, -cfg.path_exp);
}

namespace {

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double exponential(std::mt19937_64& rng, double mean) {
  return -mean * std::log1p(-unit_uniform(rng));
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_field(const std::string& text, int line) {
  const std::string t = trim(text);
  if (t.empty()) throw ParseError("line " + std::to_string(line) + ": empty field", line);
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || errno == ERANGE) {
    throw ParseError("line " + std::to_string(line) + ": not a number: '" + t + "'", line);
  }
  return v;
}

}  // namespace

FadingEnsemble generate_ensemble(const GeometryConfig& cfg, std::size_t n, std::uint64_t seed) {
  cfg.validate();
  if (n == 0) throw_invalid("generate_ensemble: n must be at least 1");
  const double mean_h = path_loss(cfg.d_ir, cfg);
  const double mean_g = path_loss(cfg.d_er, cfg);
  std::mt19937_64 rng(seed);
  std::vector<FadingState> states(n);
  for (auto& s : states) {
    s.h = exponential(rng, mean_h);
    s.g = exponential(rng, mean_g);
  }
  return FadingEnsemble(std::move(states), seed);
}

void save_ensemble(const FadingEnsemble& ensemble, const std::filesystem::path& path, std::string_view comment) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "' for writing");
  while (!comment.empty()) {
    const auto nl = comment.find('\n');
    out << "# " << comment.substr(0, nl) << "\n";
    comment = nl == std::string_view::npos ? std::string_view{} : comment.substr(nl + 1);
  }
  out << "# seed = " << ensemble.seed() << "\n";
  out << "h,g\n";
  char buf[64];
  for (const auto& s : ensemble) {
    std::snprintf(buf, sizeof buf, "%.16e,%.16e\n", s.h, s.g);
    out << buf;
  }
  if (!out) throw Error(ErrorCode::kIo, "write to '" + path.string() + "' failed");
}

FadingEnsemble load_ensemble(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  std::vector<FadingState> states;
  std::uint64_t seed = 0;
  bool header = false;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(raw);
    if (text.empty()) continue;
    if (text[0] == '#') {
      unsigned long long s = 0;
      if (!header && std::sscanf(text.c_str(), "# seed = %llu", &s) == 1) seed = s;
      continue;
    }
    if (!header) {
      if (text != "h,g") throw ParseError("line " + std::to_string(line) + ": expected header 'h,g'", line);
      header = true;
      continue;
    }
    const auto comma = text.find(',');
    if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
      throw ParseError("line " + std::to_string(line) + ": expected two comma-separated values", line);
    }
    FadingState s{parse_field(text.substr(0, comma), line), parse_field(text.substr(comma + 1), line)};
    if (!(s.h >= 0.0) || !(s.g >= 0.0) || !std::isfinite(s.h) || !std::isfinite(s.g)) {
      throw ParseError("line " + std::to_string(line) + ": gains must be finite and non-negative", line);
    }
    states.push_back(s);
  }
  if (!header) throw ParseError("missing header 'h,g'", line);
  if (states.empty()) throw ParseError("ensemble file has no states", line);
  return FadingEnsemble(std::move(states), seed);
}

}  // namespace swipt
