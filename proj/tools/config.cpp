#include "config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace swipt_cli {

namespace pt = boost::property_tree;

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s;
}

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"system", {"p_avg", "p_peak", "zeta", "sigma1_sq", "sigma2_sq", "r0"}},
      {"geometry", {"d_ir", "d_er", "a0", "d0", "path_exp"}},
      {"ensemble", {"size", "seed", "file"}},
      {"solver",
       {"scheme", "kind", "q_bar", "tol", "max_iter", "feas_tol", "threads", "p2_sub", "alpha_grid_n",
        "alt_max_rounds", "alt_obj_tol", "alt_initial_alpha", "trace"}},
      {"sweep", {"schemes", "points", "q_max_fraction"}},
  };
  return s;
}

class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  std::vector<std::string> errors;

  const std::string* raw(const char* section, const char* key) {
    const auto sec = tree_.get_child_optional(section);
    if (!sec) return nullptr;
    const auto v = sec->get_optional<std::string>(key);
    if (!v) return nullptr;
    store_.push_back(trim(*v));
    return &store_.back();
  }

  void number(const char* section, const char* key, double& out) {
    const std::string* v = raw(section, key);
    if (!v) return;
    if (!parse_double(*v, out)) bad(section, key, *v, "expected a number");
  }

  template <class Int>
  void integer(const char* section, const char* key, Int& out) {
    const std::string* v = raw(section, key);
    if (!v) return;
    Int x{};
    auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), x);
    if (ec != std::errc() || ptr != v->data() + v->size()) {
      bad(section, key, *v, "expected an integer");
      return;
    }
    out = x;
  }

  void power(const char* section, const char* key, double& out) {
    const std::string* v = raw(section, key);
    if (!v) return;
    try {
      out = parse_power(*v, false);
    } catch (const std::exception& e) {
      bad(section, key, *v, e.what());
    }
  }

  void text(const char* section, const char* key, std::string& out) {
    if (const std::string* v = raw(section, key)) out = *v;
  }

  void bad(const char* section, const char* key, const std::string& value, const std::string& why) {
    errors.push_back(std::string("[") + section + "] " + key + " = '" + value + "': " + why);
  }

  void require(bool ok, const char* section, const char* key, const std::string& why) {
    if (!ok) errors.push_back(std::string("[") + section + "] " + key + ": " + why);
  }

 private:
  const pt::ptree& tree_;
  std::deque<std::string> store_;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

RunConfig::RunConfig() {
  swipt_params_default(&system);
  system.r0 = 6.5;
  swipt_geometry_default(&geometry);
  swipt_solve_options_default(&solver);
}

ConfigError::ConfigError(std::vector<std::string> items)
    : std::runtime_error([&] {
        std::string s;
        for (const auto& i : items) s += (s.empty() ? "" : "\n") + i;
        return s;
      }()),
      items_(std::move(items)) {}

double parse_power(const std::string& text, bool bare_is_watts) {
  const std::string t = trim(text);
  std::size_t cut = t.size();
  while (cut > 0 && std::isalpha(static_cast<unsigned char>(t[cut - 1]))) --cut;
  const std::string num = trim(t.substr(0, cut));
  const std::string unit = t.substr(cut);
  double x = 0.0;
  if (!parse_double(num, x)) throw std::invalid_argument("expected '<number> <unit>'");
  if (unit == "dBm") return std::pow(10.0, (x - 30.0) / 10.0);
  if (unit == "W") return x;
  if (unit == "mW") return x * 1e-3;
  if (unit == "uW") return x * 1e-6;
  if (unit.empty()) {
    if (bare_is_watts) return x;
    throw std::invalid_argument("missing unit (dBm, W, mW or uW)");
  }
  throw std::invalid_argument("unknown unit '" + unit + "' (dBm, W, mW or uW)");
}

swipt_kind parse_kind(const std::string& text) {
  if (text == "outage") return SWIPT_OUTAGE;
  if (text == "esc") return SWIPT_ESC;
  throw std::invalid_argument("kind must be 'outage' or 'esc'");
}

std::string kind_name(swipt_kind kind) { return kind == SWIPT_ESC ? "esc" : "outage"; }

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

RunConfig load_config(const std::filesystem::path& path) {
  pt::ptree tree;
  try {
    pt::read_ini(path.string(), tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError({path.string() + ": " + e.message() + (e.line() ? " (line " + std::to_string(e.line()) + ")" : "")});
  }

  Reader r(tree);
  for (const auto& [section, body] : tree) {
    const auto it = schema().find(section);
    if (it == schema().end()) {
      if (body.empty()) r.errors.push_back("top-level key '" + section + "' outside any section");
      else r.errors.push_back("unknown section [" + section + "]");
      continue;
    }
    for (const auto& kv : body)
      if (!it->second.count(kv.first)) r.errors.push_back("[" + section + "] unknown key '" + kv.first + "'");
  }

  RunConfig c;
  r.power("system", "p_avg", c.system.p_avg);
  r.power("system", "p_peak", c.system.p_peak);
  r.number("system", "zeta", c.system.zeta);
  r.power("system", "sigma1_sq", c.system.sigma1_sq);
  r.power("system", "sigma2_sq", c.system.sigma2_sq);
  r.number("system", "r0", c.system.r0);

  r.number("geometry", "d_ir", c.geometry.d_ir);
  r.number("geometry", "d_er", c.geometry.d_er);
  r.number("geometry", "a0", c.geometry.a0);
  r.number("geometry", "d0", c.geometry.d0);
  r.number("geometry", "path_exp", c.geometry.path_exp);

  r.integer("ensemble", "size", c.ensemble_size);
  r.integer("ensemble", "seed", c.seed);
  r.text("ensemble", "file", c.ensemble_file);

  r.text("solver", "scheme", c.scheme);
  if (const std::string* k = r.raw("solver", "kind")) {
    try {
      c.kind = parse_kind(*k);
    } catch (const std::exception& e) {
      r.bad("solver", "kind", *k, e.what());
    }
  }
  r.power("solver", "q_bar", c.q_bar);
  r.number("solver", "tol", c.solver.tol);
  r.integer("solver", "max_iter", c.solver.max_iter);
  r.number("solver", "feas_tol", c.solver.feas_tol);
  r.integer("solver", "threads", c.solver.threads);
  if (const std::string* v = r.raw("solver", "p2_sub")) {
    if (*v == "envelope") c.solver.p2_two_stage = 0;
    else if (*v == "two-stage") c.solver.p2_two_stage = 1;
    else r.bad("solver", "p2_sub", *v, "expected 'envelope' or 'two-stage'");
  }
  r.integer("solver", "alpha_grid_n", c.solver.alpha_grid_n);
  r.integer("solver", "alt_max_rounds", c.solver.alt_max_rounds);
  r.number("solver", "alt_obj_tol", c.solver.alt_obj_tol);
  r.number("solver", "alt_initial_alpha", c.solver.alt_initial_alpha);
  if (const std::string* v = r.raw("solver", "trace")) {
    if (*v == "true") c.solver.record_trace = 1;
    else if (*v == "false") c.solver.record_trace = 0;
    else r.bad("solver", "trace", *v, "expected 'true' or 'false'");
  }

  if (const std::string* v = r.raw("sweep", "schemes")) c.sweep_schemes = split_list(*v);
  r.integer("sweep", "points", c.sweep_points);
  r.number("sweep", "q_max_fraction", c.q_max_fraction);

  const auto& s = c.system;
  r.require(s.p_avg > 0, "system", "p_avg", "must be positive");
  r.require(s.p_peak >= s.p_avg, "system", "p_peak", "must be at least p_avg");
  r.require(s.zeta > 0 && s.zeta <= 1, "system", "zeta", "must lie in (0, 1]");
  r.require(s.sigma1_sq > 0, "system", "sigma1_sq", "must be positive");
  r.require(s.sigma2_sq > 0, "system", "sigma2_sq", "must be positive");
  r.require(s.r0 >= 0, "system", "r0", "must be non-negative");
  const auto& g = c.geometry;
  r.require(g.d_ir > 0, "geometry", "d_ir", "must be positive");
  r.require(g.d_er > 0, "geometry", "d_er", "must be positive");
  r.require(g.a0 > 0, "geometry", "a0", "must be positive");
  r.require(g.d0 > 0, "geometry", "d0", "must be positive");
  r.require(g.path_exp > 0, "geometry", "path_exp", "must be positive");
  r.require(c.ensemble_size >= 1 || !c.ensemble_file.empty(), "ensemble", "size", "must be at least 1");
  swipt_scheme tmp;
  if (swipt_parse_scheme(c.scheme.c_str(), &tmp) != SWIPT_OK)
    r.errors.push_back(std::string("[solver] ") + swipt_last_error());
  r.require(c.q_bar >= 0, "solver", "q_bar", "must be non-negative");
  r.require(c.solver.tol > 0, "solver", "tol", "must be positive");
  r.require(c.solver.max_iter >= 1, "solver", "max_iter", "must be at least 1");
  r.require(c.solver.feas_tol > 0, "solver", "feas_tol", "must be positive");
  r.require(c.solver.threads >= 1, "solver", "threads", "must be at least 1");
  r.require(c.solver.alpha_grid_n >= 2, "solver", "alpha_grid_n", "must be at least 2");
  r.require(c.solver.alt_max_rounds >= 1, "solver", "alt_max_rounds", "must be at least 1");
  r.require(c.solver.alt_obj_tol >= 0, "solver", "alt_obj_tol", "must be non-negative");
  r.require(c.solver.alt_initial_alpha >= 0 && c.solver.alt_initial_alpha < 1, "solver", "alt_initial_alpha",
            "must lie in [0, 1)");
  r.require(!c.sweep_schemes.empty(), "sweep", "schemes", "must name at least one scheme");
  for (const auto& name : c.sweep_schemes)
    if (swipt_parse_scheme(name.c_str(), &tmp) != SWIPT_OK) r.errors.push_back(std::string("[sweep] ") + swipt_last_error());
  r.require(c.sweep_points >= 2, "sweep", "points", "must be at least 2");
  r.require(c.q_max_fraction > 0 && c.q_max_fraction <= 1, "sweep", "q_max_fraction", "must lie in (0, 1]");

  if (!r.errors.empty()) throw ConfigError(std::move(r.errors));
  return c;
}

std::string describe(const RunConfig& c) {
  std::ostringstream os;
  const auto kv = [&](const char* k, const std::string& v) { os << k << " = " << v << "\n"; };
  kv("version", swipt_version());
  kv("system.p_avg_w", fmt17(c.system.p_avg));
  kv("system.p_peak_w", fmt17(c.system.p_peak));
  kv("system.zeta", fmt17(c.system.zeta));
  kv("system.sigma1_sq_w", fmt17(c.system.sigma1_sq));
  kv("system.sigma2_sq_w", fmt17(c.system.sigma2_sq));
  kv("system.r0", fmt17(c.system.r0));
  kv("geometry.d_ir", fmt17(c.geometry.d_ir));
  kv("geometry.d_er", fmt17(c.geometry.d_er));
  kv("geometry.a0", fmt17(c.geometry.a0));
  kv("geometry.d0", fmt17(c.geometry.d0));
  kv("geometry.path_exp", fmt17(c.geometry.path_exp));
  if (c.ensemble_file.empty()) kv("ensemble.size", std::to_string(c.ensemble_size));
  else kv("ensemble.file", c.ensemble_file);
  kv("ensemble.seed", std::to_string(c.seed));
  kv("solver.scheme", c.scheme);
  kv("solver.kind", kind_name(c.kind));
  kv("solver.q_bar_w", fmt17(c.q_bar));
  kv("solver.tol", fmt17(c.solver.tol));
  kv("solver.max_iter", std::to_string(c.solver.max_iter));
  kv("solver.feas_tol", fmt17(c.solver.feas_tol));
  kv("solver.p2_sub", c.solver.p2_two_stage ? "two-stage" : "envelope");
  kv("solver.alpha_grid_n", std::to_string(c.solver.alpha_grid_n));
  kv("solver.alt_max_rounds", std::to_string(c.solver.alt_max_rounds));
  kv("solver.alt_obj_tol", fmt17(c.solver.alt_obj_tol));
  kv("solver.alt_initial_alpha", fmt17(c.solver.alt_initial_alpha));
  kv("solver.trace", c.solver.record_trace ? "true" : "false");
  kv("sweep.schemes", join(c.sweep_schemes));
  kv("sweep.points", std::to_string(c.sweep_points));
  kv("sweep.q_max_fraction", fmt17(c.q_max_fraction));
  return os.str();
}

}  // namespace swipt_cli
