#ifndef VBL_CONFIG_HPP
#define VBL_CONFIG_HPP

// Flat sectioned key = value run configuration. Scalars only, no nesting;
// '#' starts a comment. Unknown sections or keys, type mismatches, and
// inconsistent duplicates are rejected with file:line diagnostics. The
// horizon may be named twice (grid.t_final and params.T); both must agree
// to 1e-12 relative when given.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "vbl/grid.hpp"

namespace vbl {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  // [grid]
  int nx = 128;
  int nv = 128;
  double x_period = 2.0 * pi;
  double v_halfwidth = 16.0;
  std::optional<double> dt;       // default T/16
  std::optional<double> t_final;  // duplicate name for params.T

  // [params]
  double lambda0 = 0.5;
  double K = 40.0;
  std::optional<double> T;
  std::optional<double> M;  // empty -> auto scan
  int q = 0;
  double picard_tol = 1e-9;
  int max_iter = 40;

  // [initial]
  std::string profile = "gauss_v_trig_x";
  std::optional<double> amplitude;  // empty -> sized from the gate bound
  double epsilon = 0.1;
  int mode = 1;
  std::string initial_file;

  // [run]
  std::string out = "out";
  std::uint64_t seed = 42;
  int pairs = 20;
  std::string drift_form = "conservative";

  double horizon() const { return T ? *T : (t_final ? *t_final : 0.01); }
  double step() const { return dt ? *dt : horizon() / 16.0; }

  GridSpec grid() const {
    return GridSpec::make(nx, nv, x_period, v_halfwidth, step(), horizon());
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

struct ConfigCursor {
  std::string file;
  int line = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError(file + ":" + std::to_string(line) + ": " + msg);
  }

  double as_double(const std::string& key, const std::string& raw) const {
    try {
      std::size_t used = 0;
      const double v = std::stod(raw, &used);
      if (used != raw.size()) fail("key '" + key + "' expects a number, got '" + raw + "'");
      return v;
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      fail("key '" + key + "' expects a number, got '" + raw + "'");
    }
  }

  int as_int(const std::string& key, const std::string& raw) const {
    try {
      std::size_t used = 0;
      const long v = std::stol(raw, &used);
      if (used != raw.size()) fail("key '" + key + "' expects an integer, got '" + raw + "'");
      return static_cast<int>(v);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      fail("key '" + key + "' expects an integer, got '" + raw + "'");
    }
  }

  std::uint64_t as_seed(const std::string& key, const std::string& raw) const {
    // stoull wraps negative input around instead of rejecting it
    if (!raw.empty() && raw.front() == '-')
      fail("key '" + key + "' expects an unsigned integer, got '" + raw + "'");
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(raw, &used);
      if (used != raw.size()) fail("key '" + key + "' expects an unsigned integer");
      return v;
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      fail("key '" + key + "' expects an unsigned integer, got '" + raw + "'");
    }
  }
};

}  // namespace detail

inline RunConfig parse_config_text(const std::string& text, const std::string& filename) {
  RunConfig cfg;
  detail::ConfigCursor at{filename, 0};
  std::istringstream in(text);
  std::string raw_line, section;
  std::map<std::string, int> seen;  // "section.key" -> first line

  while (std::getline(in, raw_line)) {
    ++at.line;
    std::string line = raw_line;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') at.fail("malformed section header '" + line + "'");
      section = detail::trim(line.substr(1, line.size() - 2));
      if (section != "grid" && section != "params" && section != "initial" && section != "run")
        at.fail("unknown section [" + section + "]");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) at.fail("expected 'key = value', got '" + line + "'");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty()) at.fail("empty key");
    if (value.empty()) at.fail("empty value for key '" + key + "'");
    if (section.empty()) at.fail("key '" + key + "' appears before any [section]");

    const std::string qualified = section + "." + key;
    if (const auto prev = seen.find(qualified); prev != seen.end())
      at.fail("duplicate key '" + key + "' in [" + section + "] (first at line " +
              std::to_string(prev->second) + ")");
    seen[qualified] = at.line;

    if (section == "grid") {
      if (key == "nx") cfg.nx = at.as_int(key, value);
      else if (key == "nv") cfg.nv = at.as_int(key, value);
      else if (key == "x_period") cfg.x_period = at.as_double(key, value);
      else if (key == "v_halfwidth") cfg.v_halfwidth = at.as_double(key, value);
      else if (key == "dt") cfg.dt = at.as_double(key, value);
      else if (key == "t_final") cfg.t_final = at.as_double(key, value);
      else at.fail("unknown key '" + key + "' in [grid]");
    } else if (section == "params") {
      if (key == "lambda0") cfg.lambda0 = at.as_double(key, value);
      else if (key == "K") cfg.K = at.as_double(key, value);
      else if (key == "T") cfg.T = at.as_double(key, value);
      else if (key == "M") {
        if (value != "auto") cfg.M = at.as_double(key, value);
      } else if (key == "q") cfg.q = at.as_int(key, value);
      else if (key == "picard_tol") cfg.picard_tol = at.as_double(key, value);
      else if (key == "max_iter") cfg.max_iter = at.as_int(key, value);
      else at.fail("unknown key '" + key + "' in [params]");
    } else if (section == "initial") {
      if (key == "profile") cfg.profile = value;
      else if (key == "amplitude") {
        if (value != "auto") cfg.amplitude = at.as_double(key, value);
      } else if (key == "epsilon") cfg.epsilon = at.as_double(key, value);
      else if (key == "mode") cfg.mode = at.as_int(key, value);
      else if (key == "file") cfg.initial_file = value;
      else at.fail("unknown key '" + key + "' in [initial]");
    } else {  // run
      if (key == "out") cfg.out = value;
      else if (key == "seed") cfg.seed = at.as_seed(key, value);
      else if (key == "pairs") cfg.pairs = at.as_int(key, value);
      else if (key == "drift_form") {
        if (value != "conservative" && value != "direct")
          at.fail("drift_form must be 'conservative' or 'direct'");
        cfg.drift_form = value;
      } else at.fail("unknown key '" + key + "' in [run]");
    }
  }

  // duplicate horizon names must agree
  if (cfg.T && cfg.t_final &&
      std::abs(*cfg.T - *cfg.t_final) > 1e-12 * std::max(1.0, std::abs(*cfg.T))) {
    throw ConfigError(filename + ": params.T = " + std::to_string(*cfg.T) +
                      " and grid.t_final = " + std::to_string(*cfg.t_final) +
                      " name the same horizon but disagree");
  }
  if (cfg.profile != "gauss_v_trig_x" && cfg.profile != "file")
    throw ConfigError(filename + ": unknown initial profile '" + cfg.profile + "'");
  if (cfg.profile == "file" && cfg.initial_file.empty())
    throw ConfigError(filename + ": profile = file requires initial.file");
  if (cfg.q < 0) throw ConfigError(filename + ": params.q must be >= 0");
  if (cfg.pairs < 1) throw ConfigError(filename + ": run.pairs must be >= 1");

  try {
    cfg.grid();  // surface grid invariant violations as config errors
  } catch (const std::invalid_argument& e) {
    throw ConfigError(filename + ": " + e.what());
  }
  return cfg;
}

inline RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

}  // namespace vbl

#endif
