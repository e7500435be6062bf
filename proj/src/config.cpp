#include "dslit/config.hpp"

#include "dslit/errors.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

namespace dslit {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string format17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Suffix {
  std::string_view name;
  Quantity kind;
  double factor;
};

constexpr Suffix kSuffixes[] = {
    {"kg", Quantity::mass, 1.0},
    {"um", Quantity::length, 1e-6},
    {"mm", Quantity::length, 1e-3},
    {"m", Quantity::length, 1.0},
    {"ms", Quantity::time, 1e-3},
    {"s", Quantity::time, 1.0},
    {"m/s", Quantity::velocity, 1.0},
    {"J*s", Quantity::action, 1.0},
};

const char* kind_name(Quantity q) {
  switch (q) {
  case Quantity::mass: return "mass";
  case Quantity::length: return "length";
  case Quantity::time: return "time";
  case Quantity::velocity: return "velocity";
  case Quantity::action: return "action";
  }
  return "?";
}

// Keys that take time values may refer to tau0; those are resolved after the
// whole file has been read.
bool is_time_key(std::string_view key) {
  return key == "t" || key == "tau" || key == "epsilon_override";
}

} // namespace

void PhysicalConfig::validate() const {
  if (!positive_finite(mass)) throw ConfigError("mass must be positive");
  if (!positive_finite(sigma0)) throw ConfigError("sigma0 must be positive");
  if (!positive_finite(beta)) throw ConfigError("beta must be positive");
  if (!positive_finite(hbar)) throw ConfigError("hbar must be positive");
  if (!std::isfinite(d) || d < 0.0) throw ConfigError("d must be nonnegative");
  if (!std::isfinite(t) || t < 0.0) throw ConfigError("t must be nonnegative");
  if (vz && !std::isfinite(*vz)) throw ConfigError("vz must be finite");
}

double epsilon_formula(const PhysicalConfig& cfg) {
  cfg.validate();
  const double width_ratio = (cfg.beta / cfg.sigma0) * (cfg.beta / cfg.sigma0);
  const double time_ratio = (cfg.t / cfg.tau0()) * (cfg.t / cfg.tau0());
  const double num = 1.0 + width_ratio + time_ratio;
  const double den = (1.0 + width_ratio) * (1.0 + width_ratio) + time_ratio;
  return cfg.mass * cfg.beta * cfg.d / cfg.hbar * std::sqrt(num / den);
}

DerivedScales derive_scales(const PhysicalConfig& cfg) {
  cfg.validate();
  return DerivedScales{cfg.tau0(), epsilon_formula(cfg), std::nullopt};
}

double wavelength(const PhysicalConfig& cfg) {
  cfg.validate();
  if (!cfg.vz) throw ConfigError("missing-velocity: vz is required for the wavelength");
  if (!(*cfg.vz > 0.0)) throw ConfigError("vz must be positive");
  return 2.0 * std::numbers::pi * cfg.hbar / (cfg.mass * *cfg.vz);
}

double parse_quantity(std::string_view text, Quantity kind, std::optional<double> tau0) {
  text = trim(text);
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr == first)
    throw ConfigError("cannot parse number from '" + std::string(text) + "'");
  std::string_view suffix = trim(std::string_view(ptr, static_cast<size_t>(last - ptr)));
  if (suffix.empty()) return value;

  if (suffix == "tau0") {
    if (kind != Quantity::time)
      throw ConfigError("unit 'tau0' is a time, expected " + std::string(kind_name(kind)));
    if (!tau0) throw ConfigError("'tau0' unit needs mass, sigma0 and hbar");
    return value * *tau0;
  }
  for (const auto& s : kSuffixes) {
    if (s.name != suffix) continue;
    if (s.kind != kind)
      throw ConfigError("unit '" + std::string(suffix) + "' is a " + kind_name(s.kind) +
                        ", expected " + kind_name(kind));
    return value * s.factor;
  }
  throw ConfigError("unknown unit '" + std::string(suffix) + "'");
}

namespace {

Quantity key_kind(std::string_view key) {
  if (key == "mass") return Quantity::mass;
  if (key == "sigma0" || key == "beta" || key == "d") return Quantity::length;
  if (is_time_key(key)) return Quantity::time;
  if (key == "vz") return Quantity::velocity;
  if (key == "hbar") return Quantity::action;
  throw ConfigError("unknown config key '" + std::string(key) + "'");
}

void assign(ConfigFile& cfg, std::string_view key, double v) {
  if (key == "mass") cfg.physical.mass = v;
  else if (key == "sigma0") cfg.physical.sigma0 = v;
  else if (key == "beta") cfg.physical.beta = v;
  else if (key == "d") cfg.physical.d = v;
  else if (key == "t") cfg.physical.t = v;
  else if (key == "hbar") cfg.physical.hbar = v;
  else if (key == "vz") cfg.physical.vz = v;
  else if (key == "tau") cfg.tau = v;
  else if (key == "epsilon_override") cfg.epsilon_override = v;
}

std::optional<double> current_tau0(const ConfigFile& cfg) {
  const auto& p = cfg.physical;
  if (positive_finite(p.mass) && positive_finite(p.sigma0) && positive_finite(p.hbar))
    return p.tau0();
  return std::nullopt;
}

} // namespace

void set_config_key(ConfigFile& cfg, std::string_view key, std::string_view value) {
  key = trim(key);
  assign(cfg, key, parse_quantity(value, key_kind(key), current_tau0(cfg)));
}

ConfigFile parse_config(std::string_view text) {
  ConfigFile cfg;
  std::vector<std::pair<std::string, std::string>> deferred;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    view = trim(view.substr(0, view.find('#')));
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
    const std::string_view key = trim(view.substr(0, eq));
    const std::string_view value = trim(view.substr(eq + 1));
    const Quantity kind = key_kind(key);
    if (kind == Quantity::time) {
      deferred.emplace_back(key, value);
      continue;
    }
    try {
      assign(cfg, key, parse_quantity(value, kind));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  for (const auto& [key, value] : deferred)
    assign(cfg, key, parse_quantity(value, Quantity::time, current_tau0(cfg)));
  return cfg;
}

ConfigFile load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_config_text(const ConfigFile& cfg) {
  const auto& p = cfg.physical;
  std::string out;
  auto put = [&out](const char* key, double v) {
    out += key;
    out += " = ";
    out += format17(v);
    out += '\n';
  };
  put("mass", p.mass);
  put("sigma0", p.sigma0);
  put("beta", p.beta);
  put("d", p.d);
  put("t", p.t);
  put("hbar", p.hbar);
  if (p.vz) put("vz", *p.vz);
  if (cfg.tau) put("tau", *cfg.tau);
  if (cfg.epsilon_override) put("epsilon_override", *cfg.epsilon_override);
  return out;
}

} // namespace dslit
