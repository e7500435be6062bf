#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace dslit {

/// Reduced Planck constant, CODATA 2018 [J s].
inline constexpr double kHbarCodata = 1.054571817e-34;

/// Particle and apparatus parameters, SI units throughout.
///
/// `t` is the source-to-slit flight time. The slit-to-screen time is a
/// sample coordinate and lives outside this struct.
struct PhysicalConfig {
  double mass = 0.0;   // kg
  double sigma0 = 0.0; // m, initial packet width
  double beta = 0.0;   // m, slit width
  double d = 0.0;      // m, slit separation
  double t = 0.0;      // s
  double hbar = kHbarCodata;
  std::optional<double> vz; // m/s, reporting only

  /// Throws ConfigError when an invariant fails.
  void validate() const;

  /// Spreading time m sigma0^2 / hbar.
  double tau0() const { return mass * sigma0 * sigma0 / hbar; }

  bool operator==(const PhysicalConfig&) const = default;
};

struct DerivedScales {
  double tau0 = 0.0;
  double epsilon = 0.0; // inter-slit time from the momentum-spread formula
  std::optional<double> epsilon_override;

  /// The inter-slit time actually used by the exotic paths.
  double effective_epsilon() const { return epsilon_override.value_or(epsilon); }

  bool operator==(const DerivedScales&) const = default;
};

/// Inter-slit time d / Delta v_x, with Delta v_x taken from the momentum
/// spread of the single-slit wave function.
double epsilon_formula(const PhysicalConfig& cfg);

DerivedScales derive_scales(const PhysicalConfig& cfg);

/// de Broglie wavelength h / (m v_z). Throws ConfigError when vz is unset.
double wavelength(const PhysicalConfig& cfg);

// ---------------------------------------------------------------------------
// key=value configuration files

/// Contents of a scenario config file. `tau` and `epsilon_override` are
/// optional because presets and CLI flags may supply them.
struct ConfigFile {
  PhysicalConfig physical;
  std::optional<double> tau;
  std::optional<double> epsilon_override;

  bool operator==(const ConfigFile&) const = default;
};

enum class Quantity { mass, length, time, velocity, action };

/// Parses "7.0 um", "18tau0", "1.67e-27kg" etc. into SI. The bare-number form
/// is taken as SI. `tau0` resolves the "tau0" suffix for times; pass nullopt
/// when it is not yet known.
double parse_quantity(std::string_view text, Quantity kind,
                      std::optional<double> tau0 = std::nullopt);

/// Parses a flat key=value document. '#' starts a comment running to end of line.
/// Times may use the "tau0" suffix, resolved after mass and sigma0 are read.
ConfigFile parse_config(std::string_view text);

ConfigFile load_config(const std::string& path);

/// Writes every set key in SI with 17 significant digits, so that
/// parse_config(to_config_text(c)) == c.
std::string to_config_text(const ConfigFile& cfg);

/// Applies one key=value assignment (same keys as the file format).
void set_config_key(ConfigFile& cfg, std::string_view key, std::string_view value);

} // namespace dslit
