#pragma once

#include "dslit/config.hpp"
#include "dslit/interference.hpp"

#include <Eigen/Core>

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dslit {

struct XSweep {
  double x_min = -1e-3;
  double x_max = 1e-3;
  int n = 2001;
  bool operator==(const XSweep&) const = default;
};

struct TauSweep {
  double tau_min = 0.0;
  double tau_max = 0.0;
  int n = 2001;
  double x = 0.0;
  bool operator==(const TauSweep&) const = default;
};

using Sweep = std::variant<XSweep, TauSweep>;

enum class Output { intensity, relative, sorkin, axial, coefficients };

struct Scenario {
  std::string name;
  PhysicalConfig config;
  DerivedScales scales;
  double tau = 0.0; // slit-to-screen time for x-sweeps and coefficient dumps
  Sweep sweep;
  std::vector<Output> outputs{Output::intensity, Output::relative, Output::sorkin, Output::axial};
  bool exotic = true;
  ImaxMode imax = ImaxMode::per_point;

  /// Throws ConfigError on an invalid config or sweep.
  void validate() const;
  /// Uniform grid along the sweep axis.
  Eigen::ArrayXd grid() const;
  bool is_tau_sweep() const { return std::holds_alternative<TauSweep>(sweep); }
};

struct SweepSummary {
  double kappa_max = 0.0; // max |kappa| over rows
  double kappa_max_location = 0.0;
  double visibility_at_peak = 0.0;
  double i_rel_min = 0.0;
  double i_rel_max = 0.0;
  /// tau sweeps only, when the I_r oscillation can be bracketed.
  std::optional<double> visibility_from_extrema;
};

struct SweepResult {
  Scenario scenario;
  std::vector<InterferenceSample> rows;
  SweepSummary summary;

  double axis_value(const InterferenceSample& s) const {
    return scenario.is_tau_sweep() ? s.tau : s.x;
  }
};

inline constexpr std::string_view kPresetBaseline = "neutron-baseline";
inline constexpr std::string_view kPresetAmplified = "neutron-amplified";

std::vector<std::string> preset_names();
std::string preset_description(std::string_view name);

/// Throws ConfigError("unknown-preset ...") for names outside preset_names().
Scenario preset(std::string_view name);

/// Scenario from config-file contents. The sweep defaults to an x-sweep over
/// +-1 mm at the config's tau; callers replace it as needed.
Scenario scenario_from_config(const ConfigFile& file, std::string name = "custom");

/// Config-file view of a scenario (physical parameters, tau, epsilon override).
ConfigFile scenario_config(const Scenario& s);

/// Replaces the pinned inter-slit time with the formula value.
void use_epsilon_formula(Scenario& s);

/// Evaluates every grid point (concurrently; rows come back in grid order)
/// and fills the summary.
SweepResult run_scenario(const Scenario& s);

/// Summary recomputed from rows alone.
SweepSummary summarize(const Scenario& s, const std::vector<InterferenceSample>& rows);

enum class Format { csv, json };

inline constexpr const char* kCsvHeader =
    "axis_value,i_total,f_norm,i_rel,kappa,visibility,delta_axial";

void write_csv(const SweepResult& r, std::ostream& out);
void write_json(const SweepResult& r, std::ostream& out);

/// Writes to `destination`, or stdout when it is empty or "-".
/// Throws IoError on failure.
void emit(const SweepResult& r, Format format, const std::string& destination);

/// Parses a JSON document written by write_json back into rows and summary.
SweepResult read_json(std::istream& in);

/// JSON table of every closed-form coefficient at one tau.
std::string coefficients_json(const PhysicalConfig& cfg, const DerivedScales& scales,
                              double tau);

} // namespace dslit
