// dslit: double-slit sweeps with looped trajectories.
//
//   dslit run --preset neutron-baseline --format csv --out baseline.csv
//   dslit run --config my.cfg --sweep tau --min 1tau0 --max 40tau0 --fixed-x 0
//   dslit coefficients --preset neutron-amplified --tau 30tau0
//   dslit presets [--show NAME]
//
// Exit codes: 0 ok, 2 config error, 3 numerical breakdown, 4 i/o error.

#include "dslit/errors.hpp"
#include "dslit/scenario.hpp"

#include "CLI11.hpp"

#include <array>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

constexpr std::array<const char*, 9> kConfigKeys{
    "mass", "sigma0", "beta", "d", "hbar", "vz", "t", "tau", "epsilon_override"};

struct Source {
  std::string config_path;
  std::string preset_name;
  bool epsilon_from_formula = false;
  std::map<std::string, std::string> overrides;
};

void add_source_options(CLI::App* cmd, Source& src) {
  auto* cfg = cmd->add_option("--config", src.config_path, "key=value scenario file")
                  ->check(CLI::ExistingFile);
  auto* pre = cmd->add_option("--preset", src.preset_name, "named preset (see `dslit presets`)");
  cfg->excludes(pre);
  pre->excludes(cfg);
  cmd->add_flag("--epsilon-from-formula", src.epsilon_from_formula,
                "use the momentum-spread formula for epsilon instead of a pinned value");
  for (const char* key : kConfigKeys) {
    const std::string k = key;
    cmd->add_option_function<std::string>(
           "--" + k, [&src, k](const std::string& v) { src.overrides[k] = v; },
           "override config key '" + k + "' (unit suffixes allowed)")
        ->type_name("VALUE");
  }
}

dslit::Scenario load_scenario(const Source& src) {
  using namespace dslit;
  Scenario s;
  if (!src.preset_name.empty())
    s = preset(src.preset_name);
  else if (!src.config_path.empty())
    s = scenario_from_config(load_config(src.config_path), src.config_path);
  else
    throw ConfigError("one of --config or --preset is required");

  if (!src.overrides.empty()) {
    ConfigFile file = scenario_config(s);
    // Times last, so a "tau0" suffix sees the final mass and sigma0.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& [key, value] : src.overrides) {
        const bool is_time = key == "t" || key == "tau" || key == "epsilon_override";
        if (is_time == (pass == 1)) set_config_key(file, key, value);
      }
    }
    file.physical.validate();
    s.config = file.physical;
    s.scales = derive_scales(s.config);
    s.scales.epsilon_override = file.epsilon_override;
    s.tau = file.tau.value_or(s.tau);
  }
  if (src.epsilon_from_formula) use_epsilon_formula(s);
  return s;
}

dslit::Quantity axis_kind(const std::string& sweep) {
  return sweep == "tau" ? dslit::Quantity::time : dslit::Quantity::length;
}

int run_guarded(const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const dslit::ConfigError& e) {
    std::cerr << "dslit: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const dslit::NumericalBreakdown& e) {
    std::cerr << "dslit: numerical breakdown: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const dslit::NoOscillationFound& e) {
    std::cerr << "dslit: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const dslit::IoError& e) {
    std::cerr << "dslit: i/o error: " << e.what() << '\n';
    return kExitIo;
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Double-slit interference with looped (exotic) Feynman paths"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "evaluate a sweep and write CSV or JSON");
  Source run_src;
  add_source_options(run, run_src);
  std::string sweep_kind, min_text, max_text, fixed_tau_text, fixed_x_text;
  std::optional<int> points;
  std::string format = "csv", out = "-", exotic = "on", imax = "per-point";
  run->add_option("--sweep", sweep_kind, "sweep axis")->check(CLI::IsMember({"x", "tau"}));
  run->add_option("--min", min_text, "lower sweep bound (m for x, s or tau0 for tau)");
  run->add_option("--max", max_text, "upper sweep bound");
  run->add_option("--points", points, "grid points (>= 2)");
  run->add_option("--fixed-tau", fixed_tau_text, "slit-to-screen time for an x sweep");
  run->add_option("--fixed-x", fixed_x_text, "screen position for a tau sweep");
  run->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  run->add_option("--out", out, "output path, '-' for stdout")->capture_default_str();
  run->add_option("--exotic", exotic, "include looped paths")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  run->add_option("--imax", imax, "Sorkin normalization along a tau sweep")
      ->check(CLI::IsMember({"per-point", "global"}))
      ->capture_default_str();

  // coefficients
  auto* coef = app.add_subcommand("coefficients", "dump the closed-form coefficient table as JSON");
  Source coef_src;
  add_source_options(coef, coef_src);
  std::string coef_out = "-";
  coef->add_option("--out", coef_out, "output path, '-' for stdout")->capture_default_str();

  // presets
  auto* presets = app.add_subcommand("presets", "list the built-in scenarios");
  std::string show;
  presets->add_option("--show", show, "print a preset as a config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  if (*run) {
    return run_guarded([&] {
      using namespace dslit;
      Scenario s = load_scenario(run_src);
      const double tau0 = s.config.tau0();
      if (!fixed_tau_text.empty()) s.tau = parse_quantity(fixed_tau_text, Quantity::time, tau0);

      const std::string axis =
          !sweep_kind.empty() ? sweep_kind : (s.is_tau_sweep() ? "tau" : "x");
      if (axis == "x") {
        XSweep xs = std::get_if<XSweep>(&s.sweep) ? std::get<XSweep>(s.sweep) : XSweep{};
        if (!min_text.empty()) xs.x_min = parse_quantity(min_text, Quantity::length);
        if (!max_text.empty()) xs.x_max = parse_quantity(max_text, Quantity::length);
        if (points) xs.n = *points;
        if (!fixed_x_text.empty()) throw ConfigError("--fixed-x applies to tau sweeps");
        s.sweep = xs;
      } else {
        TauSweep ts = std::get_if<TauSweep>(&s.sweep) ? std::get<TauSweep>(s.sweep)
                                                      : TauSweep{0.1 * tau0, 60.0 * tau0};
        if (!min_text.empty()) ts.tau_min = parse_quantity(min_text, axis_kind(axis), tau0);
        if (!max_text.empty()) ts.tau_max = parse_quantity(max_text, axis_kind(axis), tau0);
        if (points) ts.n = *points;
        if (!fixed_x_text.empty()) ts.x = parse_quantity(fixed_x_text, Quantity::length);
        s.sweep = ts;
      }
      s.exotic = exotic == "on";
      s.imax = imax == "global" ? ImaxMode::global : ImaxMode::per_point;

      const auto result = run_scenario(s);
      emit(result, format == "json" ? Format::json : Format::csv, out);
      const auto& sum = result.summary;
      std::cerr << "kappa_max=" << sum.kappa_max << " at " << sum.kappa_max_location
                << "  i_rel in [" << sum.i_rel_min << ", " << sum.i_rel_max << "]";
      if (sum.visibility_from_extrema)
        std::cerr << "  visibility(extrema)=" << *sum.visibility_from_extrema;
      std::cerr << '\n';
    });
  }

  if (*coef) {
    return run_guarded([&] {
      using namespace dslit;
      const Scenario s = load_scenario(coef_src);
      if (!(s.tau > 0.0)) throw ConfigError("coefficients need tau (set it in the config or --tau)");
      const std::string text = coefficients_json(s.config, s.scales, s.tau);
      if (coef_out.empty() || coef_out == "-") {
        std::cout << text;
        return;
      }
      std::ofstream f(coef_out);
      if (!(f << text)) throw IoError("cannot write '" + coef_out + "'");
    });
  }

  return run_guarded([&] {
    using namespace dslit;
    if (!show.empty()) {
      std::cout << to_config_text(scenario_config(preset(show)));
      return;
    }
    for (const auto& name : preset_names())
      std::cout << name << "\t" << preset_description(name) << '\n';
  });
}
