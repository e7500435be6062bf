#include "dslit/scenario.hpp"

#include "dslit/errors.hpp"

#include <algorithm>
#include <exception>
#include <thread>

namespace dslit {

namespace {

constexpr double kNeutronMass = 1.67e-27;

Scenario neutron(std::string_view name, double beta, double d, double epsilon) {
  Scenario s;
  s.name = std::string(name);
  s.config.mass = kNeutronMass;
  s.config.sigma0 = 7.0e-6;
  s.config.beta = beta;
  s.config.d = d;
  const double tau0 = s.config.tau0();
  s.config.t = 18.0 * tau0;
  s.tau = 18.0 * tau0;
  s.scales = derive_scales(s.config);
  s.scales.epsilon_override = epsilon;
  return s;
}

// Runs body(i) for i in [0, n) on a few threads; each index is written by
// exactly one worker, so ordering of results is the grid order.
template <typename Body>
void parallel_for(std::size_t n, Body body) {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(hw, (n + 63) / 64);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

} // namespace

void Scenario::validate() const {
  config.validate();
  if (!(scales.effective_epsilon() >= 0.0)) throw ConfigError("epsilon must be nonnegative");
  if (const auto* xs = std::get_if<XSweep>(&sweep)) {
    if (xs->n < 2) throw ConfigError("sweep needs at least 2 points");
    if (!(xs->x_min < xs->x_max)) throw ConfigError("x sweep bounds must be ordered");
    if (!(tau > 0.0)) throw ConfigError("x sweep needs tau > 0");
  } else {
    const auto& ts = std::get<TauSweep>(sweep);
    if (ts.n < 2) throw ConfigError("sweep needs at least 2 points");
    if (!(ts.tau_min < ts.tau_max)) throw ConfigError("tau sweep bounds must be ordered");
    if (!(ts.tau_min > 0.0)) throw ConfigError("tau sweep needs tau > 0");
    if (!std::isfinite(ts.x)) throw ConfigError("fixed x must be finite");
  }
  if (exotic && !(scales.effective_epsilon() > 0.0))
    throw ConfigError("looped paths need epsilon > 0 (d = 0 gives epsilon = 0; set an override "
                      "or disable them)");
}

Eigen::ArrayXd Scenario::grid() const {
  if (const auto* xs = std::get_if<XSweep>(&sweep))
    return Eigen::ArrayXd::LinSpaced(xs->n, xs->x_min, xs->x_max);
  const auto& ts = std::get<TauSweep>(sweep);
  return Eigen::ArrayXd::LinSpaced(ts.n, ts.tau_min, ts.tau_max);
}

std::vector<std::string> preset_names() {
  return {std::string(kPresetBaseline), std::string(kPresetAmplified)};
}

std::string preset_description(std::string_view name) {
  if (name == kPresetBaseline)
    return "neutrons, sigma0 = beta = 7 um, d = 125 um, t = tau = 18 tau0, epsilon pinned to "
           "19.5 ms; x sweep over +-1 mm";
  if (name == kPresetAmplified)
    return "neutrons, beta = 12 um, d = 475 um, t = 18 tau0, epsilon pinned to 132 ms; tau "
           "sweep over [0.1, 60] tau0 at x = 0";
  throw ConfigError("unknown-preset: '" + std::string(name) + "'");
}

Scenario preset(std::string_view name) {
  if (name == kPresetBaseline) {
    auto s = neutron(name, 7.0e-6, 125e-6, 19.5e-3);
    s.sweep = XSweep{-1e-3, 1e-3, 2001};
    return s;
  }
  if (name == kPresetAmplified) {
    auto s = neutron(name, 12e-6, 475e-6, 132e-3);
    const double tau0 = s.scales.tau0;
    s.sweep = TauSweep{0.1 * tau0, 60.0 * tau0, 2001, 0.0};
    return s;
  }
  throw ConfigError("unknown-preset: '" + std::string(name) + "'");
}

Scenario scenario_from_config(const ConfigFile& file, std::string name) {
  Scenario s;
  s.name = std::move(name);
  s.config = file.physical;
  s.scales = derive_scales(s.config);
  s.scales.epsilon_override = file.epsilon_override;
  s.tau = file.tau.value_or(0.0);
  s.sweep = XSweep{};
  return s;
}

ConfigFile scenario_config(const Scenario& s) {
  ConfigFile f;
  f.physical = s.config;
  if (s.tau > 0.0) f.tau = s.tau;
  f.epsilon_override = s.scales.epsilon_override;
  return f;
}

void use_epsilon_formula(Scenario& s) { s.scales.epsilon_override.reset(); }

SweepSummary summarize(const Scenario& s, const std::vector<InterferenceSample>& rows) {
  SweepSummary sum;
  if (rows.empty()) return sum;
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::ArrayXd kappa(n), irel(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    kappa[i] = rows[static_cast<std::size_t>(i)].kappa;
    irel[i] = rows[static_cast<std::size_t>(i)].i_rel;
  }
  Eigen::Index peak = 0;
  sum.kappa_max = kappa.abs().maxCoeff(&peak);
  const auto& at = rows[static_cast<std::size_t>(peak)];
  sum.kappa_max_location = s.is_tau_sweep() ? at.tau : at.x;
  sum.visibility_at_peak = at.visibility;
  sum.i_rel_min = irel.minCoeff();
  sum.i_rel_max = irel.maxCoeff();
  if (s.is_tau_sweep()) {
    try {
      sum.visibility_from_extrema =
          visibility_from_extrema(rows, static_cast<std::size_t>(peak));
    } catch (const NoOscillationFound&) {
    }
  }
  return sum;
}

SweepResult run_scenario(const Scenario& s) {
  s.validate();
  SweepResult result;
  result.scenario = s;
  const Eigen::ArrayXd grid = s.grid();
  const auto n = static_cast<std::size_t>(grid.size());
  result.rows.resize(n);
  SampleOptions options;
  options.exotic = s.exotic;

  if (!s.is_tau_sweep()) {
    const TauSlice slice(s.config, s.scales, s.tau, options);
    parallel_for(n, [&](std::size_t i) { result.rows[i] = slice.at(grid[Eigen::Index(i)]); });
  } else {
    const double x = std::get<TauSweep>(s.sweep).x;
    if (s.imax == ImaxMode::global) {
      std::vector<double> central(n);
      parallel_for(n, [&](std::size_t i) {
        central[i] =
            TauSlice(s.config, s.scales, grid[Eigen::Index(i)], options).central_intensity();
      });
      options.i_max = *std::max_element(central.begin(), central.end());
    }
    parallel_for(n, [&](std::size_t i) {
      result.rows[i] = TauSlice(s.config, s.scales, grid[Eigen::Index(i)], options).at(x);
    });
  }

  for (const auto& r : result.rows) {
    if (!std::isfinite(r.i_total) || !std::isfinite(r.i_rel) || !std::isfinite(r.kappa))
      throw NumericalBreakdown("non-finite observable in sweep");
  }
  result.summary = summarize(s, result.rows);
  return result;
}

} // namespace dslit
