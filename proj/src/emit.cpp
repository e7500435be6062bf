#include "dslit/closed_form.hpp"
#include "dslit/errors.hpp"
#include "dslit/scenario.hpp"

#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace dslit {

using nlohmann::json;

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* output_name(Output o) {
  switch (o) {
  case Output::intensity: return "intensity";
  case Output::relative: return "relative";
  case Output::sorkin: return "sorkin";
  case Output::axial: return "axial";
  case Output::coefficients: return "coefficients";
  }
  return "?";
}

Output output_from(const std::string& s) {
  for (auto o : {Output::intensity, Output::relative, Output::sorkin, Output::axial,
                 Output::coefficients})
    if (s == output_name(o)) return o;
  throw ConfigError("unknown output '" + s + "'");
}

template <typename T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> opt_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

json to_json(const PhysicalConfig& c) {
  return {{"mass", c.mass}, {"sigma0", c.sigma0}, {"beta", c.beta}, {"d", c.d},
          {"t", c.t},       {"hbar", c.hbar},     {"vz", opt(c.vz)}};
}

PhysicalConfig config_from(const json& j) {
  PhysicalConfig c;
  c.mass = j.at("mass").get<double>();
  c.sigma0 = j.at("sigma0").get<double>();
  c.beta = j.at("beta").get<double>();
  c.d = j.at("d").get<double>();
  c.t = j.at("t").get<double>();
  c.hbar = j.at("hbar").get<double>();
  c.vz = opt_from<double>(j.at("vz"));
  return c;
}

json to_json(const DerivedScales& s) {
  return {{"tau0", s.tau0},
          {"epsilon", s.epsilon},
          {"epsilon_override", opt(s.epsilon_override)},
          {"effective_epsilon", s.effective_epsilon()}};
}

DerivedScales scales_from(const json& j) {
  DerivedScales s;
  s.tau0 = j.at("tau0").get<double>();
  s.epsilon = j.at("epsilon").get<double>();
  s.epsilon_override = opt_from<double>(j.at("epsilon_override"));
  return s;
}

json to_json(const Scenario& s) {
  json sweep;
  if (const auto* xs = std::get_if<XSweep>(&s.sweep))
    sweep = {{"kind", "x"}, {"min", xs->x_min}, {"max", xs->x_max}, {"n", xs->n}, {"tau", s.tau}};
  else {
    const auto& ts = std::get<TauSweep>(s.sweep);
    sweep = {{"kind", "tau"}, {"min", ts.tau_min}, {"max", ts.tau_max}, {"n", ts.n}, {"x", ts.x}};
  }
  json outputs = json::array();
  for (auto o : s.outputs) outputs.push_back(output_name(o));
  return {{"name", s.name},
          {"config", to_json(s.config)},
          {"scales", to_json(s.scales)},
          {"tau", s.tau},
          {"sweep", sweep},
          {"outputs", outputs},
          {"exotic", s.exotic},
          {"imax", s.imax == ImaxMode::global ? "global" : "per-point"}};
}

Scenario scenario_from(const json& j) {
  Scenario s;
  s.name = j.at("name").get<std::string>();
  s.config = config_from(j.at("config"));
  s.scales = scales_from(j.at("scales"));
  s.tau = j.at("tau").get<double>();
  const auto& sw = j.at("sweep");
  if (sw.at("kind") == "x")
    s.sweep = XSweep{sw.at("min").get<double>(), sw.at("max").get<double>(), sw.at("n").get<int>()};
  else
    s.sweep = TauSweep{sw.at("min").get<double>(), sw.at("max").get<double>(),
                       sw.at("n").get<int>(), sw.at("x").get<double>()};
  s.outputs.clear();
  for (const auto& o : j.at("outputs")) s.outputs.push_back(output_from(o.get<std::string>()));
  s.exotic = j.at("exotic").get<bool>();
  s.imax = j.at("imax") == "global" ? ImaxMode::global : ImaxMode::per_point;
  return s;
}

json to_json(const InterferenceSample& r) {
  return {{"x", r.x},
          {"tau", r.tau},
          {"i_total", r.i_total},
          {"f_norm", r.f_norm},
          {"i_rel", r.i_rel},
          {"kappa", r.kappa},
          {"i_nonexotic", r.i_nonexotic},
          {"i_max", r.i_max},
          {"visibility", r.visibility},
          {"delta_axial", r.delta_axial}};
}

InterferenceSample sample_from(const json& j) {
  InterferenceSample r;
  r.x = j.at("x").get<double>();
  r.tau = j.at("tau").get<double>();
  r.i_total = j.at("i_total").get<double>();
  r.f_norm = j.at("f_norm").get<double>();
  r.i_rel = j.at("i_rel").get<double>();
  r.kappa = j.at("kappa").get<double>();
  r.i_nonexotic = j.at("i_nonexotic").get<double>();
  r.i_max = j.at("i_max").get<double>();
  r.visibility = j.at("visibility").get<double>();
  r.delta_axial = j.at("delta_axial").get<double>();
  return r;
}

json to_json(const WaveCoefficients<double>& w) {
  return {{"amplitude", w.amplitude}, {"c1", w.c1},       {"c2", w.c2},
          {"c3", w.c3},               {"alpha", w.alpha}, {"gamma", w.gamma},
          {"theta", w.theta},         {"mu", w.mu}};
}

json coefficient_table(const PhysicalConfig& cfg, const DerivedScales& scales, double tau) {
  json j;
  j["tau"] = tau;
  j["config"] = to_json(cfg);
  j["scales"] = to_json(scales);
  const auto [sa, sb] = script_terms<double>(cfg, tau);
  j["script_a"] = sa;
  j["script_b"] = sb;
  j["nonexotic"] = to_json(nonexotic_coefficients<double>(cfg, scales, tau));
  const auto ex = exotic_coefficients<double>(cfg, scales, tau);
  j["exotic"] = to_json(ex.wave);
  json chain;
  for (std::size_t k = 0; k < ex.chain.z.size(); ++k)
    chain["z" + std::to_string(k)] = {ex.chain.z[k].real(), ex.chain.z[k].imag()};
  chain["zR"] = ex.chain.zR;
  chain["zI"] = ex.chain.zI;
  chain["script_a"] = ex.chain.script_a;
  chain["script_b"] = ex.chain.script_b;
  chain["units"] = "reduced: lengths in sigma0, times in tau0";
  j["z_chain"] = chain;
  return j;
}

} // namespace

void write_csv(const SweepResult& r, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& row : r.rows) {
    out << fmt17(r.axis_value(row)) << ',' << fmt17(row.i_total) << ',' << fmt17(row.f_norm)
        << ',' << fmt17(row.i_rel) << ',' << fmt17(row.kappa) << ',' << fmt17(row.visibility)
        << ',' << fmt17(row.delta_axial) << '\n';
  }
}

void write_json(const SweepResult& r, std::ostream& out) {
  json j;
  j["scenario"] = to_json(r.scenario);
  json rows = json::array();
  for (const auto& row : r.rows) rows.push_back(to_json(row));
  j["rows"] = std::move(rows);
  const auto& s = r.summary;
  j["summary"] = {{"kappa_max", s.kappa_max},
                  {"kappa_max_location", s.kappa_max_location},
                  {"visibility_at_peak", s.visibility_at_peak},
                  {"i_rel_range", {s.i_rel_min, s.i_rel_max}},
                  {"visibility_from_extrema", opt(s.visibility_from_extrema)}};
  const auto& outs = r.scenario.outputs;
  if (std::find(outs.begin(), outs.end(), Output::coefficients) != outs.end() &&
      !r.scenario.is_tau_sweep())
    j["coefficients"] = coefficient_table(r.scenario.config, r.scenario.scales, r.scenario.tau);
  out << j.dump(1) << '\n';
}

SweepResult read_json(std::istream& in) {
  json j;
  try {
    in >> j;
    SweepResult r;
    r.scenario = scenario_from(j.at("scenario"));
    for (const auto& row : j.at("rows")) r.rows.push_back(sample_from(row));
    const auto& s = j.at("summary");
    r.summary.kappa_max = s.at("kappa_max").get<double>();
    r.summary.kappa_max_location = s.at("kappa_max_location").get<double>();
    r.summary.visibility_at_peak = s.at("visibility_at_peak").get<double>();
    r.summary.i_rel_min = s.at("i_rel_range").at(0).get<double>();
    r.summary.i_rel_max = s.at("i_rel_range").at(1).get<double>();
    r.summary.visibility_from_extrema = opt_from<double>(s.at("visibility_from_extrema"));
    return r;
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed result document: ") + e.what());
  }
}

std::string coefficients_json(const PhysicalConfig& cfg, const DerivedScales& scales,
                              double tau) {
  return coefficient_table(cfg, scales, tau).dump(1) + "\n";
}

void emit(const SweepResult& r, Format format, const std::string& destination) {
  std::ostringstream buf;
  if (format == Format::csv)
    write_csv(r, buf);
  else
    write_json(r, buf);
  if (destination.empty() || destination == "-") {
    std::cout << buf.str();
    std::cout.flush();
    if (!std::cout) throw IoError("write to stdout failed");
    return;
  }
  std::ofstream f(destination, std::ios::binary);
  if (!f) throw IoError("cannot open '" + destination + "' for writing");
  f << buf.str();
  f.close();
  if (!f) throw IoError("write to '" + destination + "' failed");
}

} // namespace dslit
