#include "dslit/interference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dslit {

PhaseDifferences phase_differences(const WaveCoefficients<double>& n,
                                   const WaveCoefficients<double>& e, double x) {
  const double quad = (n.alpha - e.alpha) * x * x;
  const double axial = (n.theta - e.theta) + (n.mu - e.mu);
  PhaseDifferences phi;
  phi.phi_12 = 2 * n.gamma * x;
  phi.phi_1_et12 = quad - (n.gamma - e.gamma) * x + axial;
  phi.phi_1_et21 = quad - (n.gamma + e.gamma) * x + axial;
  phi.phi_2_et12 = quad + (n.gamma + e.gamma) * x + axial;
  phi.phi_2_et21 = quad + (n.gamma - e.gamma) * x + axial;
  phi.phi_et12_21 = 2 * e.gamma * x;
  return phi;
}

double total_intensity_expansion(const PathAmplitudes<double>& p, const PhaseDifferences& phi) {
  const double m1 = std::abs(p.psi1), m2 = std::abs(p.psi2);
  const double e12 = std::abs(p.et12), e21 = std::abs(p.et21);
  return m1 * m1 + m2 * m2 + e12 * e12 + e21 * e21 + 2 * m1 * m2 * std::cos(phi.phi_12) +
         2 * m1 * e12 * std::cos(phi.phi_1_et12) + 2 * m1 * e21 * std::cos(phi.phi_1_et21) +
         2 * m2 * e12 * std::cos(phi.phi_2_et12) + 2 * m2 * e21 * std::cos(phi.phi_2_et21) +
         2 * e12 * e21 * std::cos(phi.phi_et12_21);
}

double sorkin_expansion(const PathAmplitudes<double>& p, const PhaseDifferences& phi,
                        double i_max) {
  const double m1 = std::abs(p.psi1), m2 = std::abs(p.psi2);
  const double e12 = std::abs(p.et12), e21 = std::abs(p.et21);
  return (e12 * e12 + e21 * e21 + 2 * m1 * e12 * std::cos(phi.phi_1_et12) +
          2 * m1 * e21 * std::cos(phi.phi_1_et21) + 2 * m2 * e12 * std::cos(phi.phi_2_et12) +
          2 * m2 * e21 * std::cos(phi.phi_2_et21) + 2 * e12 * e21 * std::cos(phi.phi_et12_21)) /
         i_max;
}

AxialReport axial_report(const ClosedFormModel<double>& model) {
  const auto p = model.amplitudes(0.0);
  const double m1 = std::abs(p.psi1);
  if (!(m1 > 0.0)) throw NumericalBreakdown("axial report: psi1(0) vanishes");
  AxialReport r;
  r.visibility = 2 * std::abs(p.et12) / m1;
  r.delta_axial = model.axial_phase_difference();
  r.kappa_axial = r.visibility * std::cos(r.delta_axial);
  r.i_rel_axial = 2 * (1 + r.kappa_axial);
  r.kappa_exact = sorkin(p, total_intensity(p));
  r.i_rel_exact = relative_intensity(p);
  r.f_exact = normalizer(p);
  r.f_dominant = 2 * m1 * m1;
  return r;
}

AxialReport axial_report(const PhysicalConfig& cfg, const DerivedScales& scales, double tau) {
  return axial_report(make_model<double>(cfg, scales, tau));
}

TauSlice::TauSlice(const PhysicalConfig& cfg, const DerivedScales& scales, double tau,
                   const SampleOptions& options)
    : model_(make_model<double>(cfg, scales, tau, options.exotic)), tau_(tau) {
  const auto p0 = model_.amplitudes(0.0);
  central_ = total_intensity(p0);
  i_max_ = options.i_max.value_or(central_);
  const double m1 = std::abs(p0.psi1);
  visibility_ = m1 > 0.0 ? 2 * std::abs(p0.et12) / m1 : 0.0;
  delta_axial_ = model_.axial_phase_difference();
}

InterferenceSample TauSlice::at(double x) const {
  const auto p = model_.amplitudes(x);
  InterferenceSample s;
  s.x = x;
  s.tau = tau_;
  s.i_total = total_intensity(p);
  s.f_norm = normalizer(p);
  s.i_rel = relative_intensity(p);
  s.kappa = sorkin(p, i_max_);
  s.i_nonexotic = nonexotic_intensity(p);
  s.i_max = i_max_;
  s.visibility = visibility_;
  s.delta_axial = delta_axial_;
  return s;
}

InterferenceSample sample(const PhysicalConfig& cfg, const DerivedScales& scales, double x,
                          double tau, const SampleOptions& options) {
  return TauSlice(cfg, scales, tau, options).at(x);
}

namespace {

struct Extremum {
  double pos;
  double value;
  bool is_max;
};

// Vertex of the parabola through three samples, clamped to their span.
Extremum refine(double x0, double y0, double x1, double y1, double x2, double y2, bool is_max) {
  const double h0 = x0 - x1, h2 = x2 - x1;
  const double d0 = y0 - y1, d2 = y2 - y1;
  // y - y1 = A h^2 + B h through (h0, d0), (h2, d2)
  const double det = h0 * h2 * (h0 - h2);
  if (det == 0.0) return {x1, y1, is_max};
  const double A = (d0 * h2 - d2 * h0) / det;
  const double B = (d2 * h0 * h0 - d0 * h2 * h2) / det;
  if (A == 0.0) return {x1, y1, is_max};
  const double hv = std::clamp(-B / (2 * A), std::min(h0, h2), std::max(h0, h2));
  return {x1 + hv, y1 + A * hv * hv + B * hv, is_max};
}

double lagrange(std::span<const Extremum> pts, double at) {
  double sum = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double w = 1.0;
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != i) w *= (at - pts[j].pos) / (pts[i].pos - pts[j].pos);
    sum += w * pts[i].value;
  }
  return sum;
}

} // namespace

double visibility_from_extrema(std::span<const double> axis, std::span<const double> y,
                               std::optional<std::size_t> near_index) {
  const std::size_t n = y.size();
  if (axis.size() != n) throw ConfigError("visibility: axis and values differ in length");
  if (n == 0) throw NoOscillationFound("visibility: empty sweep");
  const auto [lo_it, hi_it] = std::minmax_element(y.begin(), y.end());
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  if (*hi_it - *lo_it <= 1e-12 * std::max(std::abs(mean), 1e-300)) return 0.0;

  std::vector<Extremum> ext;
  std::vector<std::size_t> where;
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const double dl = y[j] - y[j - 1];
    const double dr = y[j + 1] - y[j];
    const bool is_max = dl > 0 && dr <= 0;
    const bool is_min = dl < 0 && dr >= 0;
    if (!is_max && !is_min) continue;
    ext.push_back(refine(axis[j - 1], y[j - 1], axis[j], y[j], axis[j + 1], y[j + 1], is_max));
    where.push_back(j);
  }
  const bool has_max = std::any_of(ext.begin(), ext.end(), [](auto& e) { return e.is_max; });
  const bool has_min = std::any_of(ext.begin(), ext.end(), [](auto& e) { return !e.is_max; });
  if (!has_max || !has_min)
    throw NoOscillationFound("visibility: sweep has no interior maximum/minimum pair");

  std::size_t ref = 0;
  for (std::size_t k = 1; k < ext.size(); ++k) {
    const bool better =
        near_index
            ? std::abs(double(where[k]) - double(*near_index)) <
                  std::abs(double(where[ref]) - double(*near_index))
            : std::abs(ext[k].value - mean) > std::abs(ext[ref].value - mean);
    if (better) ref = k;
  }

  std::vector<Extremum> opposite;
  for (const auto& e : ext)
    if (e.is_max != ext[ref].is_max) opposite.push_back(e);
  const double at = ext[ref].pos;
  std::sort(opposite.begin(), opposite.end(), [at](const Extremum& a, const Extremum& b) {
    return std::abs(a.pos - at) < std::abs(b.pos - at);
  });
  opposite.resize(std::min<std::size_t>(opposite.size(), 3));
  // Interpolate only; past the last opposite extremum hold its value.
  const auto [first, last] = std::minmax_element(
      opposite.begin(), opposite.end(),
      [](const Extremum& a, const Extremum& b) { return a.pos < b.pos; });
  const double envelope = (at >= first->pos && at <= last->pos) ? lagrange(opposite, at)
                                                                : opposite.front().value;

  const double hi = std::max(ext[ref].value, envelope);
  const double lo = std::min(ext[ref].value, envelope);
  return (hi - lo) / (hi + lo);
}

double visibility_from_extrema(std::span<const InterferenceSample> samples,
                               std::optional<std::size_t> near_index) {
  std::vector<double> axis(samples.size()), values(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    axis[i] = samples[i].tau;
    values[i] = samples[i].i_rel;
  }
  return visibility_from_extrema(axis, values, near_index);
}

} // namespace dslit
