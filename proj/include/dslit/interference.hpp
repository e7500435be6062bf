#pragma once

#include "dslit/closed_form.hpp"
#include "dslit/config.hpp"
#include "dslit/errors.hpp"
#include "dslit/paths.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace dslit {

/// I_T = |psi1 + psi2 + psi_et12 + psi_et21|^2.
template <typename Scalar>
Scalar total_intensity(const PathAmplitudes<Scalar>& p) {
  return std::norm(p.sum());
}

/// Intensity with the looped paths dropped, |psi1 + psi2|^2.
template <typename Scalar>
Scalar nonexotic_intensity(const PathAmplitudes<Scalar>& p) {
  return std::norm(p.nonexotic_sum());
}

/// F = sum of the four single-path intensities.
template <typename Scalar>
Scalar normalizer(const PathAmplitudes<Scalar>& p) {
  return (std::norm(p.psi1) + std::norm(p.psi2)) + (std::norm(p.et12) + std::norm(p.et21));
}

/// I_T / F. Throws NumericalBreakdown when F underflows.
template <typename Scalar>
Scalar relative_intensity(const PathAmplitudes<Scalar>& p) {
  const Scalar f = normalizer(p);
  if (!(f >= std::numeric_limits<Scalar>::min()) || !std::isfinite(f))
    throw NumericalBreakdown("degenerate normalizer: sum of path intensities underflows");
  return total_intensity(p) / f;
}

/// Sorkin parameter (I_T - I) / I_max. The difference is formed as
/// |E|^2 + 2 Re(conj(N) E), with N the straight-path sum and E the looped-path
/// sum, which equals I_T - I without the cancellation.
template <typename Scalar>
Scalar sorkin(const PathAmplitudes<Scalar>& p, Scalar i_max) {
  if (!(i_max > Scalar(0))) throw NumericalBreakdown("Sorkin parameter needs I_max > 0");
  const auto n = p.nonexotic_sum();
  const auto e = p.exotic_sum();
  return (std::norm(e) + 2 * std::real(std::conj(n) * e)) / i_max;
}

/// The six pairwise phases between paths, from the wave coefficients.
struct PhaseDifferences {
  double phi_12 = 0.0;
  double phi_1_et12 = 0.0;
  double phi_1_et21 = 0.0;
  double phi_2_et12 = 0.0;
  double phi_2_et21 = 0.0;
  double phi_et12_21 = 0.0;
};

PhaseDifferences phase_differences(const WaveCoefficients<double>& nonexotic,
                                   const WaveCoefficients<double>& exotic, double x);

/// Ten-term cosine expansion of I_T from moduli and coefficient phases.
double total_intensity_expansion(const PathAmplitudes<double>& p, const PhaseDifferences& phi);

/// Six-term expansion of the Sorkin parameter.
double sorkin_expansion(const PathAmplitudes<double>& p, const PhaseDifferences& phi,
                        double i_max);

struct InterferenceSample {
  double x = 0.0;   // m
  double tau = 0.0; // s
  double i_total = 0.0;
  double f_norm = 0.0;
  double i_rel = 0.0;
  double kappa = 0.0;
  double i_nonexotic = 0.0;
  double i_max = 0.0;
  double visibility = 0.0;  // 2 |psi_et12(0)| / |psi1(0)| at this tau
  double delta_axial = 0.0; // theta_et + mu_et - (theta + mu) at this tau
};

/// Observables at x = 0 and the axial-phase reduction of the Sorkin parameter.
/// Exact and dominant-path approximations are reported side by side.
struct AxialReport {
  double visibility = 0.0;
  double delta_axial = 0.0;
  double kappa_axial = 0.0; // visibility * cos(delta_axial)
  double i_rel_axial = 0.0; // 2 (1 + kappa_axial)
  double kappa_exact = 0.0;
  double i_rel_exact = 0.0;
  double f_exact = 0.0;
  double f_dominant = 0.0; // 2 |psi1(0)|^2
};

AxialReport axial_report(const ClosedFormModel<double>& model);
AxialReport axial_report(const PhysicalConfig& cfg, const DerivedScales& scales, double tau);

enum class ImaxMode { per_point, global };

struct SampleOptions {
  bool exotic = true;
  /// Overrides the per-tau central intensity (used for a global I_max).
  std::optional<double> i_max;
};

/// All observables for one slit-to-screen time, reusable across x.
class TauSlice {
public:
  TauSlice(const PhysicalConfig& cfg, const DerivedScales& scales, double tau,
           const SampleOptions& options = {});

  InterferenceSample at(double x) const;
  const ClosedFormModel<double>& model() const { return model_; }
  double central_intensity() const { return central_; }
  double tau() const { return tau_; }

private:
  ClosedFormModel<double> model_;
  double tau_;
  double central_;
  double i_max_;
  double visibility_;
  double delta_axial_;
};

InterferenceSample sample(const PhysicalConfig& cfg, const DerivedScales& scales, double x,
                          double tau, const SampleOptions& options = {});

/// Fringe visibility (I_max - I_min) / (I_max + I_min) of the relative
/// intensity along a tau sweep, read off from the sampled extrema alone.
///
/// The reference extremum is the one nearest `near_index` when given, else
/// the one deviating most from the sweep mean. The opposite envelope is
/// interpolated to it from the nearest opposite-type extrema (up to three),
/// or held at the nearest one when the reference lies outside them.
/// A sweep with constant I_r returns 0; one that varies without a
/// maximum/minimum pair throws NoOscillationFound.
double visibility_from_extrema(std::span<const InterferenceSample> samples,
                               std::optional<std::size_t> near_index = std::nullopt);

/// Same as above on raw (axis, value) sequences.
double visibility_from_extrema(std::span<const double> axis, std::span<const double> values,
                               std::optional<std::size_t> near_index = std::nullopt);

} // namespace dslit
