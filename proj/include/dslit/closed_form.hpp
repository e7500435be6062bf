#pragma once

// Closed-form path amplitudes
//
//   psi(x) = A exp(-C1 x^2 -/+ C2 x + C3) exp(i(alpha x^2 -/+ gamma x + theta + mu))
//
// with the coefficient formulas written out term by term. Internally every
// formula is evaluated in reduced units (lengths in sigma0, times in tau0,
// so m = hbar = 1); coefficients are converted to SI on the way out.
// docs/CORRECTIONS.md lists where these expressions depart from the
// typeset coefficient table and why.

#include "dslit/config.hpp"
#include "dslit/errors.hpp"
#include "dslit/paths.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <tuple>

namespace dslit {

template <typename Scalar = double>
struct WaveCoefficients {
  Scalar amplitude{}; // A, or A_et
  Scalar c1{};        // m^-2
  Scalar c2{};        // m^-1
  Scalar c3{};
  Scalar alpha{}; // m^-2
  Scalar gamma{}; // m^-1
  Scalar theta{}; // rad, displacement axial phase
  Scalar mu{};    // rad, Gouy phase

  Scalar axial_phase() const { return theta + mu; }
};

/// Intermediate quantities of the looped-path integrals, dimensionless.
///
/// z0..z3 are the quadratic coefficients met while integrating out
/// x0..x3 in turn; z4..z10 are the products
///   z4 = z1^2 z2, z5 = z1^2 z2^2 z3, z6 = z1 z2 z3, z7 = z1 z2,
///   z8 = z2^2 z3, z9 = z1 z2^2 z3, z10 = z2 z3,
/// evaluated with the component recurrences. zR + i zI = i conj(z0 z1 z2 z3).
/// Entry k carries units sigma0^-length_power[k].
template <typename Scalar = double>
struct ZChain {
  using Complex = std::complex<Scalar>;
  static constexpr std::array<int, 11> length_power{2, 2, 2, 2, 6, 10, 6, 4, 6, 8, 4};

  std::array<Complex, 11> z{};
  Scalar zR{};
  Scalar zI{};
  // Real and imaginary parts of the single-slit quadratic coefficient
  // (sigma0^-2 units), kept alongside for inspection.
  Scalar script_a{};
  Scalar script_b{};
};

/// Fills z4..z10, zR and zI from z0..z3 using only real component
/// arithmetic, exactly as the recurrences are written.
template <typename Scalar>
void complete_chain(ZChain<Scalar>& c) {
  using Complex = std::complex<Scalar>;
  auto& z = c.z;
  const Scalar z0R = z[0].real(), z0I = z[0].imag();
  const Scalar z1R = z[1].real(), z1I = z[1].imag();
  const Scalar z2R = z[2].real(), z2I = z[2].imag();
  const Scalar z3R = z[3].real(), z3I = z[3].imag();

  z[4] = Complex(z1R * z1R * z2R - z1I * z1I * z2R - 2 * z1R * z1I * z2I,
                 z1R * z1R * z2I - z1I * z1I * z2I + 2 * z1R * z1I * z2R);

  const Scalar p = z1R * z1R * z2R * z2R - z1R * z1R * z2I * z2I - z1I * z1I * z2R * z2R +
                   z1I * z1I * z2I * z2I - 4 * z1R * z1I * z2R * z2I;
  const Scalar q = z1R * z1R * z2R * z2I - z1I * z1I * z2R * z2I + z1R * z1I * z2R * z2R -
                   z1R * z1I * z2I * z2I;
  z[5] = Complex(z3R * p - 2 * z3I * q, z3I * p + 2 * z3R * q);

  z[6] = Complex(z1R * z2R * z3R - z1R * z2I * z3I - z1I * z2R * z3I - z1I * z2I * z3R,
                 z1R * z2R * z3I + z1R * z2I * z3R + z1I * z2R * z3R - z1I * z2I * z3I);
  z[7] = Complex(z1R * z2R - z1I * z2I, z1I * z2R + z1R * z2I);
  z[8] = Complex((z2R * z2R - z2I * z2I) * z3R - 2 * z2R * z2I * z3I,
                 (z2R * z2R - z2I * z2I) * z3I + 2 * z2R * z2I * z3R);
  z[9] = Complex(z1R * z[8].real() - z1I * z[8].imag(), z1I * z[8].real() + z1R * z[8].imag());
  z[10] = Complex(z2R * z3R - z2I * z3I, z2I * z3R + z2R * z3I);

  const Scalar r01 = z0R * z1R - z0I * z1I;
  const Scalar i01 = z0R * z1I + z0I * z1R;
  const Scalar r23 = z2R * z3R - z2I * z3I;
  const Scalar i23 = z2R * z3I + z2I * z3R;
  c.zR = r01 * i23 + i01 * r23;
  c.zI = r01 * r23 - i01 * i23;
}

namespace detail {

template <typename Scalar>
struct Reduced {
  Scalar beta, d, t, tau, eps; // beta, d in sigma0; t, tau, eps in tau0
  Scalar sigma0;               // SI, for converting back
};

template <typename Scalar>
Reduced<Scalar> reduce(const PhysicalConfig& cfg, const DerivedScales& scales, double tau) {
  cfg.validate();
  if (!(cfg.t > 0.0)) throw ConfigError("closed forms need t > 0");
  if (!(tau > 0.0)) throw ConfigError("closed forms need tau > 0");
  const auto s0 = static_cast<Scalar>(cfg.sigma0);
  const Scalar tau0 =
      static_cast<Scalar>(cfg.mass) * s0 * s0 / static_cast<Scalar>(cfg.hbar);
  return {static_cast<Scalar>(cfg.beta) / s0,
          static_cast<Scalar>(cfg.d) / s0,
          static_cast<Scalar>(cfg.t) / tau0,
          static_cast<Scalar>(tau) / tau0,
          static_cast<Scalar>(scales.effective_epsilon()) / tau0,
          s0};
}

template <typename Scalar>
Scalar abs2(Scalar re, Scalar im) {
  return re * re + im * im;
}

template <typename Scalar>
Scalar abs2(const std::complex<Scalar>& z) {
  return std::norm(z);
}

template <typename Scalar>
WaveCoefficients<Scalar> to_si(WaveCoefficients<Scalar> w, Scalar sigma0, int amplitude_power) {
  w.amplitude *= std::pow(sigma0, Scalar(amplitude_power) / 2);
  w.c1 /= sigma0 * sigma0;
  w.alpha /= sigma0 * sigma0;
  w.c2 /= sigma0;
  w.gamma /= sigma0;
  return w;
}

} // namespace detail

/// Single-slit quadratic coefficient (script A, script B), dimensionless.
template <typename Scalar = double>
std::pair<Scalar, Scalar> script_terms(const PhysicalConfig& cfg, double tau) {
  const auto r = detail::reduce<Scalar>(cfg, DerivedScales{}, tau);
  const Scalar a = 1 / (2 * r.beta * r.beta) + 1 / (2 * (r.t * r.t + 1));
  const Scalar b = 1 / (2 * r.t * (r.t * r.t + 1)) - 1 / (2 * r.t) - 1 / (2 * r.tau);
  return {a, b};
}

/// Coefficients of the straight-through amplitudes psi1 and psi2.
template <typename Scalar = double>
WaveCoefficients<Scalar> nonexotic_coefficients(const PhysicalConfig& cfg,
                                                const DerivedScales& scales, double tau_s) {
  const auto r = detail::reduce<Scalar>(cfg, scales, tau_s);
  const auto [sa, sb] = script_terms<Scalar>(cfg, tau_s);
  const Scalar beta2 = r.beta * r.beta;
  const Scalar beta4 = beta2 * beta2;
  const Scalar d = r.d;
  const Scalar tau = r.tau;
  const Scalar t = r.t;
  const Scalar mod2 = sa * sa + sb * sb;
  using std::atan2;
  using std::pow;
  using std::sqrt;

  WaveCoefficients<Scalar> w;
  const Scalar re = 1 / (4 * t * tau) - 1 / (4 * beta2);
  const Scalar im = (1 / (beta2 * t) + 1 / t + 1 / tau);
  w.amplitude = 1 / (2 * sqrt(sqrt(std::numbers::pi_v<Scalar>) * t * tau)) *
                pow(re * re + im * im / 16, Scalar(-0.25));
  w.c1 = sa / (4 * tau * tau * mod2);
  w.c2 = d * sb / (4 * tau * beta2 * mod2);
  w.c3 = -d * d / (8 * beta2) + tau * tau * d * d * w.c1 / (4 * beta4);
  w.gamma = tau * d * w.c1 / beta2;
  w.alpha = 1 / (2 * tau) + sb / (4 * tau * tau * mod2);
  w.theta = -d * d * sb / (16 * beta4 * mod2);
  w.mu = -atan2(t + tau * (1 + 1 / beta2), 1 - t * tau / beta2) / 2;
  return detail::to_si(w, r.sigma0, -1);
}

template <typename Scalar = double>
struct ExoticCoefficients {
  WaveCoefficients<Scalar> wave;
  ZChain<Scalar> chain;
};

/// Coefficients of the looped amplitude psi_et12 (psi_et21 is its mirror).
/// Needs a positive inter-slit time; d = 0 is allowed when epsilon is
/// supplied as an override.
template <typename Scalar = double>
ExoticCoefficients<Scalar> exotic_coefficients(const PhysicalConfig& cfg,
                                               const DerivedScales& scales, double tau_s) {
  using Complex = std::complex<Scalar>;
  using detail::abs2;
  const auto r = detail::reduce<Scalar>(cfg, scales, tau_s);
  if (!(r.eps > Scalar(0))) throw ConfigError("looped paths need epsilon > 0");

  const Scalar beta2 = r.beta * r.beta;
  const Scalar beta4 = beta2 * beta2;
  const Scalar d = r.d;
  const Scalar d2 = d * d;
  const Scalar t = r.t;
  const Scalar tau = r.tau;
  const Scalar e = r.eps;
  const Scalar e2 = e * e;
  const Scalar e3 = e2 * e;
  const Scalar e4 = e2 * e2;

  ExoticCoefficients<Scalar> out;
  auto& ch = out.chain;
  auto& z = ch.z;
  std::tie(ch.script_a, ch.script_b) = script_terms<Scalar>(cfg, tau_s);

  const Scalar z0R = Scalar(0.5);
  const Scalar z0I = -1 / (2 * t);
  z[0] = Complex(z0R, z0I);
  const Scalar n0 = abs2(z0R, z0I);
  const Scalar z1R = 1 / (2 * beta2) + z0R / (4 * t * t * n0);
  const Scalar z1I = -(1 / (4 * e) + 1 / (2 * t) + z0I / (4 * t * t * n0));
  z[1] = Complex(z1R, z1I);
  const Scalar n1 = abs2(z1R, z1I);
  const Scalar z2R = 1 / (2 * beta2) + z1R / (16 * e2 * n1);
  const Scalar z2I = -(1 / (2 * e) + z1I / (16 * e2 * n1));
  z[2] = Complex(z2R, z2I);
  const Scalar n2 = abs2(z2R, z2I);
  const Scalar z3R = 1 / (2 * beta2) + z2R / (16 * e2 * n2);
  const Scalar z3I = -(1 / (2 * tau) + 1 / (4 * e) + z2I / (16 * e2 * n2));
  z[3] = Complex(z3R, z3I);
  complete_chain(ch);

  const Scalar n3 = abs2(z[3]);
  const Scalar n4 = abs2(z[4]);
  const Scalar n5 = abs2(z[5]);
  const Scalar n6 = abs2(z[6]);
  const Scalar n7 = abs2(z[7]);
  const Scalar n8 = abs2(z[8]);
  const Scalar n9 = abs2(z[9]);
  const Scalar n10 = abs2(z[10]);
  const Scalar zmod = std::hypot(ch.zR, ch.zI);
  if (!(zmod > Scalar(0)))
    throw NumericalBreakdown("looped-path Gouy phase undefined (zR = zI = 0)");

  auto R = [&z](int k) { return z[k].real(); };
  auto I = [&z](int k) { return z[k].imag(); };

  WaveCoefficients<Scalar> w;
  w.amplitude = std::sqrt(std::sqrt(std::numbers::pi_v<Scalar>) / (16 * tau * t * e * zmod));
  w.c1 = z3R / (4 * tau * tau * n3);
  w.alpha = 1 / (2 * tau) + z3I / (4 * tau * tau * n3);

  // Oriented so that psi_et12 leaves through the same slit as psi1.
  w.c2 = d * z3I / (4 * tau * beta2 * n3) - d * I(6) / (64 * beta2 * tau * e2 * n6) -
         d * R(10) / (16 * tau * e * beta2 * n10);
  w.gamma = d * z3R / (4 * tau * beta2 * n3) - d * R(6) / (64 * beta2 * tau * e2 * n6) +
            d * I(10) / (16 * tau * e * beta2 * n10);

  w.c3 = d2 * z1R / (16 * beta4 * n1) + d2 * z2R / (16 * beta4 * n2) +
         d2 * z3R / (16 * beta4 * n3) - d2 * R(4) / (256 * beta4 * e2 * n4) +
         d2 * R(5) / (4096 * e4 * beta4 * n5) - d2 * R(6) / (128 * e2 * beta4 * n6) +
         d2 * I(7) / (32 * beta4 * e * n7) - d2 * R(8) / (256 * e2 * beta4 * n8) -
         d2 * I(9) / (512 * e3 * beta4 * n9) + d2 * I(10) / (32 * e * beta4 * n10) -
         d2 / (8 * beta2) - d2 / (4 * beta2);

  w.theta = -d2 * z1I / (16 * beta4 * n1) - d2 * z2I / (16 * beta4 * n2) -
            d2 * z3I / (16 * beta4 * n3) + d2 * I(4) / (256 * beta4 * e2 * n4) -
            d2 * I(5) / (4096 * beta4 * e4 * n5) + d2 * I(6) / (128 * beta4 * e2 * n6) +
            d2 * R(7) / (32 * beta4 * e * n7) + d2 * I(8) / (256 * beta4 * e2 * n8) -
            d2 * R(9) / (512 * beta4 * e3 * n9) + d2 * R(10) / (32 * beta4 * e * n10);

  // Half of a two-argument arctangent fixes the phase only modulo pi. The
  // branch is the one continuous in all parameters: three kernel prefactors
  // give -3 pi / 4, and each Gaussian integral contributes -arg(z_j) / 2
  // with |arg z_j| < pi / 2.
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar principal = std::atan2(ch.zI, ch.zR) / 2;
  const Scalar continuous =
      -3 * pi / 4 - (std::arg(z[0]) + std::arg(z[1]) + std::arg(z[2]) + std::arg(z[3])) / 2;
  w.mu = principal + pi * std::round((continuous - principal) / pi);

  out.wave = detail::to_si(w, r.sigma0, 1);
  return out;
}

enum class Branch { minus, plus };

/// Minus gives psi1 / psi_et12, plus gives psi2 / psi_et21.
template <typename Scalar>
std::complex<Scalar> eval_wave(const WaveCoefficients<Scalar>& w, Branch branch, Scalar x) {
  const Scalar s = branch == Branch::minus ? Scalar(-1) : Scalar(1);
  const Scalar re = std::log(w.amplitude) - w.c1 * x * x + s * w.c2 * x + w.c3;
  const Scalar im = w.alpha * x * x + s * w.gamma * x + w.theta + w.mu;
  return std::exp(std::complex<Scalar>(re, im));
}

/// Coefficients for one slit-to-screen time, evaluated on demand at x.
template <typename Scalar = double>
struct ClosedFormModel {
  WaveCoefficients<Scalar> nonexotic;
  std::optional<WaveCoefficients<Scalar>> exotic; // empty: looped paths switched off

  PathAmplitudes<Scalar> amplitudes(Scalar x) const {
    PathAmplitudes<Scalar> p;
    p.psi1 = eval_wave(nonexotic, Branch::minus, x);
    p.psi2 = eval_wave(nonexotic, Branch::plus, x);
    if (exotic) {
      p.et12 = eval_wave(*exotic, Branch::minus, x);
      p.et21 = eval_wave(*exotic, Branch::plus, x);
    }
    return p;
  }

  /// theta_et + mu_et - (theta + mu); zero when the looped paths are off.
  Scalar axial_phase_difference() const {
    return exotic ? exotic->axial_phase() - nonexotic.axial_phase() : Scalar(0);
  }
};

template <typename Scalar = double>
ClosedFormModel<Scalar> make_model(const PhysicalConfig& cfg, const DerivedScales& scales,
                                   double tau, bool with_exotic = true) {
  ClosedFormModel<Scalar> m;
  m.nonexotic = nonexotic_coefficients<Scalar>(cfg, scales, tau);
  if (with_exotic) m.exotic = exotic_coefficients<Scalar>(cfg, scales, tau).wave;
  return m;
}

template <typename Scalar = double>
PathAmplitudes<Scalar> path_amplitudes(const PhysicalConfig& cfg, const DerivedScales& scales,
                                       double tau, Scalar x) {
  return make_model<Scalar>(cfg, scales, tau).amplitudes(x);
}

} // namespace dslit
