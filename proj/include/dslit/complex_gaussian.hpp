#pragma once

#include "dslit/errors.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace dslit {

/// psi(x) = exp(-a x^2 + b x + c).
///
/// The family is closed under multiplication by Gaussian apertures and under
/// free-particle propagation, so every path amplitude is one of these. The
/// amplitude lives in `c` as a log so that extreme parameters neither
/// overflow nor underflow before evaluation.
template <typename Scalar = double>
struct ComplexGaussian {
  using Complex = std::complex<Scalar>;

  Complex a{};
  Complex b{};
  Complex c{};

  Complex log_value(Scalar x) const { return -a * x * x + b * x + c; }
  Complex operator()(Scalar x) const { return std::exp(log_value(x)); }

  bool normalizable() const { return a.real() > Scalar(0); }

  /// Integral of |psi|^2 over the real line.
  Scalar norm_squared() const {
    const Scalar ar = a.real();
    const Scalar br = b.real();
    return std::sqrt(std::numbers::pi_v<Scalar> / (2 * ar)) *
           std::exp(br * br / (2 * ar) + 2 * c.real());
  }

  /// Intensity width s with |psi|^2 proportional to exp(-x^2 / s^2).
  Scalar intensity_width() const { return std::sqrt(1 / (2 * a.real())); }

  /// psi(-x).
  ComplexGaussian mirrored() const { return {a, -b, c}; }
};

/// Normalized source packet pi^(-1/4) sigma0^(-1/2) exp(-x^2 / 2 sigma0^2).
template <typename Scalar>
ComplexGaussian<Scalar> initial_packet(Scalar sigma0) {
  using Complex = std::complex<Scalar>;
  return {Complex(1 / (2 * sigma0 * sigma0)), Complex(0),
          Complex(-std::log(sigma0 * std::sqrt(std::numbers::pi_v<Scalar>)) / 2)};
}

/// Multiplies by the Gaussian aperture exp(-(x - center)^2 / 2 beta^2).
template <typename Scalar>
ComplexGaussian<Scalar> apply_slit(const ComplexGaussian<Scalar>& g, Scalar center, Scalar beta) {
  const Scalar w = 1 / (beta * beta);
  return {g.a + w / 2, g.b + center * w, g.c - center * center * w / 2};
}

enum class KernelPrefactor { included, omitted };

namespace detail {

// Convolution with exp(i k (x - x')^2), optionally times sqrt(k / (i pi)).
// D = a - i k is the coefficient of the integration variable; Re D > 0 puts
// the principal branch of log D on the continuous sheet.
template <typename Scalar>
ComplexGaussian<Scalar> gaussian_convolve(const ComplexGaussian<Scalar>& g, Scalar k,
                                          KernelPrefactor prefactor) {
  using Complex = std::complex<Scalar>;
  if (!g.normalizable())
    throw NumericalBreakdown("propagation of a non-normalizable state (Re a <= 0)");
  const Complex ik(0, k);
  const Complex D = g.a - ik;
  const Complex denom = Complex(k) + Complex(0, 1) * g.a; // = i D
  ComplexGaussian<Scalar> out;
  out.a = k * g.a / denom;
  out.b = k * g.b / denom;
  const Complex log_d = std::log(D);
  const Scalar log_pi = std::log(std::numbers::pi_v<Scalar>);
  if (prefactor == KernelPrefactor::included) {
    // sqrt(k / i pi) * sqrt(pi / D)
    out.c = g.c + g.b * g.b / (Scalar(4) * D) +
            (Complex(std::log(k), -std::numbers::pi_v<Scalar> / 2) - log_d) / Scalar(2);
  } else {
    out.c = g.c + g.b * g.b / (Scalar(4) * D) + (Complex(log_pi) - log_d) / Scalar(2);
  }
  return out;
}

} // namespace detail

/// Exact convolution with the free-particle propagator
/// sqrt(m / 2 pi i hbar T) exp(i m (x - x')^2 / 2 hbar T).
template <typename Scalar>
ComplexGaussian<Scalar> free_propagate(const ComplexGaussian<Scalar>& g, Scalar duration,
                                       Scalar mass, Scalar hbar) {
  if (!(duration > Scalar(0))) throw ConfigError("propagation duration must be positive");
  return detail::gaussian_convolve(g, mass / (2 * hbar * duration), KernelPrefactor::included);
}

/// One inter-slit leg of a looped trajectory: exponent i m (dx)^2 / 4 hbar eps,
/// i.e. free motion over an effective time 2 eps. With the prefactor
/// included the leg is unitary.
template <typename Scalar>
ComplexGaussian<Scalar> loop_propagate(const ComplexGaussian<Scalar>& g, Scalar epsilon,
                                       Scalar mass, Scalar hbar,
                                       KernelPrefactor prefactor = KernelPrefactor::included) {
  if (!(epsilon > Scalar(0))) throw ConfigError("inter-slit time must be positive");
  return detail::gaussian_convolve(g, mass / (4 * hbar * epsilon), prefactor);
}

/// Two-leg slit-to-slit-to-slit kernel
///   sqrt(m / 4 pi i hbar eps) exp(i m [(x2-x1)^2 + (x3-x2)^2] / 4 hbar eps)
/// with the intermediate aperture F(x2 - mid_center) inside the x2 integral.
/// A single prefactor covers both legs.
template <typename Scalar>
ComplexGaussian<Scalar> loop_kernel(const ComplexGaussian<Scalar>& g, Scalar mid_center,
                                    Scalar beta, Scalar epsilon, Scalar mass, Scalar hbar) {
  auto out = loop_propagate(g, epsilon, mass, hbar, KernelPrefactor::included);
  out = apply_slit(out, mid_center, beta);
  return loop_propagate(out, epsilon, mass, hbar, KernelPrefactor::omitted);
}

} // namespace dslit
