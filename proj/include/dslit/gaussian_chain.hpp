#pragma once

// Path amplitudes built by composing the propagator and aperture factors of
// the path integral one at a time. Nothing here uses the closed-form
// coefficients; this is the reference the closed forms are checked against.

#include "dslit/complex_gaussian.hpp"
#include "dslit/config.hpp"
#include "dslit/paths.hpp"

#include <vector>

namespace dslit {

struct ChainStep {
  enum class Kind { free_propagate, slit, loop_propagate };

  Kind kind;
  double value; // duration [s] for propagation, center [m] for a slit
  KernelPrefactor prefactor = KernelPrefactor::included;

  static ChainStep propagate(double duration) { return {Kind::free_propagate, duration}; }
  static ChainStep slit(double center) { return {Kind::slit, center}; }
  static ChainStep loop(double epsilon, KernelPrefactor p) {
    return {Kind::loop_propagate, epsilon, p};
  }
};

/// Factor sequence for one path, source to screen.
///
///   one:    t, slit(+d/2), tau
///   two:    t, slit(-d/2), tau
///   loop12: t, slit(+d/2), leg, slit(-d/2), leg, slit(+d/2), tau
///   loop21: loop12 with d -> -d
///
/// The two legs of a loop share one kernel prefactor.
inline std::vector<ChainStep> path_steps(const PhysicalConfig& cfg, const DerivedScales& scales,
                                         double tau, Path path) {
  const double half = (path == Path::one || path == Path::loop12) ? cfg.d / 2 : -cfg.d / 2;
  std::vector<ChainStep> steps;
  if (cfg.t > 0) steps.push_back(ChainStep::propagate(cfg.t)); // t = 0: slit at the source
  steps.push_back(ChainStep::slit(half));
  if (path == Path::loop12 || path == Path::loop21) {
    const double eps = scales.effective_epsilon();
    steps.push_back(ChainStep::loop(eps, KernelPrefactor::included));
    steps.push_back(ChainStep::slit(-half));
    steps.push_back(ChainStep::loop(eps, KernelPrefactor::omitted));
    steps.push_back(ChainStep::slit(half));
  }
  steps.push_back(ChainStep::propagate(tau));
  return steps;
}

template <typename Scalar = double>
ComplexGaussian<Scalar> compose(const PhysicalConfig& cfg, const std::vector<ChainStep>& steps) {
  const auto mass = static_cast<Scalar>(cfg.mass);
  const auto hbar = static_cast<Scalar>(cfg.hbar);
  const auto beta = static_cast<Scalar>(cfg.beta);
  auto g = initial_packet(static_cast<Scalar>(cfg.sigma0));
  for (const auto& step : steps) {
    const auto v = static_cast<Scalar>(step.value);
    switch (step.kind) {
    case ChainStep::Kind::free_propagate: g = free_propagate(g, v, mass, hbar); break;
    case ChainStep::Kind::slit: g = apply_slit(g, v, beta); break;
    case ChainStep::Kind::loop_propagate: g = loop_propagate(g, v, mass, hbar, step.prefactor); break;
    }
  }
  return g;
}

/// Screen amplitude of `path` after a slit-to-screen time `tau`.
/// Throws NumericalBreakdown if an intermediate state stops being normalizable.
template <typename Scalar = double>
ComplexGaussian<Scalar> build_path(const PhysicalConfig& cfg, const DerivedScales& scales,
                                   double tau, Path path) {
  cfg.validate();
  return compose<Scalar>(cfg, path_steps(cfg, scales, tau, path));
}

template <typename Scalar = double>
PathAmplitudes<Scalar> chain_amplitudes(const PhysicalConfig& cfg, const DerivedScales& scales,
                                        double tau, Scalar x) {
  return {build_path<Scalar>(cfg, scales, tau, Path::one)(x),
          build_path<Scalar>(cfg, scales, tau, Path::two)(x),
          build_path<Scalar>(cfg, scales, tau, Path::loop12)(x),
          build_path<Scalar>(cfg, scales, tau, Path::loop21)(x)};
}

} // namespace dslit
