#pragma once

#include <dslit/config.hpp>
#include <dslit/gaussian_chain.hpp>
#include <dslit/scenario.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace support {

inline double rel(std::complex<double> got, std::complex<double> want) {
  return std::abs(got - want) / std::abs(want);
}

inline double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

struct Case {
  dslit::PhysicalConfig cfg;
  dslit::DerivedScales scales;
  double tau;
};

inline Case from_preset(std::string_view name) {
  const auto s = dslit::preset(name);
  return {s.config, s.scales, s.tau};
}

/// Valid random configurations spanning a few decades in every reduced
/// parameter. Seeded, so failures reproduce.
inline std::vector<Case> random_cases(int n, unsigned seed = 20240611u) {
  std::mt19937_64 rng(seed);
  auto log_uniform = [&rng](double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
  };
  std::vector<Case> out;
  for (int i = 0; i < n; ++i) {
    dslit::PhysicalConfig c;
    c.mass = log_uniform(1.67e-27, 2.0e-25);
    c.sigma0 = log_uniform(1e-6, 3e-5);
    c.beta = c.sigma0 * log_uniform(0.3, 3.0);
    c.d = c.beta * log_uniform(2.0, 40.0);
    const double tau0 = c.tau0();
    c.t = tau0 * log_uniform(0.3, 40.0);
    auto scales = dslit::derive_scales(c);
    if (i % 2 == 0) scales.epsilon_override = tau0 * log_uniform(0.5, 50.0);
    out.push_back({c, scales, tau0 * log_uniform(0.3, 60.0)});
  }
  return out;
}

/// Screen window: the straight-path envelope centre plus six intensity
/// widths, read off the composed Gaussian.
inline double screen_half_width(const Case& k) {
  const auto g = dslit::build_path(k.cfg, k.scales, k.tau, dslit::Path::one);
  const double centre = g.b.real() / (2 * g.a.real());
  return std::abs(centre) + 6 * g.intensity_width();
}

inline std::vector<double> symmetric_grid(double half, int n) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = -half + 2 * half * i / (n - 1);
  return x;
}

} // namespace support
