#include "doctest.h"

#include "support.hpp"

#include <dslit/interference.hpp>

#include <numbers>

using namespace dslit;
using support::rel;
using cplx = std::complex<double>;

namespace {

constexpr double pi = std::numbers::pi;

ClosedFormModel<double> model_of(const support::Case& k, bool exotic = true) {
  return make_model<double>(k.cfg, k.scales, k.tau, exotic);
}

} // namespace

TEST_SUITE("interference") {

TEST_CASE("trivial intensities") {
  PathAmplitudes<double> zero;
  CHECK(total_intensity(zero) == 0.0);
  PathAmplitudes<double> two{cplx(1.5, 0), cplx(1.5, 0), {}, {}};
  CHECK(total_intensity(two) == 4 * 1.5 * 1.5);
  CHECK(relative_intensity(two) == 2.0);
  CHECK(sorkin(two, 9.0) == 0.0);
  CHECK_THROWS_AS(relative_intensity(zero), NumericalBreakdown);
  CHECK_THROWS_AS(sorkin(two, 0.0), NumericalBreakdown);
}

TEST_CASE("cosine expansions equal the direct forms") {
  for (const auto& name : {kPresetBaseline, kPresetAmplified}) {
    const auto k = support::from_preset(name);
    const auto m = model_of(k);
    const double i_max = total_intensity(m.amplitudes(0.0));
    for (double x : {0.0, 1e-5, -4e-5, 1.2e-4, 3e-4}) {
      const auto p = m.amplitudes(x);
      const auto phi = phase_differences(m.nonexotic, *m.exotic, x);
      CHECK(rel(total_intensity_expansion(p, phi), total_intensity(p)) < 1e-12);
      CHECK(std::abs(sorkin_expansion(p, phi, i_max) - sorkin(p, i_max)) <
            1e-12 * std::max(std::abs(sorkin(p, i_max)), 1e-300) + 1e-12 * std::norm(p.et12) / i_max);
      // I_T = I + I_max kappa
      CHECK(rel(nonexotic_intensity(p) + i_max * sorkin(p, i_max), total_intensity(p)) < 1e-12);
    }
  }
}

TEST_CASE("phase differences at the centre") {
  const auto m = model_of(support::from_preset(kPresetAmplified));
  const auto phi = phase_differences(m.nonexotic, *m.exotic, 0.0);
  CHECK(phi.phi_12 == 0.0);
  CHECK(phi.phi_et12_21 == 0.0);
  CHECK(phi.phi_1_et12 == phi.phi_2_et21);
  CHECK(phi.phi_1_et12 == phi.phi_1_et21);
  CHECK(phi.phi_1_et12 == phi.phi_2_et12);
  // straight minus looped, the opposite sign of the axial difference
  CHECK(phi.phi_1_et12 == doctest::Approx(-m.axial_phase_difference()).epsilon(1e-15));
  const auto at = phase_differences(m.nonexotic, *m.exotic, 2e-5);
  CHECK(at.phi_12 == 2 * m.nonexotic.gamma * 2e-5);
  CHECK(at.phi_et12_21 == 2 * m.exotic->gamma * 2e-5);
}

TEST_CASE("baseline relative intensity") {
  const auto k = support::from_preset(kPresetBaseline);
  const TauSlice slice(k.cfg, k.scales, k.tau);
  CHECK(slice.at(0.0).i_rel == doctest::Approx(2.0).epsilon(1e-3));
  for (double x : {5.1e-4, 6e-4, 8e-4, 1e-3}) {
    CHECK(std::abs(slice.at(x).i_rel - 1) < 1e-3);
    CHECK(std::abs(slice.at(-x).i_rel - 1) < 1e-3);
  }
}

TEST_CASE("parity") {
  for (const auto& name : {kPresetBaseline, kPresetAmplified}) {
    const auto k = support::from_preset(name);
    const TauSlice slice(k.cfg, k.scales, k.tau);
    for (double x : {3e-6, 7e-5, 2.5e-4, 9e-4}) {
      const auto a = slice.at(x), b = slice.at(-x);
      CHECK(rel(a.i_total, b.i_total) < 1e-12);
      CHECK(rel(a.f_norm, b.f_norm) < 1e-12);
      CHECK(rel(a.i_rel, b.i_rel) < 1e-12);
      CHECK(std::abs(a.kappa - b.kappa) <= 1e-12 * std::abs(a.kappa));
    }
  }
}

TEST_CASE("looped paths switched off") {
  for (const auto& k : support::random_cases(6)) {
    SampleOptions off;
    off.exotic = false;
    const TauSlice slice(k.cfg, k.scales, k.tau, off);
    CHECK(std::abs(slice.at(0.0).i_rel - 2) < 1e-12);
    for (double x : support::symmetric_grid(support::screen_half_width(k) / 4, 11)) {
      const auto s = slice.at(x);
      CHECK(s.kappa == 0.0);
      CHECK(s.i_total == s.i_nonexotic);
    }
    CHECK(slice.model().axial_phase_difference() == 0.0);
  }
}

TEST_CASE("axial reduction") {
  for (const auto& name : {kPresetBaseline, kPresetAmplified}) {
    const auto k = support::from_preset(name);
    const auto r = axial_report(k.cfg, k.scales, k.tau);
    CHECK(r.visibility >= 0);
    CHECK(std::abs(r.kappa_axial) <= r.visibility);
    CHECK(r.i_rel_axial == doctest::Approx(2 * (1 + r.kappa_axial)));
    CHECK(std::abs(r.kappa_exact - r.kappa_axial) <= 1.05 * r.visibility * r.visibility);
    CHECK(std::abs(r.kappa_exact) <= 1.05 * r.visibility);
    CHECK(r.f_exact >= r.f_dominant);
  }

  SUBCASE("quarter-period axial phase gives no contribution") {
    ClosedFormModel<double> m;
    m.nonexotic = {2.0, 1.0, 0.3, 0.0, 5.0, 0.7, 0.1, -0.4};
    WaveCoefficients<double> e{0.05, 1.1, 0.2, 0.0, 5.5, 0.9, 0.0, 0.0};
    e.mu = m.nonexotic.axial_phase() + pi / 2;
    m.exotic = e;
    const auto r = axial_report(m);
    CHECK(r.visibility == doctest::Approx(2 * 0.05 / 2.0));
    CHECK(std::abs(r.kappa_axial) < 1e-15);
  }
}

TEST_CASE("sign of I_r - 2 follows cos of the axial phase") {
  const auto k = support::from_preset(kPresetAmplified);
  const double tau0 = k.cfg.tau0();
  int sign_changes = 0, prev = 0;
  for (int i = 0; i < 600; ++i) {
    const double tau = tau0 * (0.1 + 59.9 * i / 599.0);
    const TauSlice slice(k.cfg, k.scales, tau);
    const double c = std::cos(slice.model().axial_phase_difference());
    const double dev = slice.at(0.0).i_rel - 2;
    if (std::abs(c) > 1e-9) CHECK((dev > 0) == (c > 0));
    const int s = dev > 0 ? 1 : -1;
    if (prev != 0 && s != prev) ++sign_changes;
    prev = s;
  }
  CHECK(sign_changes >= 2);
}

TEST_CASE("visibility fades at long times") {
  const auto k = support::from_preset(kPresetAmplified);
  const double tau0 = k.cfg.tau0();
  double prev = TauSlice(k.cfg, k.scales, 60 * tau0).at(0.0).visibility;
  for (int i = 1; i <= 35; ++i) {
    const double v = TauSlice(k.cfg, k.scales, (60 + 4 * i) * tau0).at(0.0).visibility;
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("visibility from extrema") {
  SUBCASE("synthetic cosine") {
    std::vector<double> tau(2001), y(2001);
    for (std::size_t i = 0; i < tau.size(); ++i) {
      tau[i] = 0.01 * double(i);
      y[i] = 2 * (1 + 0.2 * std::cos(3.1 * tau[i] + 0.4));
    }
    CHECK(visibility_from_extrema(tau, y) == doctest::Approx(0.2).epsilon(1e-4));
    CHECK(visibility_from_extrema(tau, y, 1000) == doctest::Approx(0.2).epsilon(1e-4));
  }
  SUBCASE("decaying envelope is tracked by interpolation") {
    std::vector<double> tau(4001), y(4001);
    for (std::size_t i = 0; i < tau.size(); ++i) {
      tau[i] = 0.005 * double(i);
      const double v = 0.3 * std::exp(-tau[i] / 8);
      y[i] = 2 * (1 + v * std::cos(2.5 * tau[i]));
    }
    const std::size_t near = 1600; // tau = 8
    const double v_true = 0.3 * std::exp(-1.0);
    CHECK(visibility_from_extrema(tau, y, near) == doctest::Approx(v_true).epsilon(0.02));
  }
  SUBCASE("constant sequence") {
    std::vector<double> tau{0, 1, 2, 3, 4}, y(5, 2.0);
    CHECK(visibility_from_extrema(tau, y) == 0.0);
  }
  SUBCASE("no oscillation") {
    std::vector<double> tau{0, 1, 2, 3, 4}, y{1, 2, 3, 4, 5};
    CHECK_THROWS_AS(visibility_from_extrema(tau, y), NoOscillationFound);
    std::vector<double> bump{1, 2, 3, 2, 1};
    CHECK_THROWS_AS(visibility_from_extrema(tau, bump), NoOscillationFound);
  }
  SUBCASE("mismatched lengths") {
    std::vector<double> tau{0, 1, 2}, y{1, 2};
    CHECK_THROWS_AS(visibility_from_extrema(tau, y), ConfigError);
  }
}

TEST_CASE("samples carry consistent fields") {
  const auto k = support::from_preset(kPresetAmplified);
  const TauSlice slice(k.cfg, k.scales, k.tau);
  const auto s = slice.at(4e-5);
  CHECK(s.i_rel == s.i_total / s.f_norm);
  CHECK(s.i_max == slice.central_intensity());
  CHECK(s.tau == k.tau);
  CHECK(s.i_total >= 0);
  CHECK(s.f_norm > 0);
  SampleOptions fixed;
  fixed.i_max = 2 * slice.central_intensity();
  CHECK(sample(k.cfg, k.scales, 4e-5, k.tau, fixed).kappa == doctest::Approx(s.kappa / 2));
}

}
