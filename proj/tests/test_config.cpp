#include "doctest.h"

#include <dslit/config.hpp>
#include <dslit/errors.hpp>

#include <cmath>

using namespace dslit;

namespace {

PhysicalConfig baseline() {
  PhysicalConfig c;
  c.mass = 1.67e-27;
  c.sigma0 = 7e-6;
  c.beta = 7e-6;
  c.d = 125e-6;
  c.t = 18 * c.tau0();
  return c;
}

} // namespace

TEST_SUITE("config") {

TEST_CASE("tau0 for neutrons") {
  // 1.67e-27 * (7e-6)^2 / 1.054571817e-34 by hand: 8.183e-38 / 1.0546e-34
  CHECK(baseline().tau0() == doctest::Approx(7.7598e-4).epsilon(1e-4));
  const auto s = derive_scales(baseline());
  CHECK(s.tau0 == baseline().mass * 49e-12 / kHbarCodata);
}

TEST_CASE("epsilon formula") {
  const auto c = baseline();
  // m beta d / hbar = 1.4613e-36 / 1.0546e-34 s; root factor sqrt(326 / 328)
  const double hand = 1.67e-27 * 7e-6 * 125e-6 / 1.054571817e-34 * std::sqrt(326.0 / 328.0);
  CHECK(epsilon_formula(c) == doctest::Approx(hand).epsilon(1e-12));
  CHECK(epsilon_formula(c) == doctest::Approx(13.8e-3).epsilon(0.01));

  SUBCASE("zero separation") {
    auto z = c;
    z.d = 0;
    CHECK(derive_scales(z).epsilon == 0.0);
  }
  SUBCASE("linear in d") {
    auto two = c;
    two.d *= 2;
    CHECK(epsilon_formula(two) == doctest::Approx(2 * epsilon_formula(c)).epsilon(1e-15));
  }
  SUBCASE("amplified geometry") {
    auto a = c;
    a.beta = 12e-6;
    a.d = 475e-6;
    const double r = (12.0 / 7.0) * (12.0 / 7.0);
    const double hand_a = 1.67e-27 * 12e-6 * 475e-6 / 1.054571817e-34 *
                          std::sqrt((1 + r + 324) / ((1 + r) * (1 + r) + 324));
    CHECK(epsilon_formula(a) == doctest::Approx(hand_a).epsilon(1e-12));
  }
}

TEST_CASE("derive_scales is pure and leaves the override unset") {
  const auto a = derive_scales(baseline());
  const auto b = derive_scales(baseline());
  CHECK(a == b);
  CHECK_FALSE(a.epsilon_override.has_value());
  DerivedScales s = a;
  s.epsilon_override = 19.5e-3;
  CHECK(s.effective_epsilon() == 19.5e-3);
}

TEST_CASE("wavelength") {
  auto c = baseline();
  CHECK_THROWS_AS(wavelength(c), ConfigError);
  c.vz = 1000.0;
  // 6.62607e-34 / (1.67e-27 * 1000)
  CHECK(wavelength(c) == doctest::Approx(3.9677e-10).epsilon(1e-4));
  const double l = wavelength(c);
  c.vz = 2000.0;
  CHECK(wavelength(c) == doctest::Approx(l / 2).epsilon(1e-15));
  c.vz = 2 * std::numbers::pi * c.hbar / c.mass;
  CHECK(wavelength(c) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("validation") {
  auto c = baseline();
  CHECK_NOTHROW(c.validate());
  for (double PhysicalConfig::*field :
       {&PhysicalConfig::mass, &PhysicalConfig::sigma0, &PhysicalConfig::beta,
        &PhysicalConfig::hbar}) {
    auto bad = c;
    bad.*field = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
  }
  auto neg = c;
  neg.d = -1e-6;
  CHECK_THROWS_AS(neg.validate(), ConfigError);
  neg = c;
  neg.t = -1.0;
  CHECK_THROWS_AS(neg.validate(), ConfigError);
  auto nan = c;
  nan.beta = std::nan("");
  CHECK_THROWS_AS(nan.validate(), ConfigError);
}

TEST_CASE("quantities") {
  CHECK(parse_quantity("7 um", Quantity::length) == doctest::Approx(7e-6));
  CHECK(parse_quantity("0.125mm", Quantity::length) == doctest::Approx(125e-6));
  CHECK(parse_quantity("1.67e-27 kg", Quantity::mass) == 1.67e-27);
  CHECK(parse_quantity("19.5ms", Quantity::time) == doctest::Approx(19.5e-3));
  CHECK(parse_quantity("2 s", Quantity::time) == 2.0);
  CHECK(parse_quantity("1000 m/s", Quantity::velocity) == 1000.0);
  CHECK(parse_quantity("0.5", Quantity::length) == 0.5);
  CHECK(parse_quantity("18tau0", Quantity::time, 2.0) == 36.0);
  CHECK_THROWS_AS(parse_quantity("18tau0", Quantity::time), ConfigError);
  CHECK_THROWS_AS(parse_quantity("7 ms", Quantity::length), ConfigError);
  CHECK_THROWS_AS(parse_quantity("7 furlongs", Quantity::length), ConfigError);
  CHECK_THROWS_AS(parse_quantity("", Quantity::length), ConfigError);
  CHECK_THROWS_AS(parse_quantity("abc", Quantity::length), ConfigError);
}

TEST_CASE("config files") {
  const auto f = parse_config(R"(# neutrons
mass = 1.67e-27 kg
sigma0 = 7 um
beta = 7um
d = 125 um
t = 18 tau0     # resolved after mass and sigma0
tau = 18tau0
epsilon_override = 19.5 ms
)");
  const double tau0 = 1.67e-27 * 49e-12 / kHbarCodata;
  CHECK(f.physical.d == doctest::Approx(125e-6));
  CHECK(f.physical.t == doctest::Approx(18 * tau0).epsilon(1e-14));
  REQUIRE(f.tau.has_value());
  CHECK(*f.tau == doctest::Approx(18 * tau0).epsilon(1e-14));
  CHECK(f.epsilon_override == doctest::Approx(19.5e-3));
  CHECK(f.physical.hbar == kHbarCodata);

  SUBCASE("round trip") {
    CHECK(parse_config(to_config_text(f)) == f);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(parse_config("mass 1.0"), ConfigError);
    CHECK_THROWS_AS(parse_config("colour = red"), ConfigError);
    CHECK_THROWS_AS(parse_config("mass = 1 um"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/dir/file.cfg"), IoError);
  }
  SUBCASE("single key assignment") {
    auto g = f;
    set_config_key(g, "beta", "12 um");
    set_config_key(g, "tau", "30tau0");
    CHECK(g.physical.beta == doctest::Approx(12e-6));
    CHECK(*g.tau == doctest::Approx(30 * tau0).epsilon(1e-14));
    CHECK_THROWS_AS(set_config_key(g, "nope", "1"), ConfigError);
  }
}

}
