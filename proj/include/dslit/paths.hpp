#pragma once

#include <array>
#include <complex>
#include <string_view>

namespace dslit {

/// The four interfering trajectories: straight through slit 1 or slit 2, and
/// the two looped paths. Slit 1 sits at +d/2. Loop 12 enters and exits
/// through slit 1 after visiting slit 2; loop 21 is its mirror image.
enum class Path { one, two, loop12, loop21 };

inline constexpr std::array<Path, 4> kAllPaths{Path::one, Path::two, Path::loop12, Path::loop21};

constexpr std::string_view to_string(Path p) {
  switch (p) {
  case Path::one: return "psi1";
  case Path::two: return "psi2";
  case Path::loop12: return "psi_et12";
  case Path::loop21: return "psi_et21";
  }
  return "?";
}

template <typename Scalar = double>
struct PathAmplitudes {
  using Complex = std::complex<Scalar>;

  Complex psi1{};
  Complex psi2{};
  Complex et12{};
  Complex et21{};

  Complex nonexotic_sum() const { return psi1 + psi2; }
  Complex exotic_sum() const { return et12 + et21; }
  Complex sum() const { return nonexotic_sum() + exotic_sum(); }

  const Complex& operator[](Path p) const {
    switch (p) {
    case Path::one: return psi1;
    case Path::two: return psi2;
    case Path::loop12: return et12;
    case Path::loop21: break;
    }
    return et21;
  }
};

} // namespace dslit
