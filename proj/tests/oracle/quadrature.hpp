#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature for complex integrands.
// Test-only: used to check the closed Gaussian algebra against the integrals
// it is supposed to evaluate.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <queue>
#include <stdexcept>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

namespace gk {
// Kronrod abscissae on [0, 1]; odd indices are the Gauss-7 nodes.
inline constexpr std::array<double, 8> x{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> wk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> wg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
} // namespace gk

struct Segment {
  double a, b;
  cplx value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <typename F>
Segment gauss_kronrod(F&& f, double a, double b) {
  const double c = (a + b) / 2, h = (b - a) / 2;
  const cplx fc = f(c);
  cplx kron = gk::wk[7] * fc;
  cplx gauss = gk::wg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = h * gk::x[j];
    const cplx s = f(c - dx) + f(c + dx);
    kron += gk::wk[j] * s;
    if (j % 2 == 1) gauss += gk::wg[j / 2] * s;
  }
  return {a, b, kron * h, std::abs((kron - gauss) * h)};
}

/// Integral of f over [a, b] to max(abs_tol, rel_tol |I|).
template <typename F>
cplx integrate(F&& f, double a, double b, double rel_tol = 1e-12, double abs_tol = 0.0,
               int max_segments = 4000, int initial = 8) {
  std::priority_queue<Segment> heap;
  cplx total = 0;
  double err = 0;
  for (int i = 0; i < initial; ++i) {
    const double lo = a + (b - a) * i / initial, hi = a + (b - a) * (i + 1) / initial;
    auto s = gauss_kronrod(f, lo, hi);
    total += s.value;
    err += s.error;
    heap.push(s);
  }
  while (err > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (static_cast<int>(heap.size()) >= max_segments)
      throw std::runtime_error("quadrature: segment budget exhausted");
    const Segment worst = heap.top();
    heap.pop();
    const double mid = (worst.a + worst.b) / 2;
    const auto l = gauss_kronrod(f, worst.a, mid);
    const auto r = gauss_kronrod(f, mid, worst.b);
    total += l.value + r.value - worst.value;
    err += l.error + r.error - worst.error;
    heap.push(l);
    heap.push(r);
  }
  // Re-sum to shed the running-update roundoff.
  cplx sum = 0;
  while (!heap.empty()) {
    sum += heap.top().value;
    heap.pop();
  }
  return sum;
}

} // namespace oracle
