#pragma once

// Small numerical building blocks shared by the profile and spectral code:
// finite-difference weights on arbitrary nodes, cumulative quadrature,
// local polynomial interpolation, and an embedded Runge-Kutta 4(5) integrator.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "rgsw/error.hpp"

namespace rgsw::num {

/// Fornberg weights: w[k][j] is the weight of f(nodes[j]) in the k-th
/// derivative at x0, for k = 0..max_order.
std::vector<std::vector<double>> fd_weights(double x0, std::span<const double> nodes,
                                            int max_order);

/// First and second derivatives of samples on one smooth run of nodes using
/// five-point stencils (central in the interior, shifted near the ends).
/// Needs at least five nodes.
void derivatives5(std::span<const double> x, std::span<const double> f,
                  std::span<double> df, std::span<double> d2f);

/// Three-point (second-order) first derivative, used for resolution checks.
void derivative3(std::span<const double> x, std::span<const double> f, std::span<double> df);

/// Running integral F(x_i) = int_{x_0}^{x_i} f on one smooth run. Each
/// interval integrates the cubic through its four nearest nodes exactly
/// (two-point Gauss), so the rule is fourth order on non-uniform spacing.
void cumulative_integral(std::span<const double> x, std::span<const double> f,
                         std::span<double> out, double initial = 0.0);

/// Cubic Lagrange interpolation from the four nodes of a sorted run nearest
/// to `xq`. Runs with fewer than four nodes fall back to lower order.
double interp_cubic(std::span<const double> x, std::span<const double> f, double xq);

/// Mean of f over a run, trapezoidal.
double trapezoid(std::span<const double> x, std::span<const double> f);

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-14;
  double max_step = 1.0;
  double initial_step = 1e-3;
  std::size_t max_steps = 2'000'000;
};

namespace detail {

template <class T>
double magnitude(const T& v) {
  return std::abs(v);
}

}  // namespace detail

/// Dormand-Prince 5(4) with standard step-size control, integrating
/// y' = f(x, y) from x0 to x1 (either direction). The state is a fixed-size
/// array of real or complex scalars. Returns y(x1); `h_inout` carries the
/// step size between successive calls.
template <class T, std::size_t N, class F>
std::array<T, N> dopri5(F&& f, double x0, double x1, std::array<T, N> y, double& h_inout,
                        const OdeOptions& opt = {}) {
  using State = std::array<T, N>;
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const double span = x1 - x0;
  if (span == 0.0) return y;
  const double dir = span > 0 ? 1.0 : -1.0;
  double h = std::min(std::abs(h_inout > 0 ? h_inout : opt.initial_step), opt.max_step);
  double x = x0;

  auto axpy = [](const State& base, std::initializer_list<std::pair<double, const State*>> terms,
                 double step) {
    State out = base;
    for (const auto& [coef, k] : terms)
      for (std::size_t i = 0; i < N; ++i) out[i] += (step * coef) * (*k)[i];
    return out;
  };

  State k1 = f(x, y);
  std::size_t steps = 0;
  double h_carry = h;
  while (dir * (x1 - x) > 0.0) {
    if (++steps > opt.max_steps) throw Error(Errc::IntegrationFailure, "too many steps");
    bool last = false;
    if (h >= std::abs(x1 - x)) {
      h_carry = h;
      h = std::abs(x1 - x);
      last = true;
    }
    const double hs = dir * h;
    const State k2 = f(x + c2 * hs, axpy(y, {{a21, &k1}}, hs));
    const State k3 = f(x + c3 * hs, axpy(y, {{a31, &k1}, {a32, &k2}}, hs));
    const State k4 = f(x + c4 * hs, axpy(y, {{a41, &k1}, {a42, &k2}, {a43, &k3}}, hs));
    const State k5 =
        f(x + c5 * hs, axpy(y, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, hs));
    const State k6 = f(x + hs, axpy(y, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4},
                                        {a65, &k5}},
                                    hs));
    const State y_new =
        axpy(y, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}}, hs);
    const State k7 = f(x + hs, y_new);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const T e = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                        e7 * k7[i]);
      const double scale = opt.atol + opt.rtol * std::max(detail::magnitude(y[i]),
                                                          detail::magnitude(y_new[i]));
      err = std::max(err, detail::magnitude(e) / scale);
    }
    if (!std::isfinite(err)) throw Error(Errc::IntegrationFailure, "non-finite step error");

    if (err <= 1.0) {
      x = last ? x1 : x + hs;
      y = y_new;
      k1 = k7;
      const double grow = err == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(err, -0.2));
      if (!last) {
        h = std::min(h * grow, opt.max_step);
        h_carry = h;
      }
    } else {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      h_carry = h;
      if (h < 1e-14 * std::max(1.0, std::abs(x)))
        throw Error(Errc::IntegrationFailure, "step size underflow");
    }
  }
  h_inout = h_carry;
  return y;
}

}  // namespace rgsw::num
