#include "rgsw/numerics.hpp"

#include <cassert>

namespace rgsw::num {

std::vector<std::vector<double>> fd_weights(double x0, std::span<const double> nodes,
                                            int max_order) {
  // Fornberg (1988), generation of finite difference formulas on arbitrary grids.
  const int n = static_cast<int>(nodes.size()) - 1;
  std::vector<std::vector<double>> c(max_order + 1, std::vector<double>(nodes.size(), 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, max_order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

namespace {

std::size_t stencil_start(std::size_t i, std::size_t n, std::size_t width) {
  const std::size_t half = width / 2;
  if (i < half) return 0;
  if (i + half >= n) return n - width;
  return i - half;
}

}  // namespace

void derivatives5(std::span<const double> x, std::span<const double> f, std::span<double> df,
                  std::span<double> d2f) {
  const std::size_t n = x.size();
  if (n < 5) throw Error(Errc::GridTooCoarse, "five-point stencil needs at least five nodes");
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t s = stencil_start(i, n, 5);
    const auto w = fd_weights(x[i], x.subspan(s, 5), 2);
    double d1 = 0.0, d2 = 0.0;
    for (std::size_t j = 0; j < 5; ++j) {
      d1 += w[1][j] * f[s + j];
      d2 += w[2][j] * f[s + j];
    }
    if (!df.empty()) df[i] = d1;
    if (!d2f.empty()) d2f[i] = d2;
  }
}

void derivative3(std::span<const double> x, std::span<const double> f, std::span<double> df) {
  const std::size_t n = x.size();
  if (n < 3) throw Error(Errc::GridTooCoarse, "three-point stencil needs at least three nodes");
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t s = stencil_start(i, n, 3);
    const auto w = fd_weights(x[i], x.subspan(s, 3), 1);
    df[i] = w[1][0] * f[s] + w[1][1] * f[s + 1] + w[1][2] * f[s + 2];
  }
}

namespace {

double lagrange_eval(std::span<const double> xs, std::span<const double> fs, double xq) {
  double acc = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    double l = 1.0;
    for (std::size_t m = 0; m < xs.size(); ++m)
      if (m != j) l *= (xq - xs[m]) / (xs[j] - xs[m]);
    acc += l * fs[j];
  }
  return acc;
}

}  // namespace

void cumulative_integral(std::span<const double> x, std::span<const double> f,
                         std::span<double> out, double initial) {
  const std::size_t n = x.size();
  assert(f.size() == n && out.size() == n);
  if (n == 0) return;
  out[0] = initial;
  if (n == 1) return;
  if (n < 4) {
    for (std::size_t i = 1; i < n; ++i)
      out[i] = out[i - 1] + 0.5 * (x[i] - x[i - 1]) * (f[i] + f[i - 1]);
    return;
  }
  const double g = 0.5 / std::sqrt(3.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::size_t s = i == 0 ? 0 : i - 1;
    if (s + 4 > n) s = n - 4;
    const auto xs = x.subspan(s, 4);
    const auto fs = f.subspan(s, 4);
    const double mid = 0.5 * (x[i] + x[i + 1]);
    const double len = x[i + 1] - x[i];
    const double v = lagrange_eval(xs, fs, mid - g * len) + lagrange_eval(xs, fs, mid + g * len);
    out[i + 1] = out[i] + 0.5 * len * v;
  }
}

double interp_cubic(std::span<const double> x, std::span<const double> f, double xq) {
  const std::size_t n = x.size();
  if (n == 0) throw Error(Errc::InvalidParameter, "interpolation on empty run");
  if (n == 1) return f[0];
  const std::size_t width = std::min<std::size_t>(4, n);
  const auto it = std::upper_bound(x.begin(), x.end(), xq);
  std::size_t hi = static_cast<std::size_t>(it - x.begin());
  hi = std::clamp<std::size_t>(hi, 1, n - 1);
  std::size_t s = hi >= width / 2 ? hi - width / 2 : 0;
  if (s + width > n) s = n - width;
  return lagrange_eval(x.subspan(s, width), f.subspan(s, width), xq);
}

double trapezoid(std::span<const double> x, std::span<const double> f) {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    acc += 0.5 * (x[i + 1] - x[i]) * (f[i] + f[i + 1]);
  return acc;
}

}  // namespace rgsw::num
