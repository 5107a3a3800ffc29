#include <algorithm>
#include <cmath>
#include <cstdio>

#include "rgsw/numerics.hpp"
#include "rgsw/spectral.hpp"

namespace rgsw {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

template <class T>
std::span<const T> sub(const std::vector<T>& v, const Segment& s) {
  return std::span<const T>(v).subspan(s.begin, s.size());
}

template <class T>
std::span<T> sub(std::vector<T>& v, const Segment& s) {
  return std::span<T>(v).subspan(s.begin, s.size());
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::abs(e));
  return m;
}

// First derivative by five- and three-point stencils must agree; a large
// disagreement means the samples do not resolve the segment.
void check_resolution(std::span<const double> x, std::span<const double> f,
                      std::span<const double> d5, const char* what) {
  std::vector<double> d3(x.size());
  num::derivative3(x, f, d3);
  const double scale = max_abs(d5);
  if (scale < 1e-8) return;
  double diff = 0.0;
  std::size_t worst = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = std::abs(d5[i] - d3[i]);
    if (d > diff) {
      diff = d;
      worst = i;
    }
  }
  if (diff > 0.05 * scale)
    throw Error(Errc::GridTooCoarse, std::string(what) + " is under-resolved near x = " +
                                         fmt(x[worst]) + " (stencil disagreement " +
                                         fmt(diff / scale) + ")");
}

}  // namespace

LinearizedSystem linearized_matrices(double h, double phi, double c, const PhysParams& p) {
  const double gp = p.g_perp;
  const double h2 = h * h, h3 = h2 * h;
  LinearizedSystem s;
  s.a0 << 1, 0, 0, 0,
          c, h, 0, 0,
          0.5 * c * c + 1.5 * phi * h2 + gp * h, c * h, 0.5 * h3, 0.5 * h3,
          phi, 0, 0, h;
  s.a1 << c, h, 0, 0,
          c * c + 3 * phi * h2 + gp * h, 2 * c * h, h3, h3,
          0.5 * c * (c * c + 9 * phi * h2 + 4 * gp * h), 0.5 * h * (3 * c * c + 3 * phi * h2 + 2 * gp * h),
          1.5 * c * h3, 1.5 * c * h3,
          c * phi, h * phi, 0, c * h;
  s.e << 0, 0, 0, 0,
         p.g_parallel, -2 * p.c_f * c, -c * c * (p.c_t - p.c_f) / phi, 0,
         c * p.g_parallel, p.g_parallel * h - 3 * p.c_f * c * c, 0, 0,
         0, 0, 0, 0;
  s.a = s.a1 - c * s.a0;
  return s;
}

Eigen::RowVector4d left_kernel_1(double, double phi) {
  return Eigen::RowVector4d(-phi, 0.0, 0.0, 1.0);
}

Eigen::RowVector4d left_kernel_2(double h, double phi, double c, const PhysParams& p) {
  return Eigen::RowVector4d(c * c - 3 * phi * h * h - 2 * p.g_perp * h, -2 * c, 2.0, 0.0);
}

ReducedCoefficients reduced_coefficients(const WaveProfile& profile) {
  const auto& p = profile.params();
  const std::size_t n = profile.size();
  const std::vector<double> x(profile.x().begin(), profile.x().end());
  const std::vector<double> h(profile.h().begin(), profile.h().end());
  const std::vector<double> phi(profile.phi().begin(), profile.phi().end());
  std::vector<double> hx(n), hxx(n), px(n), m(n), mxx(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = phi[i] * h[i] * h[i] * h[i];

  for (const auto& s : profile.segments()) {
    if (s.size() < 5)
      throw Error(Errc::GridTooCoarse, "segment starting at x = " + fmt(x[s.begin]) + " has " +
                                           std::to_string(s.size()) + " samples (need 5)");
    num::derivatives5(sub(x, s), sub(h, s), sub(hx, s), sub(hxx, s));
    num::derivatives5(sub(x, s), sub(phi, s), sub(px, s), {});
    num::derivatives5(sub(x, s), sub(m, s), {}, sub(mxx, s));
    check_resolution(sub(x, s), sub(h, s), sub(hx, s), "height");
    check_resolution(sub(x, s), sub(phi, s), sub(px, s), "enstrophy");
  }

  ReducedCoefficients r;
  r.x = x;
  r.f1.resize(n);
  r.f2.resize(n);
  r.f3.resize(n);
  r.f4.resize(n);
  const double gp = p.g_perp, gh = p.g_parallel, c = profile.c();
  for (std::size_t i = 0; i < n; ++i) {
    const double hb = h[i], k = gp + 3 * hb * phi[i];
    r.f1[i] = (4 * px[i] * hb * hb + 12 * hx[i] * phi[i] * hb - gh + 3 * gp * hx[i]) / (hb * k);
    r.f2[i] = -1.0 / (hb * k);
    r.f3[i] = -2 * p.c_f * c / (hb * hb * k);
    r.f4[i] = (mxx[i] + gp * hxx[i] * hb + gp * hx[i] * hx[i] - gh * hx[i]) / (hb * hb * k);
  }
  const double h0 = profile.h0();
  r.f1_minus = -gh / (h0 * (gp + 3 * h0 * profile.phi_minus()));
  r.f1_plus = -gh / (h0 * (gp + 3 * h0 * profile.phi_plus()));
  return r;
}

KernelMode kernel_modes(const WaveProfile& profile, const std::vector<double>& seed_h,
                        double constant) {
  const std::size_t n = profile.size();
  if (seed_h.size() != n) throw Error(Errc::InvalidParameter, "seed length differs from profile");
  const auto& p = profile.params();
  const auto x = profile.x();
  const auto hb = profile.h();
  const auto pb = profile.phi();
  std::vector<double> integral(n);
  double carry = 0.0;
  for (const auto& s : profile.segments()) {
    num::cumulative_integral(x.subspan(s.begin, s.size()),
                             std::span<const double>(seed_h).subspan(s.begin, s.size()),
                             sub(integral, s), carry);
    carry = integral[s.end - 1];
  }
  KernelMode km{{x.begin(), x.end()}, seed_h, std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double k = p.g_perp + 3 * hb[i] * pb[i];
    km.phi[i] = (constant + p.g_parallel * integral[i] - hb[i] * k * seed_h[i]) /
                (hb[i] * hb[i] * hb[i]);
  }
  return km;
}

double kernel_residual(const WaveProfile& profile, const KernelMode& mode) {
  const std::size_t n = profile.size();
  const auto& p = profile.params();
  const auto x = profile.x();
  const auto hb = profile.h();
  const auto pb = profile.phi();
  const double c = profile.c();
  // Rows 2 and 3 of (A W)' = E W; rows 1 and 4 vanish identically for U = Phi = 0.
  std::vector<double> aw(n), daw(n);
  for (std::size_t i = 0; i < n; ++i)
    aw[i] = hb[i] * (p.g_perp + 3 * hb[i] * pb[i]) * mode.h[i] + hb[i] * hb[i] * hb[i] * mode.phi[i];
  for (const auto& s : profile.segments())
    num::derivatives5(x.subspan(s.begin, s.size()), sub(aw, s), sub(daw, s), {});
  double res = 0.0, scale = 0.0;
  const double length = x.back() - x.front();
  for (std::size_t i = 0; i < n; ++i) {
    const double ew = p.g_parallel * mode.h[i];
    res = std::max(res, std::abs(daw[i] - ew) * std::max(1.0, std::abs(c)));
    scale = std::max(scale, (std::abs(ew) + std::abs(aw[i]) / length) * std::max(1.0, std::abs(c)));
  }
  return scale > 0.0 ? res / scale : res;
}

ReductionDiagnostics check_reduction(const WaveProfile& profile, const ReductionTolerances& tol) {
  const auto& p = profile.params();
  const auto x = profile.x();
  const auto hb = profile.h();
  const auto pb = profile.phi();
  const double c = profile.c();
  ReductionDiagnostics d{0.0, 0.0, 4, 0, 0.0, x.front()};
  double worst_ratio = 0.0;
  auto note = [&](double ratio, double xi) {
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      d.worst_x = xi;
    }
  };
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const auto sys = linearized_matrices(hb[i], pb[i], c, p);
    const double scale = sys.a.cwiseAbs().maxCoeff();
    const double k1 = (left_kernel_1(hb[i], pb[i]) * sys.a).cwiseAbs().maxCoeff() /
                      (scale * std::max(1.0, pb[i]));
    const auto l2 = left_kernel_2(hb[i], pb[i], c, p);
    const double k2 = (l2 * sys.a).cwiseAbs().maxCoeff() / (scale * l2.cwiseAbs().maxCoeff());
    Eigen::FullPivLU<Eigen::Matrix4d> lu(sys.a);
    lu.setThreshold(1e-10);
    const int rank = static_cast<int>(lu.rank());
    d.max_left_kernel_1 = std::max(d.max_left_kernel_1, k1);
    d.max_left_kernel_2 = std::max(d.max_left_kernel_2, k2);
    d.min_rank = std::min(d.min_rank, rank);
    d.max_rank = std::max(d.max_rank, rank);
    note(std::max(k1, k2) / tol.left_kernel, x[i]);
    if (rank != 2) note(1e300, x[i]);
  }
  const auto r = differential_residual(profile);
  for (std::size_t i = 0; i < r.size(); ++i) {
    d.max_profile_residual = std::max(d.max_profile_residual, std::abs(r[i]));
    note(std::abs(r[i]) / tol.profile_residual, x[i]);
  }
  if (worst_ratio > 1.0)
    throw Error(Errc::ReductionViolation,
                "worst sample at x = " + fmt(d.worst_x) + " (left kernel " +
                    fmt(std::max(d.max_left_kernel_1, d.max_left_kernel_2)) + ", rank " +
                    std::to_string(d.min_rank) + ".." + std::to_string(d.max_rank) +
                    ", profile residual " + fmt(d.max_profile_residual) + ")");
  return d;
}

}  // namespace rgsw
