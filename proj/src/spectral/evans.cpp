#include <algorithm>
#include <cmath>
#include <cstdio>

#include "rgsw/numerics.hpp"
#include "rgsw/spectral.hpp"

namespace rgsw {

namespace {

std::string fmt(cplx v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.6g, %.6g)", v.real(), v.imag());
  return buf;
}

double friction_speed_sq(const WaveProfile& profile) {
  return profile.params().c_f * std::abs(profile.c()) * profile.c();
}

// Derivative of complex samples along one segment.
void derivative_c(std::span<const double> x, std::span<const cplx> f, std::span<cplx> df) {
  const std::size_t n = x.size();
  std::vector<double> re(n), im(n), dre(n), dim(n);
  for (std::size_t i = 0; i < n; ++i) {
    re[i] = f[i].real();
    im[i] = f[i].imag();
  }
  num::derivatives5(x, re, dre, {});
  num::derivatives5(x, im, dim, {});
  for (std::size_t i = 0; i < n; ++i) df[i] = cplx(dre[i], dim[i]);
}

bool deviates(double v, double ref, double tol) {
  return std::abs(v - ref) > tol * std::max(1.0, std::abs(ref));
}

}  // namespace

EvansFunction::EvansFunction(WaveProfile profile, EvansOptions options)
    : profile_(std::move(profile)), options_(options) {
  if (profile_.periodic())
    throw Error(Errc::NotAsymptoticallyConstant, "Evans function needs constant endstates");
  const auto x = profile_.x();
  const auto h = profile_.h();
  const auto phi = profile_.phi();
  const double h0 = profile_.h0();
  const double tol = options_.tail_tolerance;
  const std::size_t n = profile_.size();

  // Outside [x_left_, x_right_] the samples equal the endstates to `tol`.
  std::size_t first = n, last = n;
  for (std::size_t i = 0; i < n; ++i)
    if (deviates(h[i], h0, tol) || deviates(phi[i], profile_.phi_minus(), tol)) {
      first = i;
      break;
    }
  for (std::size_t i = n; i-- > 0;)
    if (deviates(h[i], h0, tol) || deviates(phi[i], profile_.phi_plus(), tol)) {
      last = i;
      break;
    }
  x_left_ = first == n ? x[n - 1] : x[first == 0 ? 0 : first - 1];
  x_right_ = last == n ? x[0] : x[std::min(last + 1, n - 1)];

  if (options_.match_point) {
    x_match_ = std::clamp(*options_.match_point, x[0], x[n - 1]);
  } else if (profile_.has_jumps()) {
    double best = -1.0;
    for (const auto& s : profile_.segments()) {
      if (s.begin == 0) continue;
      const std::size_t i = s.begin;
      const double size = std::abs(h[i] - h[i - 1]) / h0 +
                          std::abs(phi[i] - phi[i - 1]) / std::max(phi[i], phi[i - 1]);
      if (size > best) {
        best = size;
        x_match_ = x[i];
      }
    }
  } else {
    const double lo = std::min(x_left_, x_right_), hi = std::max(x_left_, x_right_);
    x_match_ = std::clamp(0.0, std::max(lo, x[0]), std::min(hi, x[n - 1]));
  }

  const auto& p = profile_.params();
  switch (options_.weight) {
    case WeightMode::none:
      theta_minus_ = theta_plus_ = 0.0;
      break;
    case WeightMode::endstate:
      theta_minus_ = -0.5 * p.g_parallel / (h0 * (p.g_perp + 3 * h0 * profile_.phi_minus()));
      theta_plus_ = -0.5 * p.g_parallel / (h0 * (p.g_perp + 3 * h0 * profile_.phi_plus()));
      break;
    case WeightMode::custom:
      theta_minus_ = options_.theta_minus;
      theta_plus_ = options_.theta_plus;
      break;
  }
}

EvansFunction::Side EvansFunction::endstate(cplx lambda, bool left) const {
  const double h0 = profile_.h0();
  const double phi0 = left ? profile_.phi_minus() : profile_.phi_plus();
  const auto& p = profile_.params();
  SpatialEigenvalues se;
  try {
    se = spatial_eigenvalues(lambda, phi0, h0, p);
  } catch (const Error& e) {
    if (e.code() != Errc::BranchCut) throw;
    throw Error(Errc::SplittingFailure, "spatial eigenvalues coincide in real part at lambda = " +
                                            fmt(lambda));
  }
  const double theta = left ? theta_minus_ : theta_plus_;
  if (!(se.gamma1.real() > -theta && -theta > se.gamma2.real()))
    throw Error(Errc::SplittingFailure,
                std::string(left ? "left" : "right") + " endstate has no dichotomy at lambda = " +
                    fmt(lambda) + ": Re gamma = " + std::to_string(se.gamma1.real()) + ", " +
                    std::to_string(se.gamma2.real()) + ", weight " + std::to_string(-theta));
  const cplx mu = left ? se.gamma1 : se.gamma2;
  const double a0 = h0 * h0 * (p.g_perp + 3 * h0 * phi0);
  return {mu, {cplx(1.0), a0 * mu - friction_speed_sq(profile_)}};
}

std::array<cplx, 2> EvansFunction::integrate(cplx lambda, cplx mu, std::array<cplx, 2> y,
                                             double from, double to) const {
  if (from == to) return y;
  const auto& p = profile_.params();
  const auto x = profile_.x();
  const double cc = friction_speed_sq(profile_);
  const cplx drive2 = lambda * lambda;
  const cplx drive1 = 2.0 * lambda * p.c_f * profile_.c();
  const auto& segs = profile_.segments();
  const bool forward = to > from;
  const double lo = std::min(from, to), hi = std::max(from, to);

  num::OdeOptions opt;
  opt.rtol = options_.rtol;
  opt.atol = options_.atol;
  opt.max_step = 0.5;
  opt.initial_step = 1e-2;
  double step = -1.0;

  for (std::size_t m = 0; m < segs.size(); ++m) {
    const std::size_t k = forward ? m : segs.size() - 1 - m;
    const double a = std::max(lo, x[segs[k].begin]);
    const double b = std::min(hi, x[segs[k].end - 1]);
    if (!(b > a)) continue;
    auto rhs = [&](double xx, const std::array<cplx, 2>& w) {
      const double hb = profile_.h_at(k, xx);
      const double pb = profile_.phi_at(k, xx);
      const double aa = hb * hb * (p.g_perp + 3 * hb * pb);
      return std::array<cplx, 2>{(cc * w[0] + w[1]) / aa - mu * w[0],
                                 (drive2 * hb + drive1) * w[0] - mu * w[1]};
    };
    y = forward ? num::dopri5(rhs, a, b, y, step, opt) : num::dopri5(rhs, b, a, y, step, opt);
    const double mag = std::max(std::abs(y[0]), std::abs(y[1]));
    if (!(mag < options_.overflow_limit))
      throw Error(Errc::OverflowGuard, "shooting solution exceeded the overflow limit at lambda = " +
                                           fmt(lambda));
  }
  return y;
}

cplx EvansFunction::operator()(cplx lambda) const {
  const Side left = endstate(lambda, true);
  const Side right = endstate(lambda, false);
  std::array<cplx, 2> wl = left.v, wr = right.v;
  if (x_left_ < x_match_) wl = integrate(lambda, left.mu, wl, x_left_, x_match_);
  if (x_right_ > x_match_) wr = integrate(lambda, right.mu, wr, x_right_, x_match_);
  const cplx det = wl[0] * wr[1] - wl[1] * wr[0];

  const auto& p = profile_.params();
  const double h0 = profile_.h0();
  const double kbar = p.g_perp + 1.5 * h0 * (profile_.phi_minus() + profile_.phi_plus());
  const double sigma = p.c_f * profile_.c() / h0;
  const cplx norm = -2.0 * std::pow(h0, 1.5) * std::sqrt(kbar) * (lambda + sigma);
  return det / norm;
}

cplx evans(const WaveProfile& profile, cplx lambda, const EvansOptions& options) {
  return EvansFunction(profile, options)(lambda);
}

WSolution solve_w_system(const WaveProfile& profile, cplx lambda, const EvansOptions& options) {
  EvansFunction ev(profile, options);
  const auto& prof = ev.profile();
  const auto x = prof.x();
  const auto& p = prof.params();
  const double h0 = prof.h0();
  const double a0 = h0 * h0 * (p.g_perp + 3 * h0 * prof.phi_minus());

  // Decaying branch at -infinity; dichotomy is not required for a particular solution.
  const auto se = spatial_eigenvalues(lambda, prof.phi_minus(), h0, p, true);
  const cplx mu = se.gamma1;
  std::array<cplx, 2> y{cplx(1.0), a0 * mu - friction_speed_sq(prof)};

  // Stored as exp(mu (x - x_end)) times the rescaled solution.
  const double x_end = x.back();
  const double x0 = ev.left_start();
  WSolution sol{lambda, {x.begin(), x.end()}, std::vector<cplx>(x.size()),
                std::vector<cplx>(x.size())};
  double cur = x0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > cur) {
      y = ev.integrate(lambda, mu, y, cur, x[i]);
      cur = x[i];
    }
    const cplx scale = std::exp(mu * (x[i] - x_end));
    sol.w1[i] = scale * y[0];
    sol.w2[i] = scale * y[1];
  }
  return sol;
}

EigenFunction reconstruct_eigenfunction(const WaveProfile& profile, cplx lambda,
                                        const WSolution& solution) {
  if (lambda == cplx(0.0)) throw Error(Errc::LambdaZero, "eigenfunctions need lambda != 0");
  const std::size_t n = profile.size();
  if (solution.w1.size() != n) throw Error(Errc::InvalidParameter, "solution does not match profile");
  const auto& p = profile.params();
  const auto x = profile.x();
  const auto hb = profile.h();
  const auto pb = profile.phi();
  const double cc = friction_speed_sq(profile);

  std::vector<double> hx(n), px(n);
  for (const auto& s : profile.segments()) {
    num::derivatives5(x.subspan(s.begin, s.size()), hb.subspan(s.begin, s.size()),
                      std::span<double>(hx).subspan(s.begin, s.size()), {});
    num::derivatives5(x.subspan(s.begin, s.size()), pb.subspan(s.begin, s.size()),
                      std::span<double>(px).subspan(s.begin, s.size()), {});
  }
  EigenFunction ef;
  ef.lambda = lambda;
  ef.x.assign(x.begin(), x.end());
  ef.w1 = solution.w1;
  ef.w2 = solution.w2;
  ef.u = solution.w1;
  ef.h.resize(n);
  ef.phi_small.resize(n);
  ef.phi_large.assign(n, cplx(0.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double a = hb[i] * hb[i] * (p.g_perp + 3 * hb[i] * pb[i]);
    const cplx du = (solution.w2[i] + cc * solution.w1[i]) / a;
    ef.h[i] = -(hx[i] * ef.u[i] + hb[i] * du) / lambda;
    ef.phi_small[i] = -px[i] * ef.u[i] / lambda;
  }
  return ef;
}

double mateval_residual(const WaveProfile& profile, const EigenFunction& ef) {
  const std::size_t n = profile.size();
  const auto& p = profile.params();
  const auto x = profile.x();
  const auto hb = profile.h();
  const auto pb = profile.phi();
  using V4 = Eigen::Matrix<cplx, 4, 1>;
  std::vector<V4> w(n), aw(n);
  std::vector<std::array<cplx, 4>> comp(4, std::array<cplx, 4>{});
  std::vector<std::vector<cplx>> awc(4, std::vector<cplx>(n)), dawc(4, std::vector<cplx>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto sys = linearized_matrices(hb[i], pb[i], profile.c(), p);
    w[i] << ef.h[i], ef.u[i], ef.phi_large[i], ef.phi_small[i];
    aw[i] = sys.a.cast<cplx>() * w[i];
    for (int r = 0; r < 4; ++r) awc[r][i] = aw[i](r);
  }
  for (const auto& s : profile.segments())
    for (int r = 0; r < 4; ++r)
      derivative_c(x.subspan(s.begin, s.size()),
                   std::span<const cplx>(awc[r]).subspan(s.begin, s.size()),
                   std::span<cplx>(dawc[r]).subspan(s.begin, s.size()));
  double res = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto sys = linearized_matrices(hb[i], pb[i], profile.c(), p);
    const V4 t0 = ef.lambda * (sys.a0.cast<cplx>() * w[i]);
    const V4 t2 = sys.e.cast<cplx>() * w[i];
    V4 d;
    d << dawc[0][i], dawc[1][i], dawc[2][i], dawc[3][i];
    res = std::max(res, (t0 + d - t2).cwiseAbs().maxCoeff());
    scale = std::max(scale, t0.cwiseAbs().maxCoeff() + t2.cwiseAbs().maxCoeff());
  }
  return scale > 0.0 ? res / scale : res;
}

double liouville_residual(const WaveProfile& profile, cplx lambda, const EvansOptions& options) {
  const auto coeffs = reduced_coefficients(profile);
  const auto sol = solve_w_system(profile, lambda, options);
  const EvansFunction ev(profile, options);
  const std::size_t n = profile.size();
  const auto& p = profile.params();
  const auto x = profile.x();
  const auto hb = profile.h();
  const auto pb = profile.phi();
  const double cc = friction_speed_sq(profile);

  // Window where the profile is not constant, widened by a few samples.
  std::size_t i0 = 0, i1 = n;
  while (i0 + 1 < n && x[i0 + 1] < ev.left_start()) ++i0;
  while (i1 > 1 && x[i1 - 2] > ev.right_start()) --i1;
  i0 = i0 >= 8 ? i0 - 8 : 0;
  i1 = std::min(n, i1 + 8);

  std::vector<double> f1int(n), df1(n);
  std::vector<cplx> w(n), dw(n), ddw(n);
  for (const auto& s : profile.segments()) {
    num::derivatives5(x.subspan(s.begin, s.size()),
                      std::span<const double>(coeffs.f1).subspan(s.begin, s.size()),
                      std::span<double>(df1).subspan(s.begin, s.size()), {});
  }
  double carry = 0.0;
  for (const auto& s : profile.segments()) {
    num::cumulative_integral(x.subspan(s.begin, s.size()),
                             std::span<const double>(coeffs.f1).subspan(s.begin, s.size()),
                             std::span<double>(f1int).subspan(s.begin, s.size()), carry);
    carry = f1int[s.end - 1];
  }
  const double ref = f1int[i0];
  for (std::size_t i = 0; i < n; ++i) {
    const double a = hb[i] * hb[i] * (p.g_perp + 3 * hb[i] * pb[i]);
    const cplx u = sol.w1[i];
    const cplx du = (sol.w2[i] + cc * u) / a;
    const double e = std::exp(0.5 * (f1int[i] - ref));
    w[i] = e * u;
    dw[i] = e * (du + 0.5 * coeffs.f1[i] * u);
  }
  for (const auto& s : profile.segments())
    derivative_c(x.subspan(s.begin, s.size()), std::span<const cplx>(dw).subspan(s.begin, s.size()),
                 std::span<cplx>(ddw).subspan(s.begin, s.size()));

  double res = 0.0, scale = 0.0;
  for (std::size_t i = i0; i < i1; ++i) {
    const cplx q = coeffs.f2[i] * lambda * lambda + coeffs.f3[i] * lambda + coeffs.f4[i] -
                   0.25 * coeffs.f1[i] * coeffs.f1[i] - 0.5 * df1[i];
    res = std::max(res, std::abs(ddw[i] + q * w[i]));
    scale = std::max(scale, std::abs(ddw[i]) + std::abs(q * w[i]));
  }
  return scale > 0.0 ? res / scale : res;
}

}  // namespace rgsw
