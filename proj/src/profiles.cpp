#include "rgsw/profiles.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rgsw/numerics.hpp"

namespace rgsw {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

double relation_lhs(double h, double phi, double g_perp) {
  return 0.5 * g_perp * h * h + phi * h * h * h;
}

void check_equilibrium(double h0, double c, const PhysParams& p) {
  if (!(h0 > 0.0)) throw Error(Errc::NonPositiveHeight, "h0 = " + fmt(h0));
  const double lhs = p.g_parallel * h0;
  const double rhs = p.c_f * c * c;
  if (std::abs(lhs - rhs) > kEquilibriumTolerance * std::max(lhs, rhs))
    throw Error(Errc::NonEquilibriumEndstate,
                "g_parallel h0 = " + fmt(lhs) + " but c_f c^2 = " + fmt(rhs));
}

std::vector<Segment> split_segments(std::span<const double> x) {
  std::vector<Segment> out;
  std::size_t begin = 0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (x[i] == x[i - 1]) {
      out.push_back({begin, i});
      begin = i;
    }
  }
  if (!x.empty()) out.push_back({begin, x.size()});
  return out;
}

// Running integral of f across all segments; continuous at jumps.
std::vector<double> piecewise_integral(std::span<const double> x, std::span<const double> f,
                                       const std::vector<Segment>& segs) {
  std::vector<double> out(x.size());
  double carry = 0.0;
  for (const auto& s : segs) {
    num::cumulative_integral(x.subspan(s.begin, s.size()), f.subspan(s.begin, s.size()),
                             std::span<double>(out).subspan(s.begin, s.size()), carry);
    carry = out[s.end - 1];
  }
  return out;
}

// Normalisation of exp(-1/(1-s^2)) over (-1, 1).
double bump_mass() {
  static const double z = boost::math::quadrature::gauss<double, 30>::integrate(
      [](double s) { return s * s < 1.0 ? std::exp(-1.0 / (1.0 - s * s)) : 0.0; }, -1.0, 1.0);
  return z;
}

}  // namespace

WaveProfile::WaveProfile(const PhysParams& params, double h0, double c, std::vector<double> x,
                         std::vector<double> h, std::vector<double> phi, Endstates endstates,
                         bool periodic)
    : params_(params),
      h0_(h0),
      c_(c),
      x_(std::move(x)),
      h_(std::move(h)),
      phi_(std::move(phi)),
      ends_(endstates),
      periodic_(periodic) {
  if (x_.size() != h_.size() || x_.size() != phi_.size())
    throw Error(Errc::InvalidParameter, "profile arrays differ in length");
  if (x_.size() < 2) throw Error(Errc::GridTooCoarse, "profile needs at least two samples");
  if (!(h0_ > 0.0)) throw Error(Errc::NonPositiveHeight, "h0 = " + fmt(h0_));
  if (!std::isfinite(c_)) throw Error(Errc::InvalidParameter, "wave speed is not finite");
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!std::isfinite(x_[i]) || (i > 0 && x_[i] < x_[i - 1]))
      throw Error(Errc::InvalidParameter, "abscissae must be finite and nondecreasing");
    if (i > 1 && x_[i] == x_[i - 1] && x_[i - 1] == x_[i - 2])
      throw Error(Errc::InvalidParameter, "abscissa repeated more than twice at x = " + fmt(x_[i]));
    if (!(h_[i] > 0.0) || !std::isfinite(h_[i]))
      throw Error(Errc::NonPositiveHeight, "h = " + fmt(h_[i]) + " at x = " + fmt(x_[i]));
    if (!(phi_[i] > 0.0) || !std::isfinite(phi_[i]))
      throw Error(Errc::NegativeEnstrophy, "phi = " + fmt(phi_[i]) + " at x = " + fmt(x_[i]));
  }
  segments_ = split_segments(x_);
}

std::vector<double> WaveProfile::jump_locations() const {
  std::vector<double> out;
  for (std::size_t k = 1; k < segments_.size(); ++k) out.push_back(x_[segments_[k].begin]);
  return out;
}

std::size_t WaveProfile::segment_of(double x, bool prefer_left) const {
  for (std::size_t k = 0; k < segments_.size(); ++k) {
    const double right = x_[segments_[k].end - 1];
    if (x < right || (x == right && (prefer_left || k + 1 == segments_.size()))) return k;
  }
  return segments_.size() - 1;
}

double WaveProfile::h_at(std::size_t segment, double x) const {
  const auto& s = segments_.at(segment);
  return num::interp_cubic(std::span(x_).subspan(s.begin, s.size()),
                           std::span(h_).subspan(s.begin, s.size()), x);
}

double WaveProfile::phi_at(std::size_t segment, double x) const {
  const auto& s = segments_.at(segment);
  return num::interp_cubic(std::span(x_).subspan(s.begin, s.size()),
                           std::span(phi_).subspan(s.begin, s.size()), x);
}

std::vector<double> make_profile_grid(double x_lo, double x_hi, std::size_t n,
                                      std::span<const double> jumps) {
  if (!(x_hi > x_lo) || n < 2) throw Error(Errc::InvalidParameter, "bad profile grid");
  std::vector<double> js(jumps.begin(), jumps.end());
  std::sort(js.begin(), js.end());
  for (std::size_t k = 0; k < js.size(); ++k) {
    if (!(js[k] > x_lo && js[k] < x_hi))
      throw Error(Errc::InvalidParameter, "jump at " + fmt(js[k]) + " outside the domain");
    if (k > 0 && js[k] == js[k - 1])
      throw Error(Errc::InvalidParameter, "duplicate jump at " + fmt(js[k]));
  }
  const double dx = (x_hi - x_lo) / static_cast<double>(n - 1);
  std::vector<double> out;
  out.reserve(n + 2 * js.size());
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = i + 1 == n ? x_hi : x_lo + dx * static_cast<double>(i);
    while (next < js.size() && js[next] <= xi + 0.25 * dx) {
      out.push_back(js[next]);
      out.push_back(js[next]);
      ++next;
    }
    // Drop uniform points crowding a jump so stencils stay well conditioned.
    bool crowded = false;
    for (double j : js) crowded = crowded || std::abs(xi - j) < 0.25 * dx;
    if (!crowded || i == 0 || i + 1 == n) out.push_back(xi);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace delta {

std::function<double(double)> bump(double amplitude, double center, double radius) {
  if (!(radius > 0.0)) throw Error(Errc::InvalidParameter, "bump radius must be positive");
  return [=](double x) {
    const double s = (x - center) / radius;
    return s * s < 1.0 ? amplitude * std::exp(-1.0 / (1.0 - s * s)) : 0.0;
  };
}

std::function<double(double)> gaussian(double amplitude, double center, double width) {
  if (!(width > 0.0)) throw Error(Errc::InvalidParameter, "gaussian width must be positive");
  return [=](double x) {
    const double s = (x - center) / width;
    return amplitude * std::exp(-s * s);
  };
}

std::function<double(double)> sine(double amplitude, double period) {
  if (!(period > 0.0)) throw Error(Errc::InvalidParameter, "period must be positive");
  return [=](double x) { return amplitude * std::sin(2.0 * std::numbers::pi * x / period); };
}

}  // namespace delta

ProfileSpec ProfileSpec::sampled(double h0, double c, double kappa, std::vector<double> x,
                                 const std::function<double(double)>& fn) {
  ProfileSpec spec{h0, c, kappa, std::move(x), {}, std::nullopt};
  spec.delta.reserve(spec.x.size());
  for (double xi : spec.x) spec.delta.push_back(fn(xi));
  return spec;
}

double equilibrium_speed(double h0, const PhysParams& p) {
  if (!(h0 > 0.0)) throw Error(Errc::NonPositiveHeight, "h0 = " + fmt(h0));
  return std::sqrt(p.g_parallel * h0 / p.c_f);
}

namespace {

WaveProfile build_from_delta(const ProfileSpec& spec, const PhysParams& p, bool periodic) {
  check_equilibrium(spec.h0, spec.c, p);
  const std::size_t n = spec.x.size();
  if (spec.delta.size() != n)
    throw Error(Errc::InvalidParameter, "delta and abscissae differ in length");
  if (n < 2) throw Error(Errc::GridTooCoarse, "profile needs at least two samples");
  const auto segs = split_segments(spec.x);
  const auto integral = piecewise_integral(spec.x, spec.delta, segs);

  std::vector<double> h(n), phi(n);
  for (std::size_t i = 0; i < n; ++i) {
    h[i] = spec.h0 + spec.delta[i];
    if (!(h[i] > 0.0))
      throw Error(Errc::NonPositiveHeight, "h0 + delta = " + fmt(h[i]) + " at x = " + fmt(spec.x[i]));
    const double num = spec.kappa + p.g_parallel * integral[i] - 0.5 * p.g_perp * h[i] * h[i];
    if (!(num > 0.0))
      throw Error(Errc::NegativeEnstrophy, "enstrophy numerator " + fmt(num) + " at x = " +
                                               fmt(spec.x[i]));
    phi[i] = num / (h[i] * h[i] * h[i]);
  }
  const double h03 = spec.h0 * spec.h0 * spec.h0;
  const double base = spec.kappa - 0.5 * p.g_perp * spec.h0 * spec.h0;
  WaveProfile::Endstates ends{base / h03, (base + p.g_parallel * integral.back()) / h03};
  if (periodic) ends = {phi.front(), phi.front()};
  return WaveProfile(p, spec.h0, spec.c, spec.x, std::move(h), std::move(phi), ends, periodic);
}

}  // namespace

WaveProfile construct_from_delta(const ProfileSpec& spec, const PhysParams& p) {
  return build_from_delta(spec, p, false);
}

double jump_height(double h_right, double phi_left, double phi_right, const PhysParams& p) {
  if (!(h_right > 0.0)) throw Error(Errc::NonPositiveHeight, "h_R = " + fmt(h_right));
  if (!(phi_left > 0.0) || !(phi_right >= 0.0))
    throw Error(Errc::InvalidParameter, "enstrophies must satisfy phi_L > 0, phi_R >= 0");
  const double target = relation_lhs(h_right, phi_right, p.g_perp);
  auto f = [&](double h) { return relation_lhs(h, phi_left, p.g_perp) - target; };
  auto df = [&](double h) { return p.g_perp * h + 3.0 * phi_left * h * h; };

  // f(0) < 0 and f is increasing on h > 0: bracket, then safeguarded Newton.
  double lo = 0.0, hi = h_right;
  while (f(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw Error(Errc::NoPositiveRoot, "cubic has no positive root");
  }
  double h = h_right;
  for (int it = 0; it < 200; ++it) {
    const double fv = f(h);
    if (fv == 0.0) return h;
    (fv < 0.0 ? lo : hi) = h;
    double next = h - fv / df(h);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - h) <= 1e-15 * std::max(1.0, h)) return next;
    h = next;
  }
  return h;
}

WaveProfile construct_single_jump(double h0, double c, double phi_left, double phi_right,
                                  double x_jump, const PhysParams& p, const Domain& domain) {
  check_equilibrium(h0, c, p);
  if (!(phi_right > 0.0)) throw Error(Errc::InvalidParameter, "phi_R must be positive");
  const double h_left = jump_height(h0, phi_left, phi_right, p);

  const double jumps[] = {x_jump};
  auto x = make_profile_grid(domain.x_lo, domain.x_hi, domain.n, jumps);
  const std::size_t n = x.size();
  std::vector<double> h(n, h0), phi(n, phi_right);

  // Left limit sits at index j - 1, right limit at j.
  std::size_t j = 1;
  while (x[j] != x[j - 1]) ++j;
  auto rhs = [&](double, const std::array<double, 1>& y) {
    const double hh = y[0];
    return std::array<double, 1>{p.g_parallel * (hh - h0) /
                                 (p.g_perp * hh + 3.0 * phi_left * hh * hh)};
  };
  num::OdeOptions opt;
  opt.rtol = 1e-10;
  opt.atol = 1e-14;
  std::array<double, 1> y{h_left};
  double step = -1.0;
  bool settled = std::abs(h_left - h0) < 1e-12;
  for (std::size_t k = j; k-- > 0;) {
    if (k + 1 < j && !settled) y = num::dopri5(rhs, x[k + 1], x[k], y, step, opt);
    if (std::abs(y[0] - h0) < 1e-12) settled = true;
    h[k] = settled ? (k + 1 == j ? y[0] : h0) : y[0];
    phi[k] = phi_left;
  }
  return WaveProfile(p, h0, c, std::move(x), std::move(h), std::move(phi), {phi_left, phi_right});
}

WaveProfile construct_periodic(const ProfileSpec& spec, const PhysParams& p, double mean_tol) {
  if (!spec.period || !(*spec.period > 0.0))
    throw Error(Errc::InvalidParameter, "periodic construction needs a positive period");
  const double span = spec.x.back() - spec.x.front();
  if (std::abs(span - *spec.period) > 1e-9 * *spec.period)
    throw Error(Errc::InvalidParameter,
                "samples must cover exactly one period: span " + fmt(span));
  const auto segs = split_segments(spec.x);
  const auto integral = piecewise_integral(spec.x, spec.delta, segs);
  const double mean = integral.back() / *spec.period;
  if (std::abs(mean) > mean_tol)
    throw Error(Errc::NonZeroMean, "mean of delta is " + fmt(mean));
  return build_from_delta(spec, p, true);
}

WaveProfile mollify(const WaveProfile& profile, double eps) {
  if (!(eps > 0.0)) throw Error(Errc::InvalidParameter, "mollifier width must be positive");
  const auto xs = profile.x();
  const auto hs = profile.h();
  const auto jumps = profile.jump_locations();
  const double h0 = profile.h0();
  const double z = bump_mass();

  // Output abscissae: original ones, refined to eps/32 within 1.5 eps of a jump.
  std::vector<double> out_x;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0 && xs[i] == xs[i - 1]) continue;
    bool near = false;
    for (double j : jumps) near = near || std::abs(xs[i] - j) < 1.5 * eps;
    if (!near || i == 0 || i + 1 == xs.size()) out_x.push_back(xs[i]);
  }
  for (double j : jumps) {
    const double lo = std::max(j - 1.5 * eps, xs.front());
    const double hi = std::min(j + 1.5 * eps, xs.back());
    const int m = static_cast<int>(std::ceil((hi - lo) / (eps / 32.0)));
    for (int k = 1; k < m; ++k) out_x.push_back(lo + (hi - lo) * k / m);
  }
  std::sort(out_x.begin(), out_x.end());
  out_x.erase(std::unique(out_x.begin(), out_x.end()), out_x.end());

  // delta on each smooth segment, held constant beyond the sampled range.
  auto delta_in = [&](std::size_t seg, double y) {
    const auto& s = profile.segments()[seg];
    const double yc = std::clamp(y, xs[s.begin], xs[s.end - 1]);
    return profile.h_at(seg, yc) - h0;
  };
  double min_dx = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (xs[i] > xs[i - 1]) min_dx = std::min(min_dx, xs[i] - xs[i - 1]);

  std::vector<double> d(out_x.size());
  for (std::size_t i = 0; i < out_x.size(); ++i) {
    const double xi = out_x[i];
    // Break points: the window ends and any jump inside the window.
    std::vector<double> cuts{xi - eps};
    for (double j : jumps)
      if (j > xi - eps && j < xi + eps) cuts.push_back(j);
    cuts.push_back(xi + eps);
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double a = cuts[k], b = cuts[k + 1];
      const std::size_t seg = profile.segment_of(0.5 * (a + b));
      const int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / std::min(eps / 4.0, 2.0 * min_dx))));
      for (int m = 0; m < pieces; ++m) {
        const double pa = a + (b - a) * m / pieces, pb = a + (b - a) * (m + 1) / pieces;
        acc += boost::math::quadrature::gauss<double, 10>::integrate(
            [&](double y) {
              const double s = (xi - y) / eps;
              const double k_s = s * s < 1.0 ? std::exp(-1.0 / (1.0 - s * s)) : 0.0;
              return k_s * delta_in(seg, y);
            },
            pa, pb);
      }
    }
    d[i] = acc / (z * eps);
  }

  const double kappa = relation_lhs(hs[0], profile.phi()[0], profile.params().g_perp);
  ProfileSpec spec{h0, profile.c(), kappa, std::move(out_x), std::move(d), std::nullopt};
  auto smooth = build_from_delta(spec, profile.params(), false);
  return smooth;
}

std::vector<double> profile_relation_residual(const WaveProfile& profile) {
  const auto xs = profile.x();
  const auto hs = profile.h();
  const auto ph = profile.phi();
  const auto& p = profile.params();
  std::vector<double> dev(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) dev[i] = hs[i] - profile.h0();
  const auto integral = piecewise_integral(xs, dev, profile.segments());
  const double g0 = relation_lhs(hs[0], ph[0], p.g_perp);
  std::vector<double> r(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    r[i] = relation_lhs(hs[i], ph[i], p.g_perp) - g0 - p.g_parallel * integral[i];
  return r;
}

std::vector<double> jump_residuals(const WaveProfile& profile) {
  const auto hs = profile.h();
  const auto ph = profile.phi();
  const double gp = profile.params().g_perp;
  std::vector<double> r;
  for (std::size_t k = 1; k < profile.segments().size(); ++k) {
    const std::size_t i = profile.segments()[k].begin;
    r.push_back(relation_lhs(hs[i], ph[i], gp) - relation_lhs(hs[i - 1], ph[i - 1], gp));
  }
  return r;
}

std::vector<double> differential_residual(const WaveProfile& profile) {
  const auto xs = profile.x();
  const auto hs = profile.h();
  const auto ph = profile.phi();
  const auto& p = profile.params();
  std::vector<double> g(xs.size()), dg(xs.size()), r(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) g[i] = relation_lhs(hs[i], ph[i], p.g_perp);
  for (const auto& s : profile.segments()) {
    num::derivatives5(xs.subspan(s.begin, s.size()), std::span<const double>(g).subspan(s.begin, s.size()),
                      std::span<double>(dg).subspan(s.begin, s.size()), {});
  }
  for (std::size_t i = 0; i < xs.size(); ++i)
    r[i] = dg[i] - p.g_parallel * (hs[i] - profile.h0());
  return r;
}

DecayEstimate estimate_decay(const WaveProfile& profile) {
  const auto xs = profile.x();
  const auto hs = profile.h();
  const double width = 0.1 * (xs.back() - xs.front());
  auto fit = [&](bool left) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0, dev = 0;
    int m = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const bool in = left ? xs[i] <= xs.front() + width : xs[i] >= xs.back() - width;
      if (!in) continue;
      const double d = std::abs(hs[i] - profile.h0());
      dev = std::max(dev, d);
      if (d < 1e-14) continue;
      const double y = std::log(d);
      sx += xs[i];
      sy += y;
      sxx += xs[i] * xs[i];
      sxy += xs[i] * y;
      ++m;
    }
    double rate = std::numeric_limits<double>::infinity();
    if (m >= 3) {
      const double denom = m * sxx - sx * sx;
      const double slope = (m * sxy - sx * sy) / denom;
      rate = left ? slope : -slope;
    }
    return std::pair{rate, dev};
  };
  const auto [lr, ld] = fit(true);
  const auto [rr, rd] = fit(false);
  return {lr, rr, ld, rd};
}

std::vector<double> phi_decay_diagnostic(std::span<const Snapshot> snapshots,
                                         const PhysParams& p) {
  std::vector<double> out;
  out.reserve(snapshots.size());
  for (const auto& snap : snapshots) {
    double m = 0.0;
    for (const auto& q : snap.cells) {
      const double big = kernel::total_enstrophy(q, p.g_perp) - q[3] / q[0];
      m = std::max(m, std::abs(big));
    }
    out.push_back(m);
  }
  return out;
}

}  // namespace rgsw
