#include <algorithm>
#include <cmath>

#include "rgsw/solver.hpp"

namespace rgsw {

namespace {

struct Side {
  double h, u, p, a;
  Vec4 f;
};

Side side(const Vec4& q, double g_perp) {
  const double h = q[0];
  const double s = kernel::total_enstrophy(q, g_perp);
  const double a2 = kernel::sound_speed_sq(h, s, g_perp);
  return {h, q[1] / h, kernel::pressure(q, g_perp), std::sqrt(std::max(a2, 0.0)),
          kernel::flux(q, g_perp)};
}

}  // namespace

FluxKind flux_kind_from_string(const std::string& name) {
  if (name == "hll") return FluxKind::hll;
  if (name == "hllc") return FluxKind::hllc;
  throw Error(Errc::InvalidParameter, "unknown flux '" + name + "'");
}

std::string to_string(FluxKind kind) { return kind == FluxKind::hllc ? "hllc" : "hll"; }

Vec4 hll_flux(const Vec4& ql, const Vec4& qr, const PhysParams& p) {
  const Side l = side(ql, p.g_perp);
  const Side r = side(qr, p.g_perp);
  const double sl = std::min(l.u - l.a, r.u - r.a);
  const double sr = std::max(l.u + l.a, r.u + r.a);
  if (sl >= 0.0) return l.f;
  if (sr <= 0.0) return r.f;
  Vec4 out;
  const double inv = 1.0 / (sr - sl);
  for (int k = 0; k < 4; ++k)
    out[k] = (sr * l.f[k] - sl * r.f[k] + sl * sr * (qr[k] - ql[k])) * inv;
  return out;
}

Vec4 hllc_flux(const Vec4& ql, const Vec4& qr, const PhysParams& p) {
  const Side l = side(ql, p.g_perp);
  const Side r = side(qr, p.g_perp);
  const double sl = std::min(l.u - l.a, r.u - r.a);
  const double sr = std::max(l.u + l.a, r.u + r.a);
  if (sl >= 0.0) return l.f;
  if (sr <= 0.0) return r.f;
  const double ml = l.h * (sl - l.u);
  const double mr = r.h * (sr - r.u);
  const double ss = (r.p - l.p + l.u * ml - r.u * mr) / (ml - mr);

  auto star = [&](const Side& s, const Vec4& q, double sk) {
    const double factor = s.h * (sk - s.u) / (sk - ss);
    const double e = q[2] / s.h;
    return Vec4{factor, factor * ss,
                factor * (e + (ss - s.u) * (ss + s.p / (s.h * (sk - s.u)))), factor * q[3] / s.h};
  };
  Vec4 out;
  if (ss >= 0.0) {
    const Vec4 qs = star(l, ql, sl);
    for (int k = 0; k < 4; ++k) out[k] = l.f[k] + sl * (qs[k] - ql[k]);
  } else {
    const Vec4 qs = star(r, qr, sr);
    for (int k = 0; k < 4; ++k) out[k] = r.f[k] + sr * (qs[k] - qr[k]);
  }
  return out;
}

namespace kernels {

void fill_ghosts(const std::vector<Vec4>& cells, BoundaryCondition bc, std::vector<Vec4>& padded) {
  const std::size_t n = cells.size();
  const std::size_t g = Grid1D::ghost;
  padded.resize(n + 2 * g);
  std::copy(cells.begin(), cells.end(), padded.begin() + g);
  for (std::size_t k = 0; k < g; ++k) {
    if (bc == BoundaryCondition::periodic) {
      padded[k] = cells[n - g + k];
      padded[n + g + k] = cells[k];
    } else {
      padded[k] = cells.front();
      padded[n + g + k] = cells.back();
    }
  }
}

}  // namespace kernels

}  // namespace rgsw
