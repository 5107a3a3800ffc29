#pragma once

// Per-element pieces shared by the serial and OpenMP loops. Both variants call
// exactly these functions so their results agree bit for bit.

#include <algorithm>
#include <cmath>

#include "rgsw/solver.hpp"

namespace rgsw::kernels::detail {

inline double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

/// (h, U, Phi, phi) from conserved variables.
inline Vec4 primitive(const Vec4& q, double g_perp) {
  const double h = q[0];
  const double phi = q[3] / h;
  return {h, q[1] / h, kernel::total_enstrophy(q, g_perp) - phi, phi};
}

inline Vec4 conserved(const Vec4& w, double g_perp) {
  const double h = w[0], u = w[1];
  const double e = 0.5 * (g_perp * h + (w[2] + w[3]) * h * h);
  return {h, h * u, h * (0.5 * u * u + e), h * w[3]};
}

inline double cell_speed(const Vec4& q, double g_perp) {
  const double h = q[0];
  const double a2 = kernel::sound_speed_sq(h, kernel::total_enstrophy(q, g_perp), g_perp);
  return std::abs(q[1] / h) + std::sqrt(std::max(a2, 0.0));
}

inline Vec4 limited_slope(const Vec4& wm, const Vec4& w, const Vec4& wp) {
  return {minmod(w[0] - wm[0], wp[0] - w[0]), minmod(w[1] - wm[1], wp[1] - w[1]),
          minmod(w[2] - wm[2], wp[2] - w[2]), minmod(w[3] - wm[3], wp[3] - w[3])};
}

/// Face between padded cells j and j + 1.
inline Vec4 face_flux(const Vec4& w_l, const Vec4& s_l, const Vec4& w_r, const Vec4& s_r,
                      const PhysParams& p, FluxKind kind) {
  Vec4 wl, wr;
  for (int k = 0; k < 4; ++k) {
    wl[k] = w_l[k] + 0.5 * s_l[k];
    wr[k] = w_r[k] - 0.5 * s_r[k];
  }
  const Vec4 ql = conserved(wl, p.g_perp);
  const Vec4 qr = conserved(wr, p.g_perp);
  return kind == FluxKind::hllc ? hllc_flux(ql, qr, p) : hll_flux(ql, qr, p);
}

/// Explicit-midpoint update over dt/2 of the friction source.
inline Vec4 source_half(const Vec4& q, double dt, const PhysParams& p) {
  const Vec4 s0 = kernel::source(q, p);
  Vec4 mid;
  for (int k = 0; k < 4; ++k) mid[k] = q[k] + 0.25 * dt * s0[k];
  const Vec4 s1 = kernel::source(mid, p);
  Vec4 out;
  for (int k = 0; k < 4; ++k) out[k] = q[k] + 0.5 * dt * s1[k];
  return out;
}

/// dt/2 times the momentum relaxation rate 2 C |U| / h.
inline double source_stiffness(const Vec4& q, double dt, const PhysParams& p) {
  const double h = q[0];
  const double u = q[1] / h;
  const double phi = q[3] / h;
  const double big = kernel::total_enstrophy(q, p.g_perp) - phi;
  const double c = kernel::friction_coefficient(big, phi, p.c_f, p.c_t);
  return 0.5 * dt * 2.0 * std::max(c, p.c_f) * std::abs(u) / h;
}

}  // namespace rgsw::kernels::detail
