#pragma once

// Inclined shallow-water model with large- and small-scale enstrophy: state spaces, constitutive
// laws, fluxes, relaxation sources and characteristic structure.
//
// Conserved variables are q = (h, hU, hE, h*phi) with
//   p = g' h^2 / 2 + (Phi + phi) h^3,  E = U^2 / 2 + e,  e = (g' h + (Phi + phi) h^2) / 2.

#include <array>
#include <cmath>

#include "rgsw/error.hpp"

namespace rgsw {

using Vec4 = std::array<double, 4>;

/// Physical constants of the ramp flow. The inclination angle is never
/// stored; only its gravity split enters the equations.
struct PhysParams {
  double g_perp;      ///< g' = g cos(theta) [m/s^2]
  double g_parallel;  ///< g^ = g sin(theta) [m/s^2]
  double c_f;         ///< Chezy bottom friction coefficient
  double c_t;         ///< turbulent friction coefficient

  PhysParams(double g_perp_, double g_parallel_, double c_f_, double c_t_);

  /// Gravity split for a ramp of inclination `theta` (radians).
  static PhysParams from_inclination(double g, double theta, double c_f, double c_t);
};

/// (h, U, Phi, phi). Construction rejects h <= 0 and non-finite entries.
struct PrimitiveState {
  double h;
  double u;
  double phi_large;  ///< Phi, large-scale enstrophy
  double phi_small;  ///< phi, small-scale (bottom) enstrophy

  PrimitiveState(double h_, double u_, double phi_large_, double phi_small_);

  /// Both enstrophies non-negative.
  bool admissible() const noexcept { return phi_large >= 0.0 && phi_small >= 0.0; }
};

/// (h, hU, hE, h*phi). Construction rejects q1 <= 0.
struct ConservedState {
  Vec4 q;

  explicit ConservedState(const Vec4& q_);
  double h() const noexcept { return q[0]; }
};

ConservedState to_conserved(const PrimitiveState& s, const PhysParams& p);
PrimitiveState to_primitive(const ConservedState& q, const PhysParams& p);

/// Pressure p = g' h^2 / 2 + (Phi + phi) h^3.
double pressure(const PrimitiveState& s, const PhysParams& p);

/// Gas-dynamics form of the pressure, p = 2 h e - g' h^2 / 2.
double pressure_from_energy(double h, double e, const PhysParams& p);

/// Friction mixing coefficient C = (C_f phi + C_t Phi) / (Phi + phi).
/// When Phi + phi <= 0 the phi-pure limit C_f is used.
double friction_coefficient(double phi_large, double phi_small, const PhysParams& p) noexcept;

Vec4 flux(const ConservedState& q, const PhysParams& p);
Vec4 source(const ConservedState& q, const PhysParams& p);

/// ã = sqrt(g' h + 3 (Phi + phi) h^2). Throws ImaginarySoundSpeed on a
/// non-positive radicand.
double sound_speed(const PrimitiveState& s, const PhysParams& p);

/// ã = sqrt(6 e - 2 g' h), the energy form of the same quantity.
double sound_speed_from_energy(double h, double e, const PhysParams& p);

/// (U - ã, U, U, U + ã).
std::array<double, 4> characteristics(const PrimitiveState& s, const PhysParams& p);

/// Specific entropy S = Phi + phi.
double entropy(const PrimitiveState& s) noexcept;

/// Convective rate of change of S along smooth solutions,
/// (1 - phi / S)(C_t - C_f)|U|^3 / h^3. Throws ZeroEntropy when S == 0.
double entropy_production(const PrimitiveState& s, const PhysParams& p);

/// Local Froude number U / ã.
double froude(const PrimitiveState& s, const PhysParams& p);

/// Froude number of the equilibrium (h0, U0 = sqrt(g^ h0 / C_f), 0, phi0):
/// sqrt(g^ / (C_f (g' + 3 h0 phi0))).
double froude_endstate(double h0, double phi0, const PhysParams& p);

namespace kernel {

// Unchecked, allocation-free forms used inside the finite-volume loops.
// Callers guarantee q[0] > 0.

inline double velocity(const Vec4& q) noexcept { return q[1] / q[0]; }

inline double total_enstrophy(const Vec4& q, double g_perp) noexcept {
  const double h = q[0];
  const double u = q[1] / h;
  const double e = q[2] / h - 0.5 * u * u;
  return (2.0 * e - g_perp * h) / (h * h);
}

inline double pressure(const Vec4& q, double g_perp) noexcept {
  const double h = q[0];
  return 0.5 * g_perp * h * h + total_enstrophy(q, g_perp) * h * h * h;
}

inline double sound_speed_sq(double h, double s_total, double g_perp) noexcept {
  return g_perp * h + 3.0 * s_total * h * h;
}

inline Vec4 flux(const Vec4& q, double g_perp) noexcept {
  const double h = q[0];
  const double u = q[1] / h;
  const double p = pressure(q, g_perp);
  return {q[1], q[1] * u + p, u * (q[2] + p), q[3] * u};
}

inline double friction_coefficient(double phi_large, double phi_small, double c_f,
                                   double c_t) noexcept {
  const double s = phi_large + phi_small;
  if (!(s > 0.0)) return c_f;
  return (c_f * phi_small + c_t * phi_large) / s;
}

inline Vec4 source(const Vec4& q, const PhysParams& p) noexcept {
  const double h = q[0];
  const double u = q[1] / h;
  const double phi_small = q[3] / h;
  const double phi_large = total_enstrophy(q, p.g_perp) - phi_small;
  const double c = friction_coefficient(phi_large, phi_small, p.c_f, p.c_t);
  const double drive = p.g_parallel * h;
  return {0.0, drive - c * std::abs(u) * u, (drive - p.c_f * u * std::abs(u)) * u, 0.0};
}

}  // namespace kernel

}  // namespace rgsw
