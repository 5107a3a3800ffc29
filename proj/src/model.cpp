#include "rgsw/model.hpp"

#include <string>

namespace rgsw {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidParameter: return "InvalidParameter";
    case Errc::NonPositiveHeight: return "NonPositiveHeight";
    case Errc::ImaginarySoundSpeed: return "ImaginarySoundSpeed";
    case Errc::ZeroEntropy: return "ZeroEntropy";
    case Errc::NegativeEnstrophy: return "NegativeEnstrophy";
    case Errc::NonEquilibriumEndstate: return "NonEquilibriumEndstate";
    case Errc::NoPositiveRoot: return "NoPositiveRoot";
    case Errc::IntegrationFailure: return "IntegrationFailure";
    case Errc::NonZeroMean: return "NonZeroMean";
    case Errc::GridTooCoarse: return "GridTooCoarse";
    case Errc::BranchCut: return "BranchCut";
    case Errc::NotAsymptoticallyConstant: return "NotAsymptoticallyConstant";
    case Errc::SplittingFailure: return "SplittingFailure";
    case Errc::OverflowGuard: return "OverflowGuard";
    case Errc::ContourThroughZero: return "ContourThroughZero";
    case Errc::LambdaZero: return "LambdaZero";
    case Errc::ReductionViolation: return "ReductionViolation";
    case Errc::CFLViolation: return "CFLViolation";
    case Errc::StiffSource: return "StiffSource";
    case Errc::BlowUp: return "BlowUp";
    case Errc::NoTransitionFound: return "NoTransitionFound";
    case Errc::Config: return "Config";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

namespace {

void require_height(double h) {
  if (!(h > 0.0) || !std::isfinite(h))
    throw Error(Errc::NonPositiveHeight, "h = " + std::to_string(h));
}

}  // namespace

PhysParams::PhysParams(double g_perp_, double g_parallel_, double c_f_, double c_t_)
    : g_perp(g_perp_), g_parallel(g_parallel_), c_f(c_f_), c_t(c_t_) {
  if (!(g_perp > 0.0) || !(g_parallel > 0.0) || !(c_f > 0.0) || !(c_t >= 0.0) ||
      !std::isfinite(g_perp) || !std::isfinite(g_parallel) || !std::isfinite(c_f) ||
      !std::isfinite(c_t)) {
    throw Error(Errc::InvalidParameter,
                "need g_perp > 0, g_parallel > 0, c_f > 0, c_t >= 0");
  }
}

PhysParams PhysParams::from_inclination(double g, double theta, double c_f, double c_t) {
  return PhysParams(g * std::cos(theta), g * std::sin(theta), c_f, c_t);
}

PrimitiveState::PrimitiveState(double h_, double u_, double phi_large_, double phi_small_)
    : h(h_), u(u_), phi_large(phi_large_), phi_small(phi_small_) {
  require_height(h);
  if (!std::isfinite(u) || !std::isfinite(phi_large) || !std::isfinite(phi_small))
    throw Error(Errc::InvalidParameter, "non-finite primitive state");
}

ConservedState::ConservedState(const Vec4& q_) : q(q_) {
  require_height(q[0]);
  for (double v : q)
    if (!std::isfinite(v)) throw Error(Errc::InvalidParameter, "non-finite conserved state");
}

ConservedState to_conserved(const PrimitiveState& s, const PhysParams& p) {
  const double e = 0.5 * (p.g_perp * s.h + (s.phi_large + s.phi_small) * s.h * s.h);
  const double energy = 0.5 * s.u * s.u + e;
  return ConservedState({s.h, s.h * s.u, s.h * energy, s.h * s.phi_small});
}

PrimitiveState to_primitive(const ConservedState& q, const PhysParams& p) {
  const double h = q.q[0];
  require_height(h);
  const double u = q.q[1] / h;
  const double e = q.q[2] / h - 0.5 * u * u;
  const double phi_small = q.q[3] / h;
  const double phi_large = (2.0 * e - p.g_perp * h) / (h * h) - phi_small;
  return PrimitiveState(h, u, phi_large, phi_small);
}

double pressure(const PrimitiveState& s, const PhysParams& p) {
  return 0.5 * p.g_perp * s.h * s.h + (s.phi_large + s.phi_small) * s.h * s.h * s.h;
}

double pressure_from_energy(double h, double e, const PhysParams& p) {
  return 2.0 * h * e - 0.5 * p.g_perp * h * h;
}

double friction_coefficient(double phi_large, double phi_small, const PhysParams& p) noexcept {
  return kernel::friction_coefficient(phi_large, phi_small, p.c_f, p.c_t);
}

Vec4 flux(const ConservedState& q, const PhysParams& p) {
  require_height(q.q[0]);
  return kernel::flux(q.q, p.g_perp);
}

Vec4 source(const ConservedState& q, const PhysParams& p) {
  require_height(q.q[0]);
  return kernel::source(q.q, p);
}

double sound_speed(const PrimitiveState& s, const PhysParams& p) {
  const double r = kernel::sound_speed_sq(s.h, s.phi_large + s.phi_small, p.g_perp);
  if (!(r > 0.0)) throw Error(Errc::ImaginarySoundSpeed, "g'h + 3(Phi+phi)h^2 <= 0");
  return std::sqrt(r);
}

double sound_speed_from_energy(double h, double e, const PhysParams& p) {
  const double r = 6.0 * e - 2.0 * p.g_perp * h;
  if (!(r > 0.0)) throw Error(Errc::ImaginarySoundSpeed, "6e - 2g'h <= 0");
  return std::sqrt(r);
}

std::array<double, 4> characteristics(const PrimitiveState& s, const PhysParams& p) {
  const double a = sound_speed(s, p);
  return {s.u - a, s.u, s.u, s.u + a};
}

double entropy(const PrimitiveState& s) noexcept { return s.phi_large + s.phi_small; }

double entropy_production(const PrimitiveState& s, const PhysParams& p) {
  const double S = entropy(s);
  if (S == 0.0) throw Error(Errc::ZeroEntropy, "S = Phi + phi = 0");
  const double au = std::abs(s.u);
  return (1.0 - s.phi_small / S) * (p.c_t - p.c_f) * au * au * au / (s.h * s.h * s.h);
}

double froude(const PrimitiveState& s, const PhysParams& p) { return s.u / sound_speed(s, p); }

double froude_endstate(double h0, double phi0, const PhysParams& p) {
  require_height(h0);
  return std::sqrt(p.g_parallel / (p.c_f * (p.g_perp + 3.0 * h0 * phi0)));
}

}  // namespace rgsw
