#include <algorithm>
#include <cmath>

#include "rgsw/spectral.hpp"

namespace rgsw {

namespace {

double endstate_speed(double h0, const PhysParams& p) {
  if (!(h0 > 0.0)) throw Error(Errc::NonPositiveHeight, "h0 must be positive");
  return std::sqrt(p.g_parallel * h0 / p.c_f);
}

}  // namespace

std::array<cplx, 2> dispersion_roots(double xi, double h0, double phi0, const PhysParams& p) {
  const double c = endstate_speed(h0, p);
  const double sigma = p.c_f * c / h0;
  const double k = p.g_perp + 3 * h0 * phi0;
  const cplx m(sigma * sigma - xi * xi * h0 * k, -xi * p.g_parallel);
  const cplx s = std::sqrt(m);
  return {-sigma + s, -sigma - s};
}

bool hydro_stable(double h0, double phi0, const PhysParams& p) {
  const double c = endstate_speed(h0, p);
  return c * c < 4 * h0 * (p.g_perp + 3 * h0 * phi0);
}

SpatialEigenvalues spatial_eigenvalues(cplx lambda, double phi0, double h0, const PhysParams& p,
                                       bool continuation) {
  const double c = endstate_speed(h0, p);
  const double k = p.g_perp + 3 * h0 * phi0;
  const cplx r = p.g_parallel * p.g_parallel + 4 * k * (2 * p.c_f * c * lambda + h0 * lambda * lambda);
  const bool on_cut = r.real() < 0 && std::abs(r.imag()) <= 1e-14 * std::abs(r);
  cplx s;
  if (on_cut) {
    if (!continuation)
      throw Error(Errc::BranchCut, "radicand is negative real at lambda = (" +
                                       std::to_string(lambda.real()) + ", " +
                                       std::to_string(lambda.imag()) + ")");
    s = cplx(0.0, std::sqrt(-r.real()));
  } else {
    s = std::sqrt(r);
  }
  const double d = 2 * h0 * k;
  return {(p.g_parallel + s) / d, (p.g_parallel - s) / d, on_cut};
}

std::string to_string(StabilityMode mode) {
  switch (mode) {
    case StabilityMode::standard: return "standard";
    case StabilityMode::convective: return "convective";
    case StabilityMode::extended_convective: return "extended_convective";
  }
  return "standard";
}

StabilityMode stability_mode_from_string(const std::string& name) {
  if (name == "standard") return StabilityMode::standard;
  if (name == "convective") return StabilityMode::convective;
  if (name == "extended_convective" || name == "extended-convective")
    return StabilityMode::extended_convective;
  throw Error(Errc::InvalidParameter, "unknown stability mode '" + name + "'");
}

StabilityReport stability_verdict(const WaveProfile& profile, StabilityMode mode) {
  if (profile.periodic())
    throw Error(Errc::NotAsymptoticallyConstant, "verdicts need asymptotically constant profiles");
  const auto& p = profile.params();
  const double h0 = profile.h0();
  const double c = profile.c();

  StabilityReport r{};
  r.mode = mode;
  r.cf_ct_ok = p.c_f >= p.c_t;
  r.froude_minus = froude_endstate(h0, profile.phi_minus(), p);
  r.froude_plus = froude_endstate(h0, profile.phi_plus(), p);
  r.discontinuous = profile.has_jumps();

  bool strong = false;
  switch (mode) {
    case StabilityMode::standard:
      r.stable = r.cf_ct_ok && r.froude_plus <= 2 && r.froude_minus <= 2;
      strong = r.cf_ct_ok && r.froude_plus < 2 && r.froude_minus < 2;
      break;
    case StabilityMode::convective:
      r.stable = r.cf_ct_ok && r.froude_plus <= 2;
      strong = r.cf_ct_ok && r.froude_plus < 2;
      break;
    case StabilityMode::extended_convective:
      r.stable = r.cf_ct_ok;
      strong = r.cf_ct_ok;
      break;
  }
  if (!r.discontinuous) r.strongly_stable = strong;

  auto essential = [&](double h, double phi) {
    return -2 * (p.c_f - p.c_t) * c * c * c / (h * h * h * phi);
  };
  r.essential_lo = r.essential_hi = essential(h0, profile.phi_minus());
  auto widen = [&](double v) {
    r.essential_lo = std::min(r.essential_lo, v);
    r.essential_hi = std::max(r.essential_hi, v);
  };
  widen(essential(h0, profile.phi_plus()));
  for (std::size_t i = 0; i < profile.size(); ++i) widen(essential(profile.h()[i], profile.phi()[i]));

  r.f1_minus = -p.g_parallel / (h0 * (p.g_perp + 3 * h0 * profile.phi_minus()));
  r.f1_plus = -p.g_parallel / (h0 * (p.g_perp + 3 * h0 * profile.phi_plus()));
  r.theta_minus = 0.5 * r.f1_minus;
  r.theta_plus = 0.5 * r.f1_plus;
  return r;
}

}  // namespace rgsw
