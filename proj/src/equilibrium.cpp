#include "rgsw/equilibrium.hpp"

#include <cmath>
#include <string>

namespace rgsw {

namespace {

void require_height(double h) {
  if (!(h > 0.0) || !std::isfinite(h))
    throw Error(Errc::NonPositiveHeight, "h = " + std::to_string(h));
}

}  // namespace

double q_of_h(double h, const PhysParams& p) {
  require_height(h);
  return std::sqrt(p.g_parallel * h * h * h / p.c_f);
}

double u_of_h(double h, const PhysParams& p) {
  require_height(h);
  return std::sqrt(p.g_parallel * h / p.c_f);
}

double alpha_star(double h, const PhysParams& p) { return 1.5 * u_of_h(h, p); }

EquilibriumRiemannSolution riemann_solve(const EquilibriumState& left,
                                         const EquilibriumState& right, const PhysParams& p) {
  require_height(left.h);
  require_height(right.h);

  EquilibriumRiemannSolution sol{};
  sol.left = left;
  sol.right = right;
  sol.intermediate = {left.h, right.phi};
  sol.contact_speed = u_of_h(left.h, p);
  sol.g_parallel_over_cf = p.g_parallel / p.c_f;

  if (left.h > right.h) {
    const double s = (q_of_h(right.h, p) - q_of_h(left.h, p)) / (right.h - left.h);
    sol.second_wave = ShockWave{s};
  } else if (left.h < right.h) {
    sol.second_wave = RarefactionWave{alpha_star(left.h, p), alpha_star(right.h, p)};
  } else {
    sol.second_wave = std::monostate{};
  }
  return sol;
}

EquilibriumState EquilibriumRiemannSolution::sample(double xi) const {
  if (xi < contact_speed) return left;
  if (const auto* shock = std::get_if<ShockWave>(&second_wave))
    return xi < shock->speed ? intermediate : right;
  if (const auto* fan = std::get_if<RarefactionWave>(&second_wave)) {
    if (xi < fan->left_edge_speed) return intermediate;
    if (xi >= fan->right_edge_speed) return right;
    // alpha_*(h) = 1.5 sqrt(g^ h / C_f) = xi
    const double r = xi / 1.5;
    return {r * r / g_parallel_over_cf, right.phi};
  }
  return {left.h, right.phi};
}

bool subcharacteristic_check(double h0, double phi0, const PhysParams& p) {
  const double u0 = u_of_h(h0, p);
  const auto chars = characteristics(PrimitiveState(h0, u0, 0.0, phi0), p);
  const double a = alpha_star(h0, p);
  return chars[0] < a && a < chars[3];
}

}  // namespace rgsw
