#pragma once

// Formal equilibrium system obtained by relaxing the source terms to zero:
//   h_t + q(h)_x = 0,   (h phi)_t + (h u(h) phi)_x = 0,
// with q(h) = sqrt(g^ h^3 / C_f) and u(h) = sqrt(g^ h / C_f).

#include <variant>

#include "rgsw/model.hpp"

namespace rgsw {

struct EquilibriumState {
  double h;
  double phi;
};

struct ShockWave {
  double speed;
};

struct RarefactionWave {
  double left_edge_speed;
  double right_edge_speed;
};

/// `std::monostate` marks the degenerate h_L == h_R case (contact only).
using SecondWave = std::variant<std::monostate, ShockWave, RarefactionWave>;

/// Contact in phi at u(h_L), then a shock or rarefaction in h with phi = phi_R.
struct EquilibriumRiemannSolution {
  double contact_speed;
  SecondWave second_wave;
  EquilibriumState left;
  EquilibriumState intermediate;  ///< (h_L, phi_R)
  EquilibriumState right;
  double g_parallel_over_cf;

  bool is_shock() const noexcept { return std::holds_alternative<ShockWave>(second_wave); }
  bool is_rarefaction() const noexcept {
    return std::holds_alternative<RarefactionWave>(second_wave);
  }

  /// Self-similar solution at x / t = xi. Inside a rarefaction the height is
  /// obtained by inverting alpha_*(h) = xi in closed form.
  EquilibriumState sample(double xi) const;
};

double q_of_h(double h, const PhysParams& p);
double u_of_h(double h, const PhysParams& p);
double alpha_star(double h, const PhysParams& p);

EquilibriumRiemannSolution riemann_solve(const EquilibriumState& left,
                                         const EquilibriumState& right, const PhysParams& p);

/// Whitham interlacing U0 - ã < alpha_* < U0 + ã at the equilibrium (h0, phi0).
bool subcharacteristic_check(double h0, double phi0, const PhysParams& p);

}  // namespace rgsw
