#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rgsw/model.hpp"

namespace rgsw {

enum class BoundaryCondition { outflow, periodic };

BoundaryCondition boundary_from_string(const std::string& name);
std::string to_string(BoundaryCondition bc);

/// Uniform cell-centred mesh on [x_lo, x_hi] with two ghost cells per side.
struct Grid1D {
  static constexpr std::size_t ghost = 2;

  double x_lo;
  double x_hi;
  std::size_t n_cells;
  BoundaryCondition bc;

  Grid1D(double x_lo_, double x_hi_, std::size_t n_cells_,
         BoundaryCondition bc_ = BoundaryCondition::outflow);

  double dx() const noexcept { return (x_hi - x_lo) / static_cast<double>(n_cells); }
  double cell_center(std::size_t i) const noexcept {
    return x_lo + (static_cast<double>(i) + 0.5) * dx();
  }
  std::vector<double> centers() const;
};

struct Diagnostics {
  double mass = 0.0;        ///< sum h dx
  double phi_content = 0.0; ///< sum h phi dx
  double min_h = 0.0;
  double max_abs_u = 0.0;
  double max_abs_phi_large = 0.0;  ///< ||Phi||_inf
  std::size_t floor_breaches = 0;  ///< cumulative cells lifted to h_floor
  double floor_mass_added = 0.0;   ///< cumulative mass injected by the floor
};

/// Cell averages of the conserved variables at one instant.
struct Snapshot {
  double t = 0.0;
  std::vector<Vec4> cells;
  Diagnostics diagnostics;
};

Diagnostics compute_diagnostics(const std::vector<Vec4>& cells, const Grid1D& grid,
                                const PhysParams& p);

}  // namespace rgsw
