#include "rgsw/grid.hpp"

#include <algorithm>
#include <cmath>

namespace rgsw {

BoundaryCondition boundary_from_string(const std::string& name) {
  if (name == "outflow") return BoundaryCondition::outflow;
  if (name == "periodic") return BoundaryCondition::periodic;
  throw Error(Errc::InvalidParameter, "unknown boundary condition '" + name + "'");
}

std::string to_string(BoundaryCondition bc) {
  return bc == BoundaryCondition::periodic ? "periodic" : "outflow";
}

Grid1D::Grid1D(double x_lo_, double x_hi_, std::size_t n_cells_, BoundaryCondition bc_)
    : x_lo(x_lo_), x_hi(x_hi_), n_cells(n_cells_), bc(bc_) {
  if (!std::isfinite(x_lo) || !std::isfinite(x_hi) || !(x_hi > x_lo))
    throw Error(Errc::InvalidParameter, "grid needs x_lo < x_hi");
  if (n_cells < 8) throw Error(Errc::InvalidParameter, "grid needs at least 8 cells");
}

std::vector<double> Grid1D::centers() const {
  std::vector<double> out(n_cells);
  for (std::size_t i = 0; i < n_cells; ++i) out[i] = cell_center(i);
  return out;
}

Diagnostics compute_diagnostics(const std::vector<Vec4>& cells, const Grid1D& grid,
                                const PhysParams& p) {
  Diagnostics d;
  const double dx = grid.dx();
  d.min_h = cells.empty() ? 0.0 : cells.front()[0];
  for (const auto& q : cells) {
    d.mass += q[0] * dx;
    d.phi_content += q[3] * dx;
    d.min_h = std::min(d.min_h, q[0]);
    d.max_abs_u = std::max(d.max_abs_u, std::abs(q[1] / q[0]));
    const double big = kernel::total_enstrophy(q, p.g_perp) - q[3] / q[0];
    d.max_abs_phi_large = std::max(d.max_abs_phi_large, std::abs(big));
  }
  return d;
}

}  // namespace rgsw
