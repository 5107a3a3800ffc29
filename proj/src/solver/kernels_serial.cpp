#include "kernel_common.hpp"

namespace rgsw::kernels::serial {

double max_speed(const std::vector<Vec4>& cells, const PhysParams& p) {
  double m = 0.0;
  for (const auto& q : cells) m = std::max(m, detail::cell_speed(q, p.g_perp));
  return m;
}

void hyperbolic_rhs(const std::vector<Vec4>& cells, const Grid1D& grid, const PhysParams& p,
                    FluxKind flux, Workspace& ws, std::vector<Vec4>& rhs) {
  const std::size_t n = cells.size();
  const std::size_t g = Grid1D::ghost;
  fill_ghosts(cells, grid.bc, ws.padded);
  const std::size_t np = ws.padded.size();
  ws.prim.resize(np);
  ws.slope.resize(np);
  ws.face_flux.resize(n + 1);
  rhs.resize(n);

  for (std::size_t j = 0; j < np; ++j) ws.prim[j] = detail::primitive(ws.padded[j], p.g_perp);
  ws.slope[0] = ws.slope[np - 1] = Vec4{};
  for (std::size_t j = 1; j + 1 < np; ++j)
    ws.slope[j] = detail::limited_slope(ws.prim[j - 1], ws.prim[j], ws.prim[j + 1]);
  for (std::size_t f = 0; f <= n; ++f)
    ws.face_flux[f] = detail::face_flux(ws.prim[g - 1 + f], ws.slope[g - 1 + f], ws.prim[g + f],
                                        ws.slope[g + f], p, flux);
  const double inv_dx = 1.0 / grid.dx();
  for (std::size_t i = 0; i < n; ++i)
    for (int k = 0; k < 4; ++k) rhs[i][k] = -(ws.face_flux[i + 1][k] - ws.face_flux[i][k]) * inv_dx;
}

void source_half_step(std::vector<Vec4>& cells, double dt, const PhysParams& p,
                      const SolverOptions& opt) {
  double stiff = 0.0;
  for (const auto& q : cells)
    if (q[0] > 100.0 * opt.h_floor) stiff = std::max(stiff, detail::source_stiffness(q, dt, p));
  if (stiff > opt.stiffness_limit)
    throw Error(Errc::StiffSource, "friction half step has stiffness " + std::to_string(stiff) +
                                       " > " + std::to_string(opt.stiffness_limit));
  for (auto& q : cells) q = detail::source_half(q, dt, p);
}

FloorStats apply_floor(std::vector<Vec4>& cells, double h_floor, double dx, double g_perp) {
  FloorStats st;
  for (auto& q : cells) {
    if (q[0] < h_floor || !std::isfinite(q[0])) {
      ++st.breaches;
      if (std::isfinite(q[0])) st.mass_added += (h_floor - q[0]) * dx;
      q = Vec4{h_floor, 0.0, 0.5 * g_perp * h_floor * h_floor, 0.0};
    }
  }
  return st;
}

}  // namespace rgsw::kernels::serial
