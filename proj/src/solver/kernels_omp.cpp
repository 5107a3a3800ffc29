#include "kernel_common.hpp"

namespace rgsw::kernels::omp {

double max_speed(const std::vector<Vec4>& cells, const PhysParams& p) {
  double m = 0.0;
  const auto n = static_cast<long>(cells.size());
#pragma omp parallel for reduction(max : m) schedule(static)
  for (long i = 0; i < n; ++i) m = std::max(m, detail::cell_speed(cells[i], p.g_perp));
  return m;
}

void hyperbolic_rhs(const std::vector<Vec4>& cells, const Grid1D& grid, const PhysParams& p,
                    FluxKind flux, Workspace& ws, std::vector<Vec4>& rhs) {
  const auto n = static_cast<long>(cells.size());
  const auto g = static_cast<long>(Grid1D::ghost);
  fill_ghosts(cells, grid.bc, ws.padded);
  const auto np = static_cast<long>(ws.padded.size());
  ws.prim.resize(np);
  ws.slope.resize(np);
  ws.face_flux.resize(n + 1);
  rhs.resize(n);
  const double inv_dx = 1.0 / grid.dx();

#pragma omp parallel
  {
#pragma omp for schedule(static)
    for (long j = 0; j < np; ++j) ws.prim[j] = detail::primitive(ws.padded[j], p.g_perp);
#pragma omp for schedule(static)
    for (long j = 0; j < np; ++j)
      ws.slope[j] = (j == 0 || j == np - 1)
                        ? Vec4{}
                        : detail::limited_slope(ws.prim[j - 1], ws.prim[j], ws.prim[j + 1]);
#pragma omp for schedule(static)
    for (long f = 0; f <= n; ++f)
      ws.face_flux[f] = detail::face_flux(ws.prim[g - 1 + f], ws.slope[g - 1 + f],
                                          ws.prim[g + f], ws.slope[g + f], p, flux);
#pragma omp for schedule(static)
    for (long i = 0; i < n; ++i)
      for (int k = 0; k < 4; ++k)
        rhs[i][k] = -(ws.face_flux[i + 1][k] - ws.face_flux[i][k]) * inv_dx;
  }
}

void source_half_step(std::vector<Vec4>& cells, double dt, const PhysParams& p,
                      const SolverOptions& opt) {
  const auto n = static_cast<long>(cells.size());
  double stiff = 0.0;
#pragma omp parallel for reduction(max : stiff) schedule(static)
  for (long i = 0; i < n; ++i)
    if (cells[i][0] > 100.0 * opt.h_floor)
      stiff = std::max(stiff, detail::source_stiffness(cells[i], dt, p));
  if (stiff > opt.stiffness_limit)
    throw Error(Errc::StiffSource, "friction half step has stiffness " + std::to_string(stiff) +
                                       " > " + std::to_string(opt.stiffness_limit));
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) cells[i] = detail::source_half(cells[i], dt, p);
}

FloorStats apply_floor(std::vector<Vec4>& cells, double h_floor, double dx, double g_perp) {
  const auto n = static_cast<long>(cells.size());
  bool clean = true;
#pragma omp parallel for reduction(&& : clean) schedule(static)
  for (long i = 0; i < n; ++i) clean = clean && cells[i][0] >= h_floor;
  // Rare path kept serial so the accounting sums in a fixed order.
  if (clean) return {};
  return serial::apply_floor(cells, h_floor, dx, g_perp);
}

}  // namespace rgsw::kernels::omp
