#include <algorithm>
#include <cmath>

#include "rgsw/profiles.hpp"
#include "rgsw/solver.hpp"

namespace rgsw {

namespace {

double bump_value(const BumpSpec& b, double x) {
  if (b.amplitude == 0.0) return 0.0;
  return delta::bump(b.amplitude, b.center, b.radius)(x);
}

std::size_t piece(const std::vector<double>& breaks, double x) {
  return static_cast<std::size_t>(std::count_if(breaks.begin(), breaks.end(),
                                                [&](double b) { return x > b; }));
}

struct Builder {
  const Grid1D& grid;
  const PhysParams& p;

  std::vector<Vec4> operator()(const PiecewiseInit& in) const {
    if (in.hu_values.size() != in.hu_breaks.size() + 1 ||
        in.phi_values.size() != in.phi_breaks.size() + 1)
      throw Error(Errc::InvalidParameter, "piecewise data needs one more value than breaks");
    if (!std::is_sorted(in.hu_breaks.begin(), in.hu_breaks.end()) ||
        !std::is_sorted(in.phi_breaks.begin(), in.phi_breaks.end()))
      throw Error(Errc::InvalidParameter, "breaks must be sorted");
    std::vector<Vec4> cells(grid.n_cells);
    for (std::size_t i = 0; i < grid.n_cells; ++i) {
      const double x = grid.cell_center(i);
      const auto [h, u] = in.hu_values[piece(in.hu_breaks, x)];
      const double phi = in.phi_values[piece(in.phi_breaks, x)];
      cells[i] = to_conserved(PrimitiveState(h, u, in.phi_large, phi), p).q;
    }
    return cells;
  }

  std::vector<Vec4> operator()(const PerturbedProfileInit& in) const {
    const double c = equilibrium_speed(in.h0, p);
    const double kappa = 0.5 * p.g_perp * in.h0 * in.h0 + in.phi_minus * in.h0 * in.h0 * in.h0;
    auto spec = ProfileSpec::sampled(in.h0, c, kappa, grid.centers(),
                                     [&](double x) { return bump_value(in.delta, x); });
    const auto prof = construct_from_delta(spec, p);
    std::vector<Vec4> cells(grid.n_cells);
    for (std::size_t i = 0; i < grid.n_cells; ++i) {
      const double x = prof.x()[i];
      const PrimitiveState s(prof.h()[i] + bump_value(in.h_perturbation, x), c,
                             bump_value(in.phi_large_perturbation, x),
                             prof.phi()[i] + bump_value(in.phi_perturbation, x));
      cells[i] = to_conserved(s, p).q;
    }
    return cells;
  }

  std::vector<Vec4> operator()(const PeriodicSineInit& in) const {
    std::vector<Vec4> cells(grid.n_cells);
    for (std::size_t i = 0; i < grid.n_cells; ++i) {
      const double x = grid.cell_center(i);
      const double phi = in.phi_mean + in.phi_amplitude * std::sin(in.wavenumber * x);
      cells[i] = to_conserved(PrimitiveState(in.h0, in.u0, 0.0, phi), p).q;
    }
    return cells;
  }

  std::vector<Vec4> operator()(const SampledInit& in) const {
    if (in.cells.size() != grid.n_cells)
      throw Error(Errc::InvalidParameter, "sampled data has " + std::to_string(in.cells.size()) +
                                              " cells, grid has " + std::to_string(grid.n_cells));
    std::vector<Vec4> cells(grid.n_cells);
    for (std::size_t i = 0; i < grid.n_cells; ++i) cells[i] = to_conserved(in.cells[i], p).q;
    return cells;
  }
};

}  // namespace

std::vector<Vec4> build_initial(const InitialCondition& init, const Grid1D& grid,
                                const PhysParams& p) {
  return std::visit(Builder{grid, p}, init);
}

}  // namespace rgsw
