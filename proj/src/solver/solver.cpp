#include <algorithm>
#include <cmath>
#include <cstdio>

#include "kernel_common.hpp"

namespace rgsw {

namespace {

struct KernelSet {
  double (*max_speed)(const std::vector<Vec4>&, const PhysParams&);
  void (*hyperbolic_rhs)(const std::vector<Vec4>&, const Grid1D&, const PhysParams&, FluxKind,
                         kernels::Workspace&, std::vector<Vec4>&);
  void (*source_half_step)(std::vector<Vec4>&, double, const PhysParams&, const SolverOptions&);
  kernels::FloorStats (*apply_floor)(std::vector<Vec4>&, double, double, double);
};

KernelSet kernel_set(Parallelism par) {
  if (par == Parallelism::openmp)
    return {kernels::omp::max_speed, kernels::omp::hyperbolic_rhs, kernels::omp::source_half_step,
            kernels::omp::apply_floor};
  return {kernels::serial::max_speed, kernels::serial::hyperbolic_rhs,
          kernels::serial::source_half_step, kernels::serial::apply_floor};
}

void floor_into(const KernelSet& k, std::vector<Vec4>& cells, const SolverOptions& opt, double dx, double g_perp,
                Diagnostics& diag) {
  const auto st = k.apply_floor(cells, opt.h_floor, dx, g_perp);
  diag.floor_breaches += st.breaches;
  diag.floor_mass_added += st.mass_added;
}

void check_options(const SolverOptions& opt) {
  if (!(opt.cfl > 0.0 && opt.cfl <= 1.0))
    throw Error(Errc::InvalidParameter, "CFL number must lie in (0, 1]");
  if (!(opt.h_floor > 0.0)) throw Error(Errc::InvalidParameter, "height floor must be positive");
}

}  // namespace

double stable_dt(const std::vector<Vec4>& cells, const Grid1D& grid, const PhysParams& p,
                 const SolverOptions& opt) {
  const double s = kernel_set(opt.parallelism).max_speed(cells, p);
  if (!std::isfinite(s)) throw Error(Errc::BlowUp, "non-finite wave speed");
  if (!(s > 0.0)) throw Error(Errc::CFLViolation, "zero wave speed, step size undefined");
  return opt.cfl * grid.dx() / s;
}

void step(std::vector<Vec4>& cells, const Grid1D& grid, double dt, const PhysParams& p,
          const SolverOptions& opt, kernels::Workspace& ws, Diagnostics& diag) {
  if (!(dt > 0.0)) throw Error(Errc::InvalidParameter, "time step must be positive");
  const KernelSet k = kernel_set(opt.parallelism);
  const double dx = grid.dx();
  const double speed = k.max_speed(cells, p);
  if (!std::isfinite(speed)) throw Error(Errc::BlowUp, "non-finite wave speed");
  if (dt * speed > opt.cfl * dx * (1.0 + 1e-12)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "dt = %.6g exceeds cfl * dx / max speed = %.6g", dt,
                  opt.cfl * dx / speed);
    throw Error(Errc::CFLViolation, buf);
  }

  k.source_half_step(cells, dt, p, opt);
  floor_into(k, cells, opt, dx, p.g_perp, diag);

  auto& stage = ws.stage;
  auto& rhs = ws.rhs;
  k.hyperbolic_rhs(cells, grid, p, opt.flux, ws, rhs);
  stage.resize(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (int c = 0; c < 4; ++c) stage[i][c] = cells[i][c] + dt * rhs[i][c];
  floor_into(k, stage, opt, dx, p.g_perp, diag);
  k.hyperbolic_rhs(stage, grid, p, opt.flux, ws, rhs);
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (int c = 0; c < 4; ++c)
      cells[i][c] = 0.5 * cells[i][c] + 0.5 * (stage[i][c] + dt * rhs[i][c]);
  floor_into(k, cells, opt, dx, p.g_perp, diag);

  k.source_half_step(cells, dt, p, opt);
  floor_into(k, cells, opt, dx, p.g_perp, diag);

  for (const auto& q : cells) {
    const double u = q[1] / q[0];
    if (!std::isfinite(u) || !std::isfinite(q[2]) || !std::isfinite(q[3]) ||
        std::abs(u) > opt.blowup_velocity)
      throw Error(Errc::BlowUp, "velocity left the admissible range");
  }
}

Simulation::Simulation(const SimConfig& config) : config_(config) {
  check_options(config_.options);
  cells_ = build_initial(config_.initial, config_.grid, config_.params);
}

double Simulation::advance(double t_stop) {
  if (!(t_stop > t_)) return 0.0;
  double dt = stable_dt(cells_, config_.grid, config_.params, config_.options);
  const bool clip = t_ + dt >= t_stop;
  if (clip) dt = t_stop - t_;
  step(cells_, config_.grid, dt, config_.params, config_.options, ws_, floor_);
  t_ = clip ? t_stop : t_ + dt;
  ++steps_;
  return dt;
}

void Simulation::advance_steps(std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double dt = stable_dt(cells_, config_.grid, config_.params, config_.options);
    step(cells_, config_.grid, dt, config_.params, config_.options, ws_, floor_);
    t_ += dt;
    ++steps_;
  }
}

Snapshot Simulation::snapshot() const {
  Snapshot s;
  s.t = t_;
  s.cells = cells_;
  s.diagnostics = compute_diagnostics(cells_, config_.grid, config_.params);
  s.diagnostics.floor_breaches = floor_.floor_breaches;
  s.diagnostics.floor_mass_added = floor_.floor_mass_added;
  return s;
}

std::vector<Snapshot> run(const SimConfig& config) {
  if (!(config.t_end >= 0.0)) throw Error(Errc::InvalidParameter, "end time must be >= 0");
  std::vector<double> times = config.snapshots;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0 && times[i] <= config.t_end))
      throw Error(Errc::InvalidParameter, "snapshot time outside [0, t_end]");
    if (i > 0 && times[i] < times[i - 1])
      throw Error(Errc::InvalidParameter, "snapshot times must be sorted");
  }
  times.push_back(config.t_end);
  times.erase(std::unique(times.begin(), times.end()), times.end());

  Simulation sim(config);
  std::vector<Snapshot> out;
  for (double target : times) {
    while (sim.time() < target) sim.advance(target);
    out.push_back(sim.snapshot());
  }
  return out;
}

}  // namespace rgsw
