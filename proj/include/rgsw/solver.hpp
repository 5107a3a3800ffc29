#pragma once

// Finite-volume integrator for the 4x4 relaxation system: HLL (or HLLC)
// interface fluxes on minmod-limited primitive reconstructions, SSP-RK2 for
// the hyperbolic part, and Strang splitting with explicit-midpoint half steps
// for the friction sources.

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rgsw/grid.hpp"
#include "rgsw/model.hpp"

namespace rgsw {

enum class FluxKind { hll, hllc };
enum class Parallelism { serial, openmp };

FluxKind flux_kind_from_string(const std::string& name);
std::string to_string(FluxKind kind);

struct SolverOptions {
  FluxKind flux = FluxKind::hll;
  double cfl = 0.45;
  double h_floor = 1e-10;
  Parallelism parallelism = Parallelism::serial;
  double blowup_velocity = 1e6;
  /// Largest admissible dt/2 * 2 C |U| / h in a source half step.
  double stiffness_limit = 1.0;
};

Vec4 hll_flux(const Vec4& q_left, const Vec4& q_right, const PhysParams& p);
Vec4 hllc_flux(const Vec4& q_left, const Vec4& q_right, const PhysParams& p);

namespace kernels {

/// Scratch arrays reused across steps; sized on first use.
struct Workspace {
  std::vector<Vec4> padded;  ///< cells plus ghost layers, conserved
  std::vector<Vec4> prim;    ///< (h, U, Phi, phi) on the padded range
  std::vector<Vec4> slope;
  std::vector<Vec4> face_flux;
  std::vector<Vec4> stage;
  std::vector<Vec4> rhs;
};

struct FloorStats {
  std::size_t breaches = 0;
  double mass_added = 0.0;
};

void fill_ghosts(const std::vector<Vec4>& cells, BoundaryCondition bc, std::vector<Vec4>& padded);

// The serial and OpenMP variants perform identical arithmetic per element and
// produce bitwise-identical results.
namespace serial {
double max_speed(const std::vector<Vec4>& cells, const PhysParams& p);
void hyperbolic_rhs(const std::vector<Vec4>& cells, const Grid1D& grid, const PhysParams& p,
                    FluxKind flux, Workspace& ws, std::vector<Vec4>& rhs);
void source_half_step(std::vector<Vec4>& cells, double dt, const PhysParams& p,
                      const SolverOptions& opt);
FloorStats apply_floor(std::vector<Vec4>& cells, double h_floor, double dx, double g_perp);
}  // namespace serial

namespace omp {
double max_speed(const std::vector<Vec4>& cells, const PhysParams& p);
void hyperbolic_rhs(const std::vector<Vec4>& cells, const Grid1D& grid, const PhysParams& p,
                    FluxKind flux, Workspace& ws, std::vector<Vec4>& rhs);
void source_half_step(std::vector<Vec4>& cells, double dt, const PhysParams& p,
                      const SolverOptions& opt);
FloorStats apply_floor(std::vector<Vec4>& cells, double h_floor, double dx, double g_perp);
}  // namespace omp

}  // namespace kernels

/// Largest stable step, cfl * dx / max |U +- a|.
double stable_dt(const std::vector<Vec4>& cells, const Grid1D& grid, const PhysParams& p,
                 const SolverOptions& opt);

/// One Strang-split step of length dt, in place. Throws CFLViolation when dt
/// exceeds the CFL bound, StiffSource when the friction half step is too
/// stiff for the explicit update, BlowUp on runaway or non-finite states.
/// Floor activity is accumulated into `diag`.
void step(std::vector<Vec4>& cells, const Grid1D& grid, double dt, const PhysParams& p,
          const SolverOptions& opt, kernels::Workspace& ws, Diagnostics& diag);

// ---------------------------------------------------------------- initial data

/// Piecewise-constant data: (h, U) changes at `hu_breaks`, phi at `phi_breaks`.
struct PiecewiseInit {
  std::vector<double> hu_breaks;
  std::vector<std::pair<double, double>> hu_values;  ///< (h, U), one more than breaks
  std::vector<double> phi_breaks;
  std::vector<double> phi_values;
  double phi_large = 0.0;
};

/// A bump a * exp(-1 / (1 - ((x - center)/radius)^2)).
struct BumpSpec {
  double amplitude = 0.0;
  double center = 0.0;
  double radius = 1.0;
};

/// Smooth convective wave from a bump in h - h0, plus bump perturbations.
struct PerturbedProfileInit {
  double h0 = 1.0;
  double phi_minus = 1.0;  ///< fixes kappa = g' h0^2 / 2 + phi_minus h0^3
  BumpSpec delta;
  BumpSpec h_perturbation;
  BumpSpec phi_perturbation;
  BumpSpec phi_large_perturbation;
};

/// h = h0, U = u0, Phi = 0, phi = mean + amplitude sin(wavenumber x).
struct PeriodicSineInit {
  double h0 = 1.0;
  double u0 = 0.0;
  double phi_mean = 1.0;
  double phi_amplitude = 0.0;
  double wavenumber = 1.0;
};

/// Primitive states at the cell centres.
struct SampledInit {
  std::vector<PrimitiveState> cells;
};

using InitialCondition = std::variant<PiecewiseInit, PerturbedProfileInit, PeriodicSineInit, SampledInit>;

std::vector<Vec4> build_initial(const InitialCondition& init, const Grid1D& grid,
                                const PhysParams& p);

// ---------------------------------------------------------------- runs

struct SimConfig {
  PhysParams params;
  Grid1D grid;
  InitialCondition initial;
  double t_end = 0.0;
  std::vector<double> snapshots;  ///< sorted, within [0, t_end]; t_end is always added
  SolverOptions options;
};

class Simulation {
 public:
  explicit Simulation(const SimConfig& config);

  /// Advances by one CFL-limited step, clipped so as not to pass `t_stop`.
  double advance(double t_stop);
  /// Advances exactly `n` CFL-limited steps.
  void advance_steps(std::size_t n);

  double time() const noexcept { return t_; }
  std::size_t steps() const noexcept { return steps_; }
  const std::vector<Vec4>& cells() const noexcept { return cells_; }
  Snapshot snapshot() const;

 private:
  SimConfig config_;
  std::vector<Vec4> cells_;
  kernels::Workspace ws_;
  Diagnostics floor_;
  double t_ = 0.0;
  std::size_t steps_ = 0;
};

/// Snapshots at every requested time (hit exactly) and at t_end. A
/// zero-duration run returns the initial snapshot.
std::vector<Snapshot> run(const SimConfig& config);

// ---------------------------------------------------------------- measurement

enum class WaveKind { contact, shock };
enum class FrontSelector { steepest, leading };

struct MeasureOptions {
  std::optional<double> window_lo;
  std::optional<double> window_hi;
  FrontSelector selector = FrontSelector::steepest;
  double min_jump = 1e-6;  ///< smallest cell-to-cell change accepted as a front
};

/// Front location: the face between the two cells with the largest change in
/// phi (contact) or h (shock). `leading` takes the rightmost local maximum
/// that reaches half the largest change. Throws NoTransitionFound.
double measure_wave(const Snapshot& snap, const Grid1D& grid, WaveKind kind,
                    const MeasureOptions& opt = {});

/// Front speed from two snapshots by finite difference.
double wave_speed(const Snapshot& a, const Snapshot& b, const Grid1D& grid, WaveKind kind,
                  const MeasureOptions& opt = {});

/// Number of cell faces where |h_{i+1} - h_i| / dx exceeds `threshold`,
/// counting runs of adjacent faces once.
std::size_t count_fronts(const Snapshot& snap, const Grid1D& grid, double threshold,
                         std::optional<double> lo = {}, std::optional<double> hi = {});

// ---------------------------------------------------------------- output

/// Shortest decimal that reads back to exactly `t`.
std::string format_time(double t);

/// `x,h,U,Phi,phi` with 17 significant digits.
void write_snapshot_csv(const std::string& path, const Snapshot& snap, const Grid1D& grid,
                        const PhysParams& p);
void write_diagnostics_csv(const std::string& path, const std::vector<Snapshot>& snaps);

/// Writes `<dir>/t<time>.csv` for each snapshot and `<dir>/diagnostics.csv`;
/// returns the paths written.
std::vector<std::string> write_run(const std::string& dir, const std::vector<Snapshot>& snaps,
                                   const Grid1D& grid, const PhysParams& p);

}  // namespace rgsw
