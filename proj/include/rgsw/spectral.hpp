#pragma once

// Spectral stability of convective waves.
//
// The eigenvalue problem lambda A0 W + (A W)' = E W about a profile
// (h, c, 0, phi) reduces, for lambda != 0, to a scalar second-order equation
// for the velocity perturbation U. The Evans function is computed from the
// equivalent first-order system in
//
//   w1 = U,   w2 = a U' - C_f |c| c U,   a = h^2 (g' + 3 h phi),
//   w1' = (C_f |c| c w1 + w2) / a,   w2' = (lambda^2 h + 2 lambda C_f c) w1,
//
// whose unknowns stay continuous across profile discontinuities.

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "rgsw/profiles.hpp"

namespace rgsw {

using cplx = std::complex<double>;

// ---------------------------------------------------------------- linearization

struct LinearizedSystem {
  Eigen::Matrix4d a0;
  Eigen::Matrix4d a1;
  Eigen::Matrix4d e;
  Eigen::Matrix4d a;  ///< a1 - c a0
};

/// Coefficient matrices at one profile state, unknowns ordered (h, U, Phi, phi).
LinearizedSystem linearized_matrices(double h, double phi, double c, const PhysParams& p);

Eigen::RowVector4d left_kernel_1(double h, double phi);
Eigen::RowVector4d left_kernel_2(double h, double phi, double c, const PhysParams& p);

struct ReducedCoefficients {
  std::vector<double> x;
  std::vector<double> f1, f2, f3, f4;
  double f1_minus;  ///< -g^ / (h0 (g' + 3 h0 phi_-))
  double f1_plus;
};

/// Coefficients of U'' + f1 U' + (f2 l^2 + f3 l + f4) U = 0 on the profile
/// samples. Derivatives are five-point differences on each smooth segment.
/// Throws GridTooCoarse when a segment has fewer than five samples or the
/// fourth- and second-order first derivatives of h or phi disagree by more
/// than 5% of their size.
ReducedCoefficients reduced_coefficients(const WaveProfile& profile);

// ---------------------------------------------------------------- constant states

/// Roots of l^2 + 2 C_f c l / h0 + i xi g^ + xi^2 h0 (g' + 3 h0 phi0) = 0
/// with c = sqrt(g^ h0 / C_f).
std::array<cplx, 2> dispersion_roots(double xi, double h0, double phi0, const PhysParams& p);

/// c^2 < 4 h0 (g' + 3 h0 phi0).
bool hydro_stable(double h0, double phi0, const PhysParams& p);

struct SpatialEigenvalues {
  cplx gamma1;  ///< '+' root, the one with the larger real part
  cplx gamma2;
  bool on_branch_cut;
};

/// gamma = [g^ +- sqrt(g^2 + 4 K (2 C_f c l + h0 l^2))] / (2 h0 K),
/// K = g' + 3 h0 phi0, principal square root. On the cut (negative real
/// radicand) throws BranchCut unless `continuation`, in which case the limit
/// from Im > 0 is returned.
SpatialEigenvalues spatial_eigenvalues(cplx lambda, double phi0, double h0, const PhysParams& p,
                                       bool continuation = false);

// ---------------------------------------------------------------- verdicts

enum class StabilityMode { standard, convective, extended_convective };

std::string to_string(StabilityMode mode);
StabilityMode stability_mode_from_string(const std::string& name);

struct ContourSpec {
  double re_min = 1e-3;
  double re_max = 5.0;
  double im_max = 10.0;
  double indent = 1e-3;             ///< radius of the detour around 0 when re_min == 0
  std::size_t initial_samples = 128;
  std::size_t max_samples = 20000;
  double zero_threshold = 1e-10;    ///< |D| below this on the contour is an error
  bool parallel = true;
};

struct StabilityReport {
  StabilityMode mode;
  bool cf_ct_ok;
  double froude_minus;
  double froude_plus;
  bool discontinuous;
  bool stable;
  std::optional<bool> strongly_stable;  ///< withheld for discontinuous profiles
  double essential_lo;                  ///< closure of -2 (C_f - C_t) c^3 / (h^3 phi)
  double essential_hi;
  double f1_minus;
  double f1_plus;
  double theta_minus;  ///< f1(-inf) / 2
  double theta_plus;
  std::optional<int> evans_winding;
  std::optional<ContourSpec> contour;
};

/// Throws NotAsymptoticallyConstant for periodic profiles.
StabilityReport stability_verdict(const WaveProfile& profile, StabilityMode mode);

/// JSON document for a report (pretty-printed).
std::string report_to_json(const StabilityReport& report);

// ---------------------------------------------------------------- Evans function

enum class WeightMode { none, endstate, custom };

struct EvansOptions {
  WeightMode weight = WeightMode::none;
  double theta_minus = 0.0;  ///< used when weight == custom
  double theta_plus = 0.0;
  double rtol = 1e-10;
  double atol = 1e-13;
  double tail_tolerance = 1e-12;
  std::optional<double> match_point;
  double overflow_limit = 1e150;
};

/// D(l) = det[W-(x_m), W+(x_m)] / N(l) with W-+ the solutions decaying at
/// -+infinity, each carried in the frame exp(-mu x) of its own asymptotic
/// eigenvalue so that it is constant wherever the profile is. N(l) =
/// -2 h0^(3/2) sqrt(K) (l + C_f c / h0), K from the mean endstate enstrophy.
class EvansFunction {
 public:
  explicit EvansFunction(WaveProfile profile, EvansOptions options = {});

  cplx operator()(cplx lambda) const;

  double match_point() const noexcept { return x_match_; }
  double left_start() const noexcept { return x_left_; }
  double right_start() const noexcept { return x_right_; }
  const WaveProfile& profile() const noexcept { return profile_; }
  const EvansOptions& options() const noexcept { return options_; }

  /// Weights actually applied at -inf and +inf.
  std::pair<double, double> thetas() const noexcept { return {theta_minus_, theta_plus_}; }

  /// Integrates the rescaled system W' = (A(x) - mu) W from `from` to `to`,
  /// segment by segment.
  std::array<cplx, 2> integrate(cplx lambda, cplx mu, std::array<cplx, 2> y, double from,
                                double to) const;

 private:
  struct Side {
    cplx mu;
    std::array<cplx, 2> v;
  };
  Side endstate(cplx lambda, bool left) const;

  WaveProfile profile_;
  EvansOptions options_;
  double x_left_;
  double x_right_;
  double x_match_;
  double theta_minus_;
  double theta_plus_;
};

cplx evans(const WaveProfile& profile, cplx lambda, const EvansOptions& options = {});

struct ContourResult {
  int winding;
  double raw_winding;  ///< total phase change / 2 pi before rounding
  std::size_t evaluations;
  double min_modulus;
};

/// Number of zeros of D enclosed by the rectangle of `contour`, by the
/// argument principle with adaptive bisection until every phase increment is
/// below pi/2.
ContourResult count_unstable_detailed(const WaveProfile& profile, const ContourSpec& contour,
                                      const EvansOptions& options = {});
int count_unstable(const WaveProfile& profile, const ContourSpec& contour,
                   const EvansOptions& options = {});

// ---------------------------------------------------------------- eigenfunctions

/// Solution of the (w1, w2) system decaying at -infinity, sampled at the
/// profile abscissae (including both limits at each jump).
struct WSolution {
  cplx lambda;
  std::vector<double> x;
  std::vector<cplx> w1;
  std::vector<cplx> w2;
};

WSolution solve_w_system(const WaveProfile& profile, cplx lambda, const EvansOptions& options = {});

struct EigenFunction {
  cplx lambda;
  std::vector<double> x;
  std::vector<cplx> h;
  std::vector<cplx> u;
  std::vector<cplx> phi_large;  ///< identically zero
  std::vector<cplx> phi_small;
  std::vector<cplx> w1;
  std::vector<cplx> w2;
};

/// h = -(h U)' / l, phi = -phi_x U / l, Phi = 0. Throws LambdaZero at l = 0.
EigenFunction reconstruct_eigenfunction(const WaveProfile& profile, cplx lambda,
                                        const WSolution& solution);

/// max |l A0 W + (A W)' - E W| over samples, relative to max |l A0 W| + |E W|,
/// with (A W)' by five-point differences inside each segment.
double mateval_residual(const WaveProfile& profile, const EigenFunction& ef);

/// Residual of w'' + (f2 l^2 + f3 l + f4 - f1^2/4 - f1'/2) w = 0 for
/// w = exp(int f1 / 2) U built from the decaying solution, relative to the
/// size of its terms. Smooth profiles only.
double liouville_residual(const WaveProfile& profile, cplx lambda, const EvansOptions& options = {});

struct KernelMode {
  std::vector<double> x;
  std::vector<double> h;
  std::vector<double> phi;  ///< (h, 0, 0, phi) solves (A W)' = E W
};

/// phi = [constant + g^ int h - h_bar K_bar h] / h_bar^3, K_bar = g' + 3 h_bar phi_bar.
KernelMode kernel_modes(const WaveProfile& profile, const std::vector<double>& seed_h,
                        double constant = 0.0);

/// max |(A W)' - E W| for a zero mode, relative to max |E W| + |A W| / length.
double kernel_residual(const WaveProfile& profile, const KernelMode& mode);

struct ReductionDiagnostics {
  double max_left_kernel_1;  ///< max |l1 A| / |A|
  double max_left_kernel_2;
  int min_rank;
  int max_rank;
  double max_profile_residual;  ///< Phi-numerator: C_f c^2 - g^ h + (phi h^3 + g' h^2 / 2)'
  double worst_x;
};

struct ReductionTolerances {
  double left_kernel = 1e-10;
  double profile_residual = 1e-8;
};

/// Throws ReductionViolation with the worst sample location when any check fails.
ReductionDiagnostics check_reduction(const WaveProfile& profile,
                                     const ReductionTolerances& tol = {});

}  // namespace rgsw
