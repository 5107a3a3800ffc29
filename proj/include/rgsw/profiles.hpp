#pragma once

// Convective-wave profiles: travelling waves with U == c and Phi == 0 whose
// height and bottom enstrophy satisfy, in the distributional sense,
//
//   ( g' h^2 / 2 + phi h^3 )' = g^ h - C_f c^2.
//
// Profiles are stored as samples. A discontinuity is represented by a
// repeated abscissa: sample i-1 holds the left limit and sample i the right
// limit at x[i-1] == x[i]. Between repeated abscissae the samples form a
// smooth segment.

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rgsw/grid.hpp"
#include "rgsw/model.hpp"

namespace rgsw {

/// Half-open sample range [begin, end) of one smooth piece.
struct Segment {
  std::size_t begin;
  std::size_t end;
  std::size_t size() const noexcept { return end - begin; }
};

class WaveProfile {
 public:
  struct Endstates {
    double phi_minus;
    double phi_plus;
  };

  WaveProfile(const PhysParams& params, double h0, double c, std::vector<double> x,
              std::vector<double> h, std::vector<double> phi, Endstates endstates,
              bool periodic = false);

  const PhysParams& params() const noexcept { return params_; }
  double h0() const noexcept { return h0_; }
  double c() const noexcept { return c_; }
  double phi_minus() const noexcept { return ends_.phi_minus; }
  double phi_plus() const noexcept { return ends_.phi_plus; }
  bool periodic() const noexcept { return periodic_; }

  std::span<const double> x() const noexcept { return x_; }
  std::span<const double> h() const noexcept { return h_; }
  std::span<const double> phi() const noexcept { return phi_; }
  std::size_t size() const noexcept { return x_.size(); }

  const std::vector<Segment>& segments() const noexcept { return segments_; }
  std::vector<double> jump_locations() const;
  bool has_jumps() const noexcept { return segments_.size() > 1; }

  /// Index of the segment containing x (for a jump location, the segment to
  /// its right unless `prefer_left`).
  std::size_t segment_of(double x, bool prefer_left = false) const;

  /// Cubic interpolation of (h, phi) inside one segment.
  double h_at(std::size_t segment, double x) const;
  double phi_at(std::size_t segment, double x) const;

 private:
  PhysParams params_;
  double h0_;
  double c_;
  std::vector<double> x_;
  std::vector<double> h_;
  std::vector<double> phi_;
  Endstates ends_;
  bool periodic_;
  std::vector<Segment> segments_;
};

/// Sample abscissae: n uniform points on [x_lo, x_hi] with every jump
/// location inserted twice.
std::vector<double> make_profile_grid(double x_lo, double x_hi, std::size_t n,
                                      std::span<const double> jumps = {});

/// Closed-form height deviations delta(x) = h - h0.
namespace delta {

/// a * exp(-1 / (1 - ((x - center)/radius)^2)) on |x - center| < radius.
std::function<double(double)> bump(double amplitude, double center, double radius);
/// a * exp(-((x - center)/width)^2)
std::function<double(double)> gaussian(double amplitude, double center, double width);
/// a * sin(2 pi x / period)
std::function<double(double)> sine(double amplitude, double period);

}  // namespace delta

struct ProfileSpec {
  double h0;
  double c;
  double kappa;
  std::vector<double> x;      ///< sample grid, jumps as repeated abscissae
  std::vector<double> delta;  ///< h - h0 at each sample
  std::optional<double> period;

  /// Samples `fn` on a grid from make_profile_grid.
  static ProfileSpec sampled(double h0, double c, double kappa, std::vector<double> x,
                             const std::function<double(double)>& fn);
};

/// Tolerance for the endstate relation g^ h0 == C_f c^2 (relative).
inline constexpr double kEquilibriumTolerance = 1e-10;

/// Equilibrium speed for a limiting height, c = sqrt(g^ h0 / C_f).
double equilibrium_speed(double h0, const PhysParams& p);

/// phi(x) = [kappa + g^ int_{x_lo}^x delta - g'(h0+delta)^2/2] / (h0+delta)^3.
WaveProfile construct_from_delta(const ProfileSpec& spec, const PhysParams& p);

/// Left height at a convected jump: the positive root of
/// phi_L h^3 + g' h^2 / 2 = phi_R h_R^3 + g' h_R^2 / 2.
double jump_height(double h_right, double phi_left, double phi_right, const PhysParams& p);

struct Domain {
  double x_lo;
  double x_hi;
  std::size_t n;  ///< uniform samples before jump insertion
};

/// Profile with phi = phi_L | phi_R across x_jump, h = h0 to the right and
/// h' = g^(h - h0) / (g' h + 3 phi_L h^2) integrated backward from h_L.
WaveProfile construct_single_jump(double h0, double c, double phi_left, double phi_right,
                                  double x_jump, const PhysParams& p, const Domain& domain);

/// Periodic profile over one period; the running integral starts at the
/// first sample. Throws NonZeroMean when |mean delta| exceeds `mean_tol`.
WaveProfile construct_periodic(const ProfileSpec& spec, const PhysParams& p,
                               double mean_tol = 1e-10);

/// Convolves delta = h - h0 with a smooth compactly supported kernel of
/// half-width eps and rebuilds phi from the profile relation with the same
/// kappa. The result is smooth (no jumps) on the original abscissae.
WaveProfile mollify(const WaveProfile& profile, double eps);

/// Residual of the integrated profile relation at each sample,
///   g' h^2/2 + phi h^3 - G(x_0) - g^ int_{x_0}^x (h - h0).
std::vector<double> profile_relation_residual(const WaveProfile& profile);

/// [g' h^2 / 2 + phi h^3] at each jump.
std::vector<double> jump_residuals(const WaveProfile& profile);

/// Residual of the differentiated relation (g'h^2/2 + phi h^3)' - g^ (h - h0)
/// by five-point differences on each segment.
std::vector<double> differential_residual(const WaveProfile& profile);

struct DecayEstimate {
  double left_rate;   ///< fitted exponential rate of |h - h0| toward x_lo
  double right_rate;  ///< fitted exponential rate toward x_hi
  double left_deviation;
  double right_deviation;
};

/// Least-squares fit of log|delta| over the outer tenth of the profile on
/// each side; rates are positive for decay toward the boundary.
DecayEstimate estimate_decay(const WaveProfile& profile);

/// ||Phi(t, .)||_inf for each snapshot.
std::vector<double> phi_decay_diagnostic(std::span<const Snapshot> snapshots,
                                         const PhysParams& p);

/// CSV with header `x,h,phi` and a leading `# jumps:` comment line.
void write_profile_csv(std::ostream& os, const WaveProfile& profile);
void write_profile_csv(const std::string& path, const WaveProfile& profile);

}  // namespace rgsw
