#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "rgsw/cli.hpp"

namespace rgsw::cli {

namespace {

constexpr double kPi = std::numbers::pi;

PhysParams shallow_slope(double c_t) {
  return PhysParams(10 * std::cos(kPi / 10), 10 * std::sin(kPi / 10), 1.0, c_t);
}

PhysParams steep_slope() { return PhysParams(10 * std::cos(kPi / 6), 10 * std::sin(kPi / 6), 0.05, 0.04); }

CheckResult within(std::string name, double value, double expected, double tol, std::string detail = {}) {
  return {std::move(name), std::abs(value - expected) <= tol, value, expected, tol, std::move(detail)};
}

CheckResult at_most(std::string name, double value, double bound, std::string detail = {}) {
  return {std::move(name), value <= bound, value, 0.0, bound, std::move(detail)};
}

CheckResult at_least(std::string name, double value, double bound, std::string detail = {}) {
  return {std::move(name), value >= bound, value, bound, 0.0, std::move(detail)};
}

const Snapshot& at_time(const std::vector<Snapshot>& snaps, double t) {
  for (const auto& s : snaps)
    if (std::abs(s.t - t) <= 1e-12 * std::max(1.0, t)) return s;
  throw Error(Errc::InvalidParameter, "no snapshot at t = " + format_time(t));
}

double phi_of(const Vec4& q) { return q[3] / q[0]; }

// Linear interpolation of cell values, clamped at the ends.
double sample(const std::vector<Vec4>& cells, const Grid1D& g, double x, int comp, bool ratio) {
  const double s = (x - g.x_lo) / g.dx() - 0.5;
  const double n = static_cast<double>(g.n_cells);
  const double sc = std::clamp(s, 0.0, n - 1.0);
  const auto i = std::min(static_cast<std::size_t>(sc), g.n_cells - 2);
  const double w = sc - static_cast<double>(i);
  auto v = [&](std::size_t k) { return ratio ? cells[k][comp] / cells[k][0] : cells[k][comp]; };
  return (1 - w) * v(i) + w * v(i + 1);
}

// Smallest mean of |h - h_ref| + |phi - phi_ref| over [lo, hi] among shifts
// of the reference profile within +-3 in steps of dx / 4.
double aligned_l1(const Snapshot& s, const Grid1D& g, const WaveProfile& ref, double lo, double hi) {
  auto eval = [&](double x, bool h) {
    const auto seg = ref.segment_of(std::clamp(x, ref.x().front(), ref.x().back()));
    const double xc = std::clamp(x, ref.x()[ref.segments()[seg].begin], ref.x()[ref.segments()[seg].end - 1]);
    return h ? ref.h_at(seg, xc) : ref.phi_at(seg, xc);
  };
  double best = INFINITY;
  for (double shift = -3.0; shift <= 3.0; shift += 0.25 * g.dx()) {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < g.n_cells; ++i) {
      const double x = g.cell_center(i);
      if (x < lo || x > hi) continue;
      sum += std::abs(s.cells[i][0] - eval(x - shift, true)) + std::abs(phi_of(s.cells[i]) - eval(x - shift, false));
      ++n;
    }
    if (n > 0) best = std::min(best, sum / static_cast<double>(n));
  }
  return best;
}

std::vector<CheckResult> fig2_checks(const SimConfig& cfg, const std::vector<Snapshot>& snaps) {
  const auto& g = cfg.grid;
  const auto& p = cfg.params;
  const auto& last = snaps.back();
  const double c = std::sqrt(p.g_parallel);
  const double front = measure_wave(last, g, WaveKind::contact);
  std::vector<CheckResult> out;
  out.push_back(within("contact location", front, 50.0 + last.t * c, 1.0));
  double dev = 0.0;
  for (std::size_t i = 0; i < g.n_cells; ++i)
    if (g.cell_center(i) > front + 2.0) dev = std::max(dev, std::abs(last.cells[i][0] - 1.0));
  out.push_back(at_most("downstream height deviation", dev, 1e-2));
  const auto ref = construct_single_jump(1.0, c, 0.2, 0.5, front, p, Domain{g.x_lo, g.x_hi, 2 * g.n_cells});
  out.push_back(at_most("aligned L1 distance to convective profile",
                        aligned_l1(last, g, ref, front - 60.0, front + 20.0), 0.05));
  return out;
}

std::vector<CheckResult> fig4_checks(const SimConfig& cfg, const std::vector<Snapshot>& snaps) {
  MeasureOptions lead;
  lead.selector = FrontSelector::leading;
  const auto& a = at_time(snaps, 10.0);
  const auto& b = snaps.back();
  const double speed = wave_speed(a, b, cfg.grid, WaveKind::contact, lead);
  const double xc = measure_wave(b, cfg.grid, WaveKind::contact, lead);
  return {within("contact speed", speed, 10.0, 0.2),
          at_least("h fronts ahead of contact", static_cast<double>(count_fronts(b, cfg.grid, 0.5, xc + 1.0)), 1.0)};
}

// Sup distance of h (or phi) from the unperturbed wave translated by c t.
double sup_distance(const SimConfig& cfg, const Snapshot& s, bool use_phi, const BumpSpec& extra) {
  const auto& in = std::get<PerturbedProfileInit>(cfg.initial);
  PerturbedProfileInit base = in;
  base.h_perturbation = {};
  base.phi_perturbation = {};
  const auto ref = build_initial(base, cfg.grid, cfg.params);
  const double c = std::sqrt(cfg.params.g_parallel * in.h0 / cfg.params.c_f);
  const auto bump = extra.amplitude == 0.0 ? std::function<double(double)>([](double) { return 0.0; })
                                           : delta::bump(extra.amplitude, extra.center, extra.radius);
  double d = 0.0;
  for (std::size_t i = 0; i < cfg.grid.n_cells; ++i) {
    const double x = cfg.grid.cell_center(i) - c * s.t;
    if (x < cfg.grid.x_lo) continue;
    const double r = sample(ref, cfg.grid, x, use_phi ? 3 : 0, use_phi) + bump(x);
    d = std::max(d, std::abs((use_phi ? phi_of(s.cells[i]) : s.cells[i][0]) - r));
  }
  return d;
}

std::vector<CheckResult> fig5_checks(const SimConfig& cfg, const std::vector<Snapshot>& snaps) {
  const double d0 = sup_distance(cfg, snaps.front(), false, {});
  const double d1 = sup_distance(cfg, snaps.back(), false, {});
  return {at_most("h distance to translated wave, relative to initial", d1 / d0, 0.25)};
}

std::vector<CheckResult> fig6_checks(const SimConfig& cfg, const std::vector<Snapshot>& snaps) {
  const auto& pert = std::get<PerturbedProfileInit>(cfg.initial).phi_perturbation;
  const double to_base = sup_distance(cfg, snaps.back(), true, {});
  const double to_perturbed = sup_distance(cfg, snaps.back(), true, pert);
  return {at_most("phi distance to perturbed wave over distance to unperturbed", to_perturbed / to_base, 0.5)};
}

std::vector<CheckResult> fig7_checks(const SimConfig& cfg, const std::vector<Snapshot>& snaps) {
  MeasureOptions lead;
  lead.selector = FrontSelector::leading;
  const auto& a = at_time(snaps, 10.0);
  const auto& b = at_time(snaps, 15.0);
  const double contact = wave_speed(a, b, cfg.grid, WaveKind::contact, lead);
  const double shock = wave_speed(a, b, cfg.grid, WaveKind::shock);
  const double expected = (25.0 - std::sqrt(5.0)) / 2.0;
  return {within("contact speed", contact, 10.0, 0.2),
          within("shock speed", shock, expected, 0.02 * expected)};
}

std::vector<CheckResult> fig8_checks(const SimConfig& cfg, const std::vector<Snapshot>& snaps) {
  std::size_t early = 0;
  for (const auto& s : snaps)
    if (s.t <= 15.0) early = std::max(early, count_fronts(s, cfg.grid, 1.0));
  const auto late = count_fronts(snaps.back(), cfg.grid, 1.0);
  return {within("h fronts up to t = 15", static_cast<double>(early), 1.0, 0.0),
          at_least("h fronts at final time", static_cast<double>(late), 2.0)};
}

std::vector<CheckResult> fig9_checks(const SimConfig& cfg, const std::vector<Snapshot>& snaps) {
  const auto& d0 = snaps.front().diagnostics;
  const auto& d1 = snaps.back().diagnostics;
  const double c = std::sqrt(cfg.params.g_parallel / cfg.params.c_f);
  double du = 0.0;
  for (const auto& q : snaps.back().cells) du = std::max(du, std::abs(q[1] / q[0] - c));
  return {at_most("relative mass drift", std::abs(d1.mass - d0.mass) / d0.mass, 1e-10),
          at_most("relative phi content drift", std::abs(d1.phi_content - d0.phi_content) / d0.phi_content, 1e-10),
          at_most("velocity deviation from c at final time", du, 1e-2)};
}

}  // namespace

double phi_localization(const Snapshot& s, const Grid1D& g, const PhysParams& p, double threshold,
                        double radius, std::size_t* fronts) {
  const std::size_t n = g.n_cells;
  const double dx = g.dx();
  const double period = g.x_hi - g.x_lo;
  std::vector<double> faces;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + 1 < n ? i + 1 : (g.bc == BoundaryCondition::periodic ? 0 : i);
    if (std::abs(s.cells[j][0] - s.cells[i][0]) / dx > threshold) faces.push_back(g.x_lo + (i + 1) * dx);
  }
  if (fronts) *fronts = faces.size();
  double total = 0.0, near = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& q = s.cells[i];
    const double big = std::abs(kernel::total_enstrophy(q, p.g_perp) - q[3] / q[0]);
    total += big;
    const double x = g.cell_center(i);
    for (double f : faces) {
      double d = std::abs(x - f);
      if (g.bc == BoundaryCondition::periodic) d = std::min(d, period - d);
      if (d < radius) {
        near += big;
        break;
      }
    }
  }
  return total > 0.0 ? near / total : 0.0;
}

namespace {

std::vector<CheckResult> fig10_checks(const SimConfig& cfg, const std::vector<Snapshot>& snaps) {
  const auto& last = snaps.back();
  std::size_t faces = 0;
  const double frac = phi_localization(last, cfg.grid, cfg.params, 1.0, 1.0, &faces);
  return {at_least("steep h faces at final time", static_cast<double>(faces), 1.0),
          at_least("max |Phi| at final time", last.diagnostics.max_abs_phi_large, 1e-3),
          at_least("Phi fraction within 1 of an h front", frac, 0.8)};
}

SimConfig base_config(PhysParams p, Grid1D g, InitialCondition init, double t_end, std::vector<double> snaps) {
  return SimConfig{p, g, std::move(init), t_end, std::move(snaps), SolverOptions{}};
}

PiecewiseInit dam_break(double h_right, const PhysParams& p) {
  const double ur = std::sqrt(p.g_parallel * h_right / p.c_f);
  return PiecewiseInit{{5.0}, {{1.0, 10.0}, {h_right, ur}}, {10.0, 20.0, 30.0, 40.0}, {0.3, 0.1, 0.5, 0.2, 0.6}, 0.0};
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig2", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10"};
}

ExperimentPreset make_preset(const std::string& name) {
  if (name == "fig2") {
    const auto p = shallow_slope(0.9);
    const double c = std::sqrt(p.g_parallel);
    return {name, "phi step 0.2 | 0.5 at x = 50 on a stable equilibrium; convective wave at speed c",
            base_config(p, Grid1D(0, 250, 2500), PiecewiseInit{{}, {{1.0, c}}, {50.0}, {0.2, 0.5}, 0.0}, 95.0,
                        {0, 1, 10, 95}),
            fig2_checks};
  }
  if (name == "fig4") {
    const auto p = steep_slope();
    return {name, "phi step 0.3 | 0.1 at x = 50 on an unstable equilibrium; fronts form ahead of the contact",
            base_config(p, Grid1D(0, 500, 10000), PiecewiseInit{{}, {{1.0, 10.0}}, {50.0}, {0.3, 0.1}, 0.0}, 20.0,
                        {0, 5, 10, 20}),
            fig4_checks};
  }
  if (name == "fig5" || name == "fig6") {
    PerturbedProfileInit in{1.0, 4.0, {0.02, 3.0, 1.0}, {}, {}, {}};
    if (name == "fig5")
      in.h_perturbation = {-0.01, 6.0, 1.0};
    else
      in.phi_perturbation = {0.1, 5.0, 1.0};
    return {name,
            name == "fig5" ? "smooth convective wave with a bump perturbation of h"
                           : "smooth convective wave with a bump perturbation of phi",
            base_config(shallow_slope(0.8), Grid1D(-10, 30, 4000), in, 6.0, {0, 0.2, 1, 6}),
            name == "fig5" ? fig5_checks : fig6_checks};
  }
  if (name == "fig7" || name == "fig8") {
    const auto p = PhysParams(5 * std::sqrt(3.0), 5.0, 0.05, 0.04);
    if (name == "fig7")
      return {name, "dam break (1, 10) | (0.2, 2 sqrt 5) at x = 5 with phi steps; hydraulic shock and trailing contact",
              base_config(p, Grid1D(0, 200, 4000), dam_break(0.2, p), 15.0, {0, 5, 10, 15}), fig7_checks};
    return {name, "dam break (1, 10) | (0.5, 5 sqrt 2) at x = 5 with phi steps; a second shock appears late",
            base_config(p, Grid1D(0, 350, 7000), dam_break(0.5, p), 25.0, {0, 5, 10, 15, 20, 25}), fig8_checks};
  }
  if (name == "fig9") {
    const auto p = shallow_slope(0.9);
    return {name, "phi = 2 + sin(pi x), periodic on [0, 10], stable parameters",
            base_config(p, Grid1D(0, 10, 1000, BoundaryCondition::periodic),
                        PeriodicSineInit{1.0, std::sqrt(p.g_parallel), 2.0, 1.0, kPi}, 5.0, {0, 0.5, 2, 5}),
            fig9_checks};
  }
  if (name == "fig10") {
    const auto p = steep_slope();
    return {name, "phi = 2 + sin(pi x), periodic on [0, 10], unstable parameters; roll wave develops",
            base_config(p, Grid1D(0, 10, 499, BoundaryCondition::periodic),
                        PeriodicSineInit{1.0, 10.0, 2.0, 1.0, kPi}, 150.0, {0, 5, 10, 40, 150}),
            fig10_checks};
  }
  throw Error(Errc::InvalidParameter, "unknown preset '" + name + "'");
}

std::vector<CheckResult> seed_checks(const SimConfig& config) {
  const auto cells = build_initial(config.initial, config.grid, config.params);
  const auto& p = config.params;
  double min_h = INFINITY, min_phi = INFINITY;
  for (const auto& q : cells) {
    min_h = std::min(min_h, q[0]);
    min_phi = std::min(min_phi, phi_of(q));
  }
  auto eq = [&](const Vec4& q) {
    const double u = q[1] / q[0];
    return std::abs(p.g_parallel * q[0] - p.c_f * u * u) / (p.g_parallel * q[0]);
  };
  return {at_least("initial min h", min_h, 0.0), at_least("initial min phi", min_phi, 0.0),
          at_most("left cell off equilibrium", eq(cells.front()), 1e-10),
          at_most("right cell off equilibrium", eq(cells.back()), 1e-10)};
}

const char* version() noexcept { return RGSW_VERSION; }

json to_json(const RunManifest& m) {
  json checks = json::array();
  bool ok = true;
  for (const auto& c : m.checks) {
    checks.push_back(to_json(c));
    ok = ok && c.passed;
  }
  return {{"command", m.command},  {"version", m.version}, {"config", m.config},
          {"wall_seconds", m.wall_seconds}, {"files", m.files},    {"checks", checks},
          {"all_checks_passed", ok}};
}

std::string write_manifest(const std::string& dir, const RunManifest& m) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(Errc::Io, "cannot create " + dir + ": " + ec.message());
  const auto final_path = fs::path(dir) / "manifest.json";
  const auto tmp = fs::path(dir) / ".manifest.json.tmp";
  {
    std::ofstream os(tmp);
    if (!os) throw Error(Errc::Io, "cannot write " + tmp.string());
    os << to_json(m).dump(2) << '\n';
    if (!os) throw Error(Errc::Io, "write failed for " + tmp.string());
  }
  fs::rename(tmp, final_path, ec);
  if (ec) throw Error(Errc::Io, "cannot rename manifest: " + ec.message());
  return final_path.string();
}

}  // namespace rgsw::cli
