#include <algorithm>
#include <cmath>

#include "rgsw/solver.hpp"

namespace rgsw {

namespace {

double field(const Vec4& q, WaveKind kind) { return kind == WaveKind::shock ? q[0] : q[3] / q[0]; }

bool inside(double x, const std::optional<double>& lo, const std::optional<double>& hi) {
  return (!lo || x >= *lo) && (!hi || x <= *hi);
}

}  // namespace

double measure_wave(const Snapshot& snap, const Grid1D& grid, WaveKind kind,
                    const MeasureOptions& opt) {
  const auto& c = snap.cells;
  std::vector<std::size_t> faces;
  std::vector<double> jump;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    if (!inside(grid.cell_center(i), opt.window_lo, opt.window_hi) ||
        !inside(grid.cell_center(i + 1), opt.window_lo, opt.window_hi))
      continue;
    faces.push_back(i);
    jump.push_back(std::abs(field(c[i + 1], kind) - field(c[i], kind)));
  }
  if (jump.empty()) throw Error(Errc::NoTransitionFound, "measurement window contains no faces");
  const auto top = std::max_element(jump.begin(), jump.end());
  if (*top < opt.min_jump)
    throw Error(Errc::NoTransitionFound,
                std::string(kind == WaveKind::shock ? "h" : "phi") + " has no front in the window");

  std::size_t pick = static_cast<std::size_t>(top - jump.begin());
  if (opt.selector == FrontSelector::leading) {
    for (std::size_t k = jump.size(); k-- > 0;) {
      const bool peak = (k == 0 || jump[k] >= jump[k - 1]) &&
                        (k + 1 == jump.size() || jump[k] >= jump[k + 1]);
      if (peak && jump[k] >= 0.5 * *top) {
        pick = k;
        break;
      }
    }
  }
  return grid.x_lo + static_cast<double>(faces[pick] + 1) * grid.dx();
}

double wave_speed(const Snapshot& a, const Snapshot& b, const Grid1D& grid, WaveKind kind,
                  const MeasureOptions& opt) {
  if (!(b.t != a.t)) throw Error(Errc::InvalidParameter, "snapshots share a time");
  return (measure_wave(b, grid, kind, opt) - measure_wave(a, grid, kind, opt)) / (b.t - a.t);
}

std::size_t count_fronts(const Snapshot& snap, const Grid1D& grid, double threshold,
                         std::optional<double> lo, std::optional<double> hi) {
  const auto& c = snap.cells;
  const double dx = grid.dx();
  std::size_t count = 0;
  bool in_run = false;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    const bool hit = inside(grid.cell_center(i), lo, hi) && inside(grid.cell_center(i + 1), lo, hi) &&
                     std::abs(c[i + 1][0] - c[i][0]) / dx > threshold;
    if (hit && !in_run) ++count;
    in_run = hit;
  }
  return count;
}

}  // namespace rgsw
