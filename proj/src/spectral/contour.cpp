#include <cmath>
#include <exception>
#include <numbers>
#include <vector>

#include "rgsw/spectral.hpp"

namespace rgsw {

namespace {

constexpr double kPi = std::numbers::pi;

// Positively oriented rectangle, with a detour around 0 into the right
// half-plane when the left edge lies on the imaginary axis.
class RectanglePath {
 public:
  explicit RectanglePath(const ContourSpec& c) {
    legs_.reserve(6);
    const cplx bl(c.re_min, -c.im_max), br(c.re_max, -c.im_max);
    const cplx tr(c.re_max, c.im_max), tl(c.re_min, c.im_max);
    add_line(bl, br);
    add_line(br, tr);
    add_line(tr, tl);
    if (c.re_min == 0.0) {
      add_line(tl, cplx(0.0, c.indent));
      legs_.push_back({cplx(), cplx(), c.indent, true, kPi * c.indent});
      add_line(cplx(0.0, -c.indent), bl);
    } else {
      add_line(tl, bl);
    }
    for (const auto& l : legs_) total_ += l.length;
  }

  cplx at(double t) const {
    double s = t * total_;
    for (const auto& l : legs_) {
      if (s <= l.length || &l == &legs_.back()) {
        const double u = l.length > 0 ? std::min(s / l.length, 1.0) : 0.0;
        if (l.arc) return std::polar(l.radius, kPi / 2 - kPi * u);
        return l.a + u * (l.b - l.a);
      }
      s -= l.length;
    }
    return legs_.back().b;
  }

 private:
  struct Leg {
    cplx a, b;
    double radius;
    bool arc;
    double length;
  };
  void add_line(cplx a, cplx b) { legs_.push_back({a, b, 0.0, false, std::abs(b - a)}); }

  std::vector<Leg> legs_;
  double total_ = 0.0;
};

struct Sample {
  double t;
  cplx d;
};

void evaluate(const EvansFunction& ev, const RectanglePath& path, std::vector<Sample>& pts,
              bool parallel) {
  const auto n = static_cast<long>(pts.size());
  std::vector<std::exception_ptr> errors(pts.size());
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
      try {
        pts[i].d = ev(path.at(pts[i].t));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    for (long i = 0; i < n; ++i) {
      try {
        pts[i].d = ev(path.at(pts[i].t));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

ContourResult count_unstable_detailed(const WaveProfile& profile, const ContourSpec& contour,
                                      const EvansOptions& options) {
  if (!(contour.re_max > contour.re_min) || !(contour.im_max > 0.0) || contour.re_min < 0.0)
    throw Error(Errc::InvalidParameter, "contour needs 0 <= re_min < re_max and im_max > 0");
  if (contour.re_min == 0.0 && !(contour.indent > 0.0 && contour.indent < contour.im_max))
    throw Error(Errc::InvalidParameter, "indentation radius must lie in (0, im_max)");
  const std::size_t n0 = std::max<std::size_t>(contour.initial_samples, 8);

  const EvansFunction ev(profile, options);
  const RectanglePath path(contour);

  std::vector<Sample> pts(n0);
  for (std::size_t i = 0; i < n0; ++i) pts[i].t = static_cast<double>(i) / static_cast<double>(n0);
  evaluate(ev, path, pts, contour.parallel);
  std::size_t evaluations = pts.size();

  for (;;) {
    std::vector<Sample> fresh;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Sample& a = pts[i];
      const Sample& b = pts[(i + 1) % pts.size()];
      if (std::abs(std::arg(b.d / a.d)) >= kPi / 2) {
        const double tb = i + 1 == pts.size() ? 1.0 : b.t;
        fresh.push_back({0.5 * (a.t + tb), cplx()});
      }
    }
    if (fresh.empty()) break;
    if (evaluations + fresh.size() > contour.max_samples)
      throw Error(Errc::ContourThroughZero,
                  "phase refinement did not converge within " + std::to_string(contour.max_samples) +
                      " samples; D is likely vanishing on or near the contour");
    evaluate(ev, path, fresh, contour.parallel);
    evaluations += fresh.size();
    std::vector<Sample> merged;
    merged.reserve(pts.size() + fresh.size());
    std::size_t j = 0;
    for (const auto& s : pts) {
      while (j < fresh.size() && fresh[j].t < s.t) merged.push_back(fresh[j++]);
      merged.push_back(s);
    }
    while (j < fresh.size()) merged.push_back(fresh[j++]);
    pts = std::move(merged);
  }

  double min_mod = std::abs(pts.front().d);
  double total = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    min_mod = std::min(min_mod, std::abs(pts[i].d));
    total += std::arg(pts[(i + 1) % pts.size()].d / pts[i].d);
  }
  if (min_mod < contour.zero_threshold)
    throw Error(Errc::ContourThroughZero, "|D| = " + std::to_string(min_mod) + " on the contour");
  const double raw = total / (2 * kPi);
  return {static_cast<int>(std::lround(raw)), raw, evaluations, min_mod};
}

int count_unstable(const WaveProfile& profile, const ContourSpec& contour,
                   const EvansOptions& options) {
  return count_unstable_detailed(profile, contour, options).winding;
}

}  // namespace rgsw
