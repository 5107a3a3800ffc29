#include <json.hpp>

#include "rgsw/spectral.hpp"

namespace rgsw {

std::string report_to_json(const StabilityReport& r) {
  nlohmann::ordered_json j;
  j["mode"] = to_string(r.mode);
  j["cf_ge_ct"] = r.cf_ct_ok;
  j["froude_minus"] = r.froude_minus;
  j["froude_plus"] = r.froude_plus;
  j["discontinuous"] = r.discontinuous;
  j["stable"] = r.stable;
  j["strongly_stable"] = r.strongly_stable ? nlohmann::ordered_json(*r.strongly_stable) : nullptr;
  j["essential_range"] = {r.essential_lo, r.essential_hi};
  j["f1_minus"] = r.f1_minus;
  j["f1_plus"] = r.f1_plus;
  j["theta_minus"] = r.theta_minus;
  j["theta_plus"] = r.theta_plus;
  j["evans_winding"] = r.evans_winding ? nlohmann::ordered_json(*r.evans_winding) : nullptr;
  if (r.contour) {
    j["contour"] = {{"re_min", r.contour->re_min},
                    {"re_max", r.contour->re_max},
                    {"im_max", r.contour->im_max},
                    {"indent", r.contour->indent}};
  } else {
    j["contour"] = nullptr;
  }
  return j.dump(2);
}

}  // namespace rgsw
