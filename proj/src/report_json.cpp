#include "scargeo/report_json.hpp"

#include <cstdio>
#include <cstdlib>

namespace scargeo::report {

double round9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return std::strtod(buf, nullptr);
}

Json number(double v) { return round9(v); }

Json number(const std::optional<double>& v) { return v ? Json(round9(*v)) : Json(kUndefined); }

Json to_json(const LossReport& r) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["dice_roi"] = number(r.dice_roi);
  j["wbce_roi"] = number(r.wbce_roi);
  j["dice_global"] = number(r.dice_global);
  j["combined"] = number(r.combined);
  j["total"] = number(r.total);
  j["w_plus"] = number(r.w_plus);
  j["P"] = r.P;
  j["N"] = r.N;
  return j;
}

Json to_json(const MetricsReport& r) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["dsc"] = number(r.dsc);
  j["assd_mm"] = number(r.assd_mm);
  j["centroid_error_mm"] = number(r.centroid_error_mm);
  j["fp_in_cavity_pct"] = number(r.anatomical.fp_in_cavity_pct);
  j["fp_outside_wall_pct"] = number(r.anatomical.fp_outside_wall_pct);
  j["fn_inside_wall_pct"] = number(r.anatomical.fn_inside_wall_pct);
  j["counts"] = Json{{"predicted", r.anatomical.predicted},
                     {"truth", r.anatomical.truth},
                     {"fp_in_cavity", r.anatomical.fp_in_cavity},
                     {"fp_outside_wall", r.anatomical.fp_outside_wall},
                     {"fn_inside_wall", r.anatomical.fn_inside_wall}};
  return j;
}

Json to_json(const Summary& s) {
  Json j;
  j["mean"] = s.count ? Json(round9(s.mean)) : Json(kUndefined);
  j["sd"] = s.count ? Json(round9(s.sd)) : Json(kUndefined);
  j["n"] = s.count;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace scargeo::report
