#include "scargeo/metrics.hpp"

#include <cmath>

#include "scargeo/distance_transform.hpp"
#include "scargeo/losses.hpp"

namespace scargeo {

double dsc(const BinaryMask& pred, const BinaryMask& gt) {
  require_compatible(pred, gt, "dsc");
  const std::size_t p = pred.count();
  const std::size_t g = gt.count();
  if (p + g == 0) return 1.0;
  return 2.0 * static_cast<double>(overlap_count(pred, gt)) / static_cast<double>(p + g);
}

BinaryMask surface_voxels(const BinaryMask& mask) {
  const Dims& d = mask.dims();
  BinaryMask out(d, mask.spacing());
  static constexpr Index3 kFaces[6] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  for (std::int64_t k = 0; k < d.nz; ++k) {
    for (std::int64_t j = 0; j < d.ny; ++j) {
      for (std::int64_t i = 0; i < d.nx; ++i) {
        if (!mask.test(i, j, k)) continue;
        for (const Index3& o : kFaces) {
          const Index3 p{i + o.i, j + o.j, k + o.k};
          if (!d.contains(p) || !mask.test(p.i, p.j, p.k)) {
            out.set(i, j, k, true);
            break;
          }
        }
      }
    }
  }
  return out;
}

double assd(const BinaryMask& pred, const BinaryMask& gt, const Spacing& spacing) {
  require_compatible(pred, gt, "assd");
  if (pred.none() || gt.none()) throw EmptyMaskError("ASSD needs two non-empty masks");
  const BinaryMask sp = surface_voxels(pred);
  const BinaryMask sg = surface_voxels(gt);
  const DistanceField to_gt = edt(sg, spacing);
  const DistanceField to_pred = edt(sp, spacing);

  std::vector<double> dists;
  dists.reserve(sp.count() + sg.count());
  for (std::size_t n = 0; n < sp.size(); ++n) {
    if (sp.test(n)) dists.push_back(to_gt[n]);
  }
  for (std::size_t n = 0; n < sg.size(); ++n) {
    if (sg.test(n)) dists.push_back(to_pred[n]);
  }
  return pairwise_sum(dists) / static_cast<double>(dists.size());
}

double assd(const BinaryMask& pred, const BinaryMask& gt, const Spacing& spacing, const BinaryMask& roi) {
  return assd(mask_and(pred, roi), mask_and(gt, roi), spacing);
}

Point3 centroid(const BinaryMask& mask, const Spacing& spacing) {
  const Dims& d = mask.dims();
  double sx = 0.0, sy = 0.0, sz = 0.0;
  std::size_t count = 0;
  for (std::size_t n = 0; n < mask.size(); ++n) {
    if (!mask.test(n)) continue;
    const Index3 p = d.unflat(n);
    sx += static_cast<double>(p.i);
    sy += static_cast<double>(p.j);
    sz += static_cast<double>(p.k);
    ++count;
  }
  if (count == 0) throw EmptyMaskError("centroid of an empty mask");
  const double c = static_cast<double>(count);
  return {sx / c * spacing.sx, sy / c * spacing.sy, sz / c * spacing.sz};
}

double centroid_error(const BinaryMask& pred, const BinaryMask& gt, const Spacing& spacing) {
  require_compatible(pred, gt, "centroid_error");
  const Point3 a = centroid(pred, spacing);
  const Point3 b = centroid(gt, spacing);
  return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
}

AnatomicalErrors anatomical_errors(const BinaryMask& pred, const BinaryMask& gt, const BinaryMask& cavity,
                                   const BinaryMask& wall) {
  require_compatible(pred, gt, "anatomical_errors");
  require_compatible(pred, cavity, "anatomical_errors");
  require_compatible(pred, wall, "anatomical_errors");
  AnatomicalErrors e;
  for (std::size_t n = 0; n < pred.size(); ++n) {
    const bool p = pred.test(n);
    const bool g = gt.test(n);
    e.predicted += p ? 1 : 0;
    e.truth += g ? 1 : 0;
    if (p && !g) {
      e.fp_in_cavity += cavity.test(n) ? 1 : 0;
      e.fp_outside_wall += wall.test(n) ? 0 : 1;
    } else if (!p && g) {
      e.fn_inside_wall += wall.test(n) ? 1 : 0;
    }
  }
  const auto pct = [](std::size_t num, std::size_t den) -> std::optional<double> {
    if (den == 0) return std::nullopt;
    return 100.0 * static_cast<double>(num) / static_cast<double>(den);
  };
  e.fp_in_cavity_pct = pct(e.fp_in_cavity, e.predicted);
  e.fp_outside_wall_pct = pct(e.fp_outside_wall, e.predicted);
  e.fn_inside_wall_pct = pct(e.fn_inside_wall, e.truth);
  return e;
}

MetricsReport evaluate_case(const BinaryMask& pred, const BinaryMask& gt, const BinaryMask& cavity,
                            const BinaryMask& wall, const BinaryMask* assd_roi) {
  MetricsReport r;
  r.dsc = dsc(pred, gt);
  r.anatomical = anatomical_errors(pred, gt, cavity, wall);
  const Spacing& s = gt.spacing();
  if (assd_roi != nullptr) {
    require_compatible(gt, *assd_roi, "evaluate_case");
    const BinaryMask p = mask_and(pred, *assd_roi);
    const BinaryMask g = mask_and(gt, *assd_roi);
    if (!p.none() && !g.none()) r.assd_mm = assd(p, g, s);
  } else if (!pred.none() && !gt.none()) {
    r.assd_mm = assd(pred, gt, s);
  }
  if (!pred.none() && !gt.none()) r.centroid_error_mm = centroid_error(pred, gt, s);
  return r;
}

Summary summarize(const std::vector<std::optional<double>>& values) {
  Summary s;
  double sum = 0.0;
  for (const auto& v : values) {
    if (!v) continue;
    sum += *v;
    ++s.count;
  }
  if (s.count == 0) return s;
  s.mean = sum / static_cast<double>(s.count);
  if (s.count > 1) {
    double ss = 0.0;
    for (const auto& v : values) {
      if (v) ss += (*v - s.mean) * (*v - s.mean);
    }
    s.sd = std::sqrt(ss / static_cast<double>(s.count - 1));
  }
  return s;
}

}  // namespace scargeo
