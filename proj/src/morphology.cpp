#include "scargeo/morphology.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "scargeo/parallel.hpp"

namespace scargeo {

StructuringElement StructuringElement::disc(int radius) {
  if (radius < 1) throw ParameterError("structuring element radius must be >= 1");
  std::vector<Index3> offsets;
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      if (dx * dx + dy * dy <= radius * radius) offsets.push_back({dx, dy, 0});
    }
  }
  return StructuringElement(radius, std::move(offsets));
}

StructuringElement StructuringElement::ellipsoid(const Spacing& spacing, double radius_mm) {
  if (!(radius_mm > 0.0)) throw ParameterError("ellipsoid radius must be positive");
  const auto extent = [&](double s) { return static_cast<int>(std::floor(radius_mm / s)); };
  const int rx = extent(spacing.sx);
  const int ry = extent(spacing.sy);
  const int rz = extent(spacing.sz);
  std::vector<Index3> offsets;
  const double r2 = radius_mm * radius_mm;
  for (int dz = -rz; dz <= rz; ++dz) {
    for (int dy = -ry; dy <= ry; ++dy) {
      for (int dx = -rx; dx <= rx; ++dx) {
        const double x = dx * spacing.sx;
        const double y = dy * spacing.sy;
        const double z = dz * spacing.sz;
        if (x * x + y * y + z * z <= r2) offsets.push_back({dx, dy, dz});
      }
    }
  }
  return StructuringElement(std::max({1, rx, ry, rz}), std::move(offsets));
}

StructuringElement StructuringElement::cross3d() {
  return StructuringElement(1, {{0, 0, -1}, {0, -1, 0}, {-1, 0, 0}, {0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
}

StructuringElement StructuringElement::from_offsets(std::vector<Index3> offsets) {
  std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t>> seen;
  std::int64_t radius = 0;
  for (const auto& o : offsets) {
    seen.insert({o.i, o.j, o.k});
    radius = std::max({radius, std::abs(o.i), std::abs(o.j), std::abs(o.k)});
  }
  if (!seen.count({0, 0, 0})) throw ParameterError("structuring element must contain the zero offset");
  for (const auto& o : offsets) {
    if (!seen.count({-o.i, -o.j, -o.k})) throw ParameterError("structuring element must be symmetric");
  }
  return StructuringElement(static_cast<int>(std::max<std::int64_t>(radius, 1)), std::move(offsets));
}

int wall_radius(const Spacing& spacing, double tau_wall_mm) {
  if (!(tau_wall_mm > 0.0) || !std::isfinite(tau_wall_mm)) {
    throw ParameterError("wall thickness tau must be positive");
  }
  const double r = std::round(tau_wall_mm / spacing.in_plane());
  return std::max(1, static_cast<int>(r));
}

namespace {

// out(x) = OR over in-bounds offsets of in(x + o)     when `any` is true
// out(x) = AND over in-bounds offsets of in(x + o)    otherwise
BinaryMask sweep(const BinaryMask& mask, const StructuringElement& se, bool any) {
  const Dims& d = mask.dims();
  std::vector<std::uint8_t> out(mask.size());
  const auto& offsets = se.offsets();
  parallel_for(static_cast<std::size_t>(d.nz), [&](std::size_t kb, std::size_t ke) {
    for (auto k = static_cast<std::int64_t>(kb); k < static_cast<std::int64_t>(ke); ++k) {
      for (std::int64_t j = 0; j < d.ny; ++j) {
        for (std::int64_t i = 0; i < d.nx; ++i) {
          bool result = !any;
          for (const Index3& o : offsets) {
            const Index3 p{i + o.i, j + o.j, k + o.k};
            if (!d.contains(p)) continue;
            const bool v = mask.test(p.i, p.j, p.k);
            if (any && v) {
              result = true;
              break;
            }
            if (!any && !v) {
              result = false;
              break;
            }
          }
          out[d.flat(i, j, k)] = result ? 1 : 0;
        }
      }
    }
  });
  return BinaryMask(d, mask.spacing(), std::move(out));
}

}  // namespace

BinaryMask dilate(const BinaryMask& mask, const StructuringElement& se) { return sweep(mask, se, true); }

BinaryMask erode(const BinaryMask& mask, const StructuringElement& se) { return sweep(mask, se, false); }

StructuringElement wall_element(const Spacing& spacing, double tau_wall_mm, ElementShape shape) {
  const int r = wall_radius(spacing, tau_wall_mm);
  if (shape == ElementShape::disc) return StructuringElement::disc(r);
  return StructuringElement::ellipsoid(spacing, tau_wall_mm);
}

BinaryMask wall_band(const BinaryMask& cavity, const Spacing& spacing, double tau_wall_mm, ElementShape shape) {
  if (cavity.none()) throw EmptyForegroundError("wall band of an empty cavity");
  const StructuringElement se = wall_element(spacing, tau_wall_mm, shape);
  return mask_xor(dilate(cavity, se), erode(cavity, se));
}

}  // namespace scargeo
