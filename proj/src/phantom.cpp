#include "scargeo/phantom.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace scargeo {

Point3 PhantomSpec::center() const {
  if (center_mm) return *center_mm;
  return {0.5 * static_cast<double>(dims.nx - 1) * spacing.sx, 0.5 * static_cast<double>(dims.ny - 1) * spacing.sy,
          0.5 * static_cast<double>(dims.nz - 1) * spacing.sz};
}

void PhantomSpec::validate() const {
  if (!(wall_thickness_mm > 0.0)) throw SpecError("wall thickness must be positive");
  const double axes[3] = {semi_axes_mm.x, semi_axes_mm.y, semi_axes_mm.z};
  const Point3 c = center();
  const double centers[3] = {c.x, c.y, c.z};
  for (int a = 0; a < 3; ++a) {
    if (!(axes[a] > wall_thickness_mm)) throw SpecError("semi-axes must exceed the wall thickness");
    const double outer = axes[a] + 0.5 * wall_thickness_mm;
    const double extent = static_cast<double>(dims[a] - 1) * spacing[a];
    if (centers[a] - outer < 0.0 || centers[a] + outer > extent) {
      throw SpecError("wall shell does not fit in the grid along axis " + std::to_string(a));
    }
  }
  for (const ScarPatch& p : patches) {
    if (!(p.half_width_rad > 0.0) || p.half_width_rad > std::numbers::pi) {
      throw SpecError("scar patch width must lie in (0, pi]");
    }
    if (!(p.thickness_fraction > 0.0) || p.thickness_fraction > 1.0) {
      throw SpecError("scar thickness fraction must lie in (0, 1]");
    }
  }
  if (!(noise_sigma >= 0.0)) throw SpecError("noise sigma must be non-negative");
}

namespace {

// Normalized radius of point d (relative to the center) for an ellipsoid whose
// semi-axes are the PhantomSpec axes grown by `grow_mm`.
double level(const double d[3], const double axes[3], double grow_mm) {
  double s = 0.0;
  for (int a = 0; a < 3; ++a) {
    const double t = d[a] / (axes[a] + grow_mm);
    s += t * t;
  }
  return std::sqrt(s);
}

}  // namespace

Phantom generate(const PhantomSpec& spec) {
  spec.validate();
  const Dims& dims = spec.dims;
  const Spacing& s = spec.spacing;
  const Point3 c = spec.center();
  const double axes[3] = {spec.semi_axes_mm.x, spec.semi_axes_mm.y, spec.semi_axes_mm.z};
  const double half = 0.5 * spec.wall_thickness_mm;

  struct Direction {
    double x, y, z, cos_width, inner_grow;
  };
  std::vector<Direction> dirs;
  for (const ScarPatch& p : spec.patches) {
    dirs.push_back({std::cos(p.elevation_rad) * std::cos(p.azimuth_rad),
                    std::cos(p.elevation_rad) * std::sin(p.azimuth_rad), std::sin(p.elevation_rad),
                    std::cos(p.half_width_rad), -half + p.thickness_fraction * spec.wall_thickness_mm});
  }

  BinaryMask cavity(dims, s);
  BinaryMask wall(dims, s);
  BinaryMask scar(dims, s);
  std::vector<double> image(dims.size());
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> noise(0.0, 1.0);

  for (std::int64_t k = 0; k < dims.nz; ++k) {
    for (std::int64_t j = 0; j < dims.ny; ++j) {
      for (std::int64_t i = 0; i < dims.nx; ++i) {
        const double d[3] = {static_cast<double>(i) * s.sx - c.x, static_cast<double>(j) * s.sy - c.y,
                             static_cast<double>(k) * s.sz - c.z};
        const std::size_t n = dims.flat(i, j, k);
        const bool in_cavity = level(d, axes, 0.0) <= 1.0;
        const bool in_wall = level(d, axes, -half) > 1.0 && level(d, axes, half) <= 1.0;
        bool in_scar = false;
        if (in_wall) {
          const double u[3] = {d[0] / axes[0], d[1] / axes[1], d[2] / axes[2]};
          const double norm = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
          for (const Direction& p : dirs) {
            const double cosang = (u[0] * p.x + u[1] * p.y + u[2] * p.z) / norm;
            if (cosang >= p.cos_width && level(d, axes, p.inner_grow) <= 1.0) {
              in_scar = true;
              break;
            }
          }
        }
        cavity.set(n, in_cavity);
        wall.set(n, in_wall);
        scar.set(n, in_scar);
        double base = kBackgroundLevel;
        if (in_scar) {
          base = kScarLevel;
        } else if (in_wall) {
          base = kWallLevel;
        } else if (in_cavity) {
          base = kBloodLevel;
        }
        image[n] = base + (spec.noise_sigma > 0.0 ? spec.noise_sigma * noise(rng) : 0.0);
      }
    }
  }
  return Phantom{ScalarVolume(dims, s, std::move(image)), std::move(cavity), std::move(wall), std::move(scar)};
}

namespace {

// First `count` entries of a seeded Fisher-Yates shuffle of `pool`.
std::vector<std::size_t> draw(std::vector<std::size_t> pool, std::size_t count, std::mt19937_64& rng,
                              const char* what) {
  if (pool.size() < count) {
    throw InsufficientVoxelsError(std::string("not enough voxels to plant ") + what + ": requested " +
                                  std::to_string(count) + ", available " + std::to_string(pool.size()));
  }
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

}  // namespace

BinaryMask plant_errors(const BinaryMask& scar, const BinaryMask& cavity, const BinaryMask& wall,
                        const PlantCounts& counts, std::uint64_t seed) {
  require_compatible(scar, cavity, "plant_errors");
  require_compatible(scar, wall, "plant_errors");
  std::vector<std::size_t> in_cavity, outside, scar_in_wall;
  for (std::size_t n = 0; n < scar.size(); ++n) {
    const bool y = scar.test(n);
    const bool cav = cavity.test(n);
    const bool w = wall.test(n);
    if (!y && cav && w) in_cavity.push_back(n);
    if (!y && !cav && !w) outside.push_back(n);
    if (y && w) scar_in_wall.push_back(n);
  }
  std::mt19937_64 rng(seed);
  BinaryMask pred = scar;
  for (std::size_t n : draw(std::move(in_cavity), counts.fp_in_cavity, rng, "cavity false positives")) {
    pred.set(n, true);
  }
  for (std::size_t n : draw(std::move(outside), counts.fp_outside, rng, "outside false positives")) {
    pred.set(n, true);
  }
  for (std::size_t n : draw(std::move(scar_in_wall), counts.fn_inside, rng, "wall false negatives")) {
    pred.set(n, false);
  }
  return pred;
}

}  // namespace scargeo
