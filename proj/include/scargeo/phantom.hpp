#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "scargeo/volume.hpp"

namespace scargeo {

/// Angular patch of scar on the wall shell. Directions are measured in the
/// ellipsoid's normalized frame (x/a, y/b, z/c).
struct ScarPatch {
  double azimuth_rad = 0.0;
  double elevation_rad = 0.0;
  double half_width_rad = 0.3;     // angular radius around the patch center
  double thickness_fraction = 1.0;  // share of the shell, from its inner surface
};

/// Synthetic atrium: an ellipsoidal blood pool, a shell of constant thickness
/// centered on the cavity surface, and scar patches inside the shell.
struct PhantomSpec {
  Dims dims{96, 96, 40};
  Spacing spacing{0.625, 0.625, 2.5};
  Point3 semi_axes_mm{20.0, 17.0, 30.0};
  std::optional<Point3> center_mm;  // grid center when unset
  double wall_thickness_mm = 2.0;
  std::vector<ScarPatch> patches{{0.0, 0.0, 0.35, 1.0}, {2.2, 0.4, 0.25, 0.6}, {-2.0, -0.5, 0.3, 0.8}};
  double noise_sigma = 0.05;
  std::uint64_t seed = 7;

  Point3 center() const;
  /// Throws SpecError on inconsistent geometry.
  void validate() const;
};

struct Phantom {
  ScalarVolume intensity;
  BinaryMask cavity;
  BinaryMask wall;
  BinaryMask scar;
};

Phantom generate(const PhantomSpec& spec);

/// Intensity levels before noise.
inline constexpr double kBackgroundLevel = 0.15;
inline constexpr double kWallLevel = 0.35;
inline constexpr double kBloodLevel = 0.6;
inline constexpr double kScarLevel = 0.95;

struct PlantCounts {
  std::size_t fp_in_cavity = 0;
  std::size_t fp_outside = 0;
  std::size_t fn_inside = 0;
};

/// Corrupts `scar` into a prediction with exactly the requested errors, each
/// landing in exactly one anatomical error category:
///   fp_in_cavity  new positives drawn from cavity & wall & ~scar
///   fp_outside    new positives drawn from ~wall & ~cavity & ~scar
///   fn_inside     scar voxels inside the wall switched off
/// Throws InsufficientVoxelsError when a pool is too small.
BinaryMask plant_errors(const BinaryMask& scar, const BinaryMask& cavity, const BinaryMask& wall,
                        const PlantCounts& counts, std::uint64_t seed);

}  // namespace scargeo
