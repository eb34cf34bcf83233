#pragma once

#include "scargeo/morphology.hpp"
#include "scargeo/volume.hpp"

namespace scargeo {

inline constexpr double kDefaultClipMm = 12.0;
inline constexpr double kDefaultTauWallMm = 2.0;

/// Signed distance in millimeters: positive inside `region`, negative outside.
/// Inside voxels carry the distance to the nearest outside voxel and vice
/// versa, so no voxel is ever exactly zero; the boundary sits between voxels
/// of opposite sign.
///
/// Throws DegenerateMaskError when `region` is empty or covers the grid.
ScalarVolume signed_distance(const BinaryMask& region, const Spacing& spacing);

/// Signed distance to the cavity boundary (positive in the blood pool).
ScalarVolume cavity_sdm(const BinaryMask& cavity, const Spacing& spacing);

/// Signed distance to the wall band (positive inside the band).
ScalarVolume wall_sdm(const BinaryMask& wall, const Spacing& spacing);

/// clip(v, -c, c) / c for every voxel. Throws ParameterError unless c > 0.
ScalarVolume clip_normalize(const ScalarVolume& sdm_mm, double clip_mm = kDefaultClipMm);

/// Geometry channels handed to the scar network, plus what produced them.
struct SdmPair {
  ScalarVolume cavity_sdm;     // normalized, [-1, 1]
  ScalarVolume wall_sdm;       // normalized, [-1, 1]
  ScalarVolume cavity_sdm_mm;
  ScalarVolume wall_sdm_mm;
  BinaryMask wall;
  double clip_mm;
};

SdmPair build_sdm_pair(const BinaryMask& cavity, const Spacing& spacing, double tau_wall_mm = kDefaultTauWallMm,
                       double clip_mm = kDefaultClipMm, ElementShape shape = ElementShape::disc);

}  // namespace scargeo
