#pragma once

#include "scargeo/volume.hpp"

namespace scargeo {

/// Distances in millimeters to the nearest voxel of a target set. Zero exactly
/// on the set, positive elsewhere.
class DistanceField : public ScalarVolume {
 public:
  explicit DistanceField(ScalarVolume mm) : ScalarVolume(std::move(mm)) {}
};

/// Exact anisotropic Euclidean distance transform.
///
/// For every voxel x returns min over y in `target` of |(x - y) * spacing|_2.
/// Computed with three separable lower-envelope passes on squared
/// millimeters (x, then y, then z), each weighted by that axis' spacing
/// squared; the square root is taken once at the end.
///
/// Throws EmptyForegroundError if `target` has no voxels.
DistanceField edt(const BinaryMask& target, const Spacing& spacing);
DistanceField edt(const BinaryMask& target);

/// Squared-millimeter variant of edt(); no square root taken.
ScalarVolume edt_squared(const BinaryMask& target, const Spacing& spacing);

/// Largest extent per axis accepted by edt_bruteforce().
inline constexpr std::int64_t kBruteForceMaxExtent = 32;

/// Literal O(n^2) evaluation of the distance definition, for verification.
/// Throws OracleSizeError when any axis exceeds kBruteForceMaxExtent.
DistanceField edt_bruteforce(const BinaryMask& target, const Spacing& spacing);

}  // namespace scargeo
