#pragma once

#include <vector>

#include "scargeo/volume.hpp"

namespace scargeo {

/// Flat binary structuring element given as integer voxel offsets.
/// Always contains the zero offset and is point-symmetric.
class StructuringElement {
 public:
  /// Disc of voxel radius r in the x/y plane (dx^2 + dy^2 <= r^2, dz = 0).
  static StructuringElement disc(int radius);
  /// Offsets o with |o * spacing|_2 <= radius_mm, extending along all three axes.
  static StructuringElement ellipsoid(const Spacing& spacing, double radius_mm);
  /// The zero offset plus its six face neighbors.
  static StructuringElement cross3d();
  /// Validates the zero-offset and symmetry invariants.
  static StructuringElement from_offsets(std::vector<Index3> offsets);

  int radius_voxels() const { return radius_; }
  const std::vector<Index3>& offsets() const { return offsets_; }

 private:
  StructuringElement(int radius, std::vector<Index3> offsets) : radius_(radius), offsets_(std::move(offsets)) {}

  int radius_;
  std::vector<Index3> offsets_;
};

enum class ElementShape { disc, ellipsoid };

/// Voxel radius giving a band of `tau_wall_mm` for the in-plane spacing:
/// max(1, round(tau / min(sx, sy))), rounding halves away from zero.
int wall_radius(const Spacing& spacing, double tau_wall_mm);

// Border convention: voxels beyond the grid are background for dilation and
// are skipped by erosion's "all offsets" test. With this pair,
// erode(m) == complement(dilate(complement(m))) holds voxel for voxel.
BinaryMask dilate(const BinaryMask& mask, const StructuringElement& se);
BinaryMask erode(const BinaryMask& mask, const StructuringElement& se);

/// Element used for the wall band of the given thickness.
StructuringElement wall_element(const Spacing& spacing, double tau_wall_mm, ElementShape shape);

/// dilate(cavity) XOR erode(cavity): a shell straddling the cavity boundary.
/// Throws EmptyForegroundError for an empty cavity.
BinaryMask wall_band(const BinaryMask& cavity, const Spacing& spacing, double tau_wall_mm,
                     ElementShape shape = ElementShape::disc);

}  // namespace scargeo
