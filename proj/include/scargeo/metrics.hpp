#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "scargeo/volume.hpp"

namespace scargeo {

/// 2|P & G| / (|P| + |G|); 1 when both masks are empty.
double dsc(const BinaryMask& pred, const BinaryMask& gt);

/// Foreground voxels with at least one 6-connected background neighbor.
/// Neighbors beyond the grid border count as background.
BinaryMask surface_voxels(const BinaryMask& mask);

/// Average symmetric surface distance in millimeters.
/// Throws EmptyMaskError when either mask is empty.
double assd(const BinaryMask& pred, const BinaryMask& gt, const Spacing& spacing);

/// ASSD after restricting both masks to `roi`.
double assd(const BinaryMask& pred, const BinaryMask& gt, const Spacing& spacing, const BinaryMask& roi);

/// Unweighted mean of voxel centers in world coordinates.
Point3 centroid(const BinaryMask& mask, const Spacing& spacing);

/// Distance between the world centroids of two non-empty masks.
double centroid_error(const BinaryMask& pred, const BinaryMask& gt, const Spacing& spacing);

struct AnatomicalErrors {
  std::size_t fp_in_cavity = 0;     // |FP & cavity|
  std::size_t fp_outside_wall = 0;  // |FP & ~wall|
  std::size_t fn_inside_wall = 0;   // |FN & wall|
  std::size_t predicted = 0;        // |pred|
  std::size_t truth = 0;            // |gt|
  // Percentages; empty when the denominator is zero.
  std::optional<double> fp_in_cavity_pct;
  std::optional<double> fp_outside_wall_pct;
  std::optional<double> fn_inside_wall_pct;
};

/// FP rates are normalized by |pred|, the FN rate by |gt|.
AnatomicalErrors anatomical_errors(const BinaryMask& pred, const BinaryMask& gt, const BinaryMask& cavity,
                                   const BinaryMask& wall);

struct MetricsReport {
  double dsc = 0.0;
  std::optional<double> assd_mm;            // empty if either mask is empty
  std::optional<double> centroid_error_mm;  // empty if either mask is empty
  AnatomicalErrors anatomical;
};

/// All per-case metrics. When `assd_roi` is given, ASSD is computed on the
/// masks restricted to it.
MetricsReport evaluate_case(const BinaryMask& pred, const BinaryMask& gt, const BinaryMask& cavity,
                            const BinaryMask& wall, const BinaryMask* assd_roi = nullptr);

struct Summary {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation (n - 1); 0 for a single value
  std::size_t count = 0;
};

/// Mean and SD over the defined entries only.
Summary summarize(const std::vector<std::optional<double>>& values);

}  // namespace scargeo
