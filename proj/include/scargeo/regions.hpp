#pragma once

#include "scargeo/morphology.hpp"
#include "scargeo/volume.hpp"

namespace scargeo {

inline constexpr double kDefaultTauBandMm = 3.0;

/// Voxels within `tau_band_mm` of the wall surface: |wall SDM| <= tau.
/// The threshold applies to the SDM in millimeters, not the normalized one.
BinaryMask boundary_uncertainty_band(const ScalarVolume& wall_sdm_mm, double tau_band_mm = kDefaultTauBandMm);

/// Voxelwise union of the wall ROI and the uncertainty band.
BinaryMask effective_region(const BinaryMask& roi_wall, const BinaryMask& bub);

struct SupervisionRegions {
  BinaryMask roi_wall;   // wall band from the predicted cavity
  BinaryMask bub;        // boundary uncertainty band
  BinaryMask effective;  // roi_wall | bub
  double tau_band_mm;
};

/// Derives all supervision masks from a (predicted) cavity.
/// Throws DegenerateMaskError for an empty or full cavity.
SupervisionRegions build_regions(const BinaryMask& cavity_pred, const Spacing& spacing,
                                 double tau_wall_mm = 2.0, double tau_band_mm = kDefaultTauBandMm,
                                 ElementShape shape = ElementShape::disc);

}  // namespace scargeo
