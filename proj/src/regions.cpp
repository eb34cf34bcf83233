#include "scargeo/regions.hpp"

#include <cmath>

#include "scargeo/sdm.hpp"

namespace scargeo {

BinaryMask boundary_uncertainty_band(const ScalarVolume& wall_sdm_mm, double tau_band_mm) {
  if (!(tau_band_mm > 0.0) || !std::isfinite(tau_band_mm)) {
    throw ParameterError("uncertainty band width must be positive");
  }
  BinaryMask band(wall_sdm_mm.dims(), wall_sdm_mm.spacing());
  for (std::size_t n = 0; n < band.size(); ++n) band.set(n, std::abs(wall_sdm_mm[n]) <= tau_band_mm);
  return band;
}

BinaryMask effective_region(const BinaryMask& roi_wall, const BinaryMask& bub) { return mask_or(roi_wall, bub); }

SupervisionRegions build_regions(const BinaryMask& cavity_pred, const Spacing& spacing, double tau_wall_mm,
                                 double tau_band_mm, ElementShape shape) {
  if (cavity_pred.none() || cavity_pred.all()) {
    throw DegenerateMaskError("supervision regions need a cavity that is neither empty nor full");
  }
  if (!(tau_band_mm > 0.0)) throw ParameterError("uncertainty band width must be positive");
  BinaryMask roi = wall_band(cavity_pred, spacing, tau_wall_mm, shape);
  BinaryMask bub = boundary_uncertainty_band(wall_sdm(roi, spacing), tau_band_mm);
  BinaryMask eff = effective_region(roi, bub);
  return SupervisionRegions{std::move(roi), std::move(bub), std::move(eff), tau_band_mm};
}

}  // namespace scargeo
