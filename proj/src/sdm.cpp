#include "scargeo/sdm.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "scargeo/distance_transform.hpp"

namespace scargeo {

ScalarVolume signed_distance(const BinaryMask& region, const Spacing& spacing) {
  if (region.none()) throw DegenerateMaskError("signed distance of an empty mask");
  if (region.all()) throw DegenerateMaskError("signed distance of a mask covering the whole grid");

  const DistanceField to_region = edt(region, spacing);
  const DistanceField to_outside = edt(complement(region), spacing);
  std::vector<double> out(region.size());
  for (std::size_t n = 0; n < out.size(); ++n) {
    out[n] = region.test(n) ? to_outside[n] : -to_region[n];
  }
  return ScalarVolume(region.dims(), spacing, std::move(out));
}

ScalarVolume cavity_sdm(const BinaryMask& cavity, const Spacing& spacing) { return signed_distance(cavity, spacing); }

ScalarVolume wall_sdm(const BinaryMask& wall, const Spacing& spacing) { return signed_distance(wall, spacing); }

ScalarVolume clip_normalize(const ScalarVolume& sdm_mm, double clip_mm) {
  if (!(clip_mm > 0.0) || !std::isfinite(clip_mm)) throw ParameterError("clip magnitude must be positive");
  std::vector<double> out(sdm_mm.size());
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = std::clamp(sdm_mm[n], -clip_mm, clip_mm) / clip_mm;
  return ScalarVolume(sdm_mm.dims(), sdm_mm.spacing(), std::move(out));
}

SdmPair build_sdm_pair(const BinaryMask& cavity, const Spacing& spacing, double tau_wall_mm, double clip_mm,
                       ElementShape shape) {
  if (!(clip_mm > 0.0)) throw ParameterError("clip magnitude must be positive");
  ScalarVolume cav_mm = cavity_sdm(cavity, spacing);
  BinaryMask wall = wall_band(cavity, spacing, tau_wall_mm, shape);
  ScalarVolume wall_mm = wall_sdm(wall, spacing);
  ScalarVolume cav_n = clip_normalize(cav_mm, clip_mm);
  ScalarVolume wall_n = clip_normalize(wall_mm, clip_mm);
  return SdmPair{std::move(cav_n), std::move(wall_n), std::move(cav_mm), std::move(wall_mm), std::move(wall),
                 clip_mm};
}

}  // namespace scargeo
