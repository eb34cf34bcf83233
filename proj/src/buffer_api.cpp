#include "scargeo/buffer_api.hpp"

#include <string>

#include "scargeo/regions.hpp"
#include "scargeo/sdm.hpp"

namespace scargeo::buffer {
namespace {

void check_length(std::size_t got, const Dims& dims, const char* what) {
  if (got != dims.size()) {
    throw ShapeError(std::string(what) + ": buffer holds " + std::to_string(got) + " elements, dims need " +
                     std::to_string(dims.size()));
  }
}

std::vector<std::uint8_t> bytes_of(const BinaryMask& m) { return {m.values().begin(), m.values().end()}; }

}  // namespace

BinaryMask mask_from(std::span<const std::uint8_t> data, const Dims& dims, const Spacing& spacing) {
  check_length(data.size(), dims, "mask");
  return BinaryMask(dims, spacing, std::vector<std::uint8_t>(data.begin(), data.end()));
}

ScalarVolume volume_from(std::span<const double> data, const Dims& dims, const Spacing& spacing) {
  check_length(data.size(), dims, "volume");
  return ScalarVolume(dims, spacing, std::vector<double>(data.begin(), data.end()));
}

ScalarVolume volume_from(std::span<const float> data, const Dims& dims, const Spacing& spacing) {
  check_length(data.size(), dims, "volume");
  return ScalarVolume(dims, spacing, std::vector<double>(data.begin(), data.end()));
}

SdmBuffers sdm(std::span<const std::uint8_t> cavity, const Dims& dims, const Spacing& spacing, double tau_wall_mm,
               double clip_mm, ElementShape shape) {
  const SdmPair pair = build_sdm_pair(mask_from(cavity, dims, spacing), spacing, tau_wall_mm, clip_mm, shape);
  return {{pair.cavity_sdm.values().begin(), pair.cavity_sdm.values().end()},
          {pair.wall_sdm.values().begin(), pair.wall_sdm.values().end()}};
}

RegionBuffers regions(std::span<const std::uint8_t> cavity, const Dims& dims, const Spacing& spacing,
                      double tau_wall_mm, double tau_band_mm, ElementShape shape) {
  const SupervisionRegions r = build_regions(mask_from(cavity, dims, spacing), spacing, tau_wall_mm, tau_band_mm, shape);
  return {bytes_of(r.roi_wall), bytes_of(r.bub), bytes_of(r.effective)};
}

LossReport loss(std::span<const double> logits, std::span<const std::uint8_t> gt, std::span<const std::uint8_t> roi,
                const Dims& dims, const Spacing& spacing, const LossConfig& cfg, bool with_gradient) {
  check_length(logits.size(), dims, "logits");
  check_length(gt.size(), dims, "gt");
  check_length(roi.size(), dims, "roi");
  return total_loss(volume_from(logits, dims, spacing), mask_from(gt, dims, spacing), mask_from(roi, dims, spacing),
                    cfg, with_gradient);
}

}  // namespace scargeo::buffer
