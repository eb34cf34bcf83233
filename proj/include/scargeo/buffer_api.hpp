#pragma once

// Entry points over flat contiguous buffers, for embedding the kernels in a
// host training loop. Buffers are x-fastest; a C-order array of shape
// (nz, ny, nx) has exactly this layout. Every call validates buffer lengths
// against `dims` before doing any work and throws ShapeError on mismatch.

#include <cstdint>
#include <span>
#include <vector>

#include "scargeo/losses.hpp"
#include "scargeo/morphology.hpp"
#include "scargeo/volume.hpp"

namespace scargeo::buffer {

struct SdmBuffers {
  std::vector<double> cavity_sdm;  // normalized
  std::vector<double> wall_sdm;    // normalized
};

struct RegionBuffers {
  std::vector<std::uint8_t> roi_wall;
  std::vector<std::uint8_t> bub;
  std::vector<std::uint8_t> effective;
};

BinaryMask mask_from(std::span<const std::uint8_t> data, const Dims& dims, const Spacing& spacing);
ScalarVolume volume_from(std::span<const double> data, const Dims& dims, const Spacing& spacing);
ScalarVolume volume_from(std::span<const float> data, const Dims& dims, const Spacing& spacing);

SdmBuffers sdm(std::span<const std::uint8_t> cavity, const Dims& dims, const Spacing& spacing, double tau_wall_mm,
               double clip_mm, ElementShape shape = ElementShape::disc);

RegionBuffers regions(std::span<const std::uint8_t> cavity, const Dims& dims, const Spacing& spacing,
                      double tau_wall_mm, double tau_band_mm, ElementShape shape = ElementShape::disc);

/// `roi` is used as given; the caller picks the wall ROI or the effective region.
LossReport loss(std::span<const double> logits, std::span<const std::uint8_t> gt, std::span<const std::uint8_t> roi,
                const Dims& dims, const Spacing& spacing, const LossConfig& cfg, bool with_gradient);

}  // namespace scargeo::buffer
