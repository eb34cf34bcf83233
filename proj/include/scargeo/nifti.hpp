#pragma once

// NIfTI-1 single-file volumes (.nii, .nii.gz), plus a minimal raw
// header-and-blob format (.rawvol) for debugging fixtures.
//
// Masks are written as uint8, scalar volumes as float32. Orientation fields
// (qform/sform) read from one file can be handed back to the writer so
// derived volumes keep the source affine.

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "scargeo/volume.hpp"

namespace scargeo {

struct NiftiGeometry {
  std::int16_t qform_code = 1;
  std::int16_t sform_code = 1;
  float qfac = 1.0f;
  std::array<float, 3> quatern{0.0f, 0.0f, 0.0f};
  std::array<float, 3> qoffset{0.0f, 0.0f, 0.0f};
  std::array<float, 4> srow_x{0.0f, 0.0f, 0.0f, 0.0f};
  std::array<float, 4> srow_y{0.0f, 0.0f, 0.0f, 0.0f};
  std::array<float, 4> srow_z{0.0f, 0.0f, 0.0f, 0.0f};
  std::uint8_t xyzt_units = 2;  // millimeters

  /// Axis-aligned affine with origin at voxel (0, 0, 0).
  static NiftiGeometry from_spacing(const Spacing& spacing);
};

namespace nifti_type {
inline constexpr std::int16_t uint8 = 2;
inline constexpr std::int16_t int16 = 4;
inline constexpr std::int16_t int32 = 8;
inline constexpr std::int16_t float32 = 16;
inline constexpr std::int16_t float64 = 64;
inline constexpr std::int16_t int8 = 256;
inline constexpr std::int16_t uint16 = 512;
inline constexpr std::int16_t uint32 = 768;
}  // namespace nifti_type

/// A decoded volume file: voxel values (after intensity scaling) in x-fastest
/// order together with the header fields the library cares about.
struct VolumeFile {
  Dims dims;
  Spacing spacing;
  NiftiGeometry geometry;
  std::int16_t datatype = nifti_type::float32;
  std::vector<double> values;

  ScalarVolume to_scalar() const;
  /// Throws NonBinaryMaskError for values outside {0, 1} unless
  /// `labels_to_binary`, which maps every non-zero value to 1.
  BinaryMask to_mask(bool labels_to_binary = false) const;
};

/// Reads .nii, .nii.gz or .rawvol (detected from content). Throws FormatError.
VolumeFile read_volume(const std::filesystem::path& path);
ScalarVolume read_scalar(const std::filesystem::path& path);
BinaryMask read_mask(const std::filesystem::path& path, bool labels_to_binary = false);

/// The format follows the extension: .nii.gz is gzip-compressed, .rawvol is
/// the raw debug format, anything else plain NIfTI-1.
void write_scalar(const std::filesystem::path& path, const ScalarVolume& volume,
                  const NiftiGeometry* geometry = nullptr);
void write_mask(const std::filesystem::path& path, const BinaryMask& mask, const NiftiGeometry* geometry = nullptr);

}  // namespace scargeo
