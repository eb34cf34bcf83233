#pragma once

// Voxel-grid data model shared by every module.
//
// Memory layout: x is the fastest-varying axis, then y, then z, so the voxel
// (i, j, k) lives at flat offset i + nx * (j + ny * k). This matches the
// on-disk order of NIfTI-1 and no transposition happens anywhere.
//
// World coordinates are affine in the voxel index with the origin at voxel
// (0, 0, 0): world(i, j, k) = (i * sx, j * sy, k * sz) in millimeters.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "scargeo/error.hpp"

namespace scargeo {

/// Physical voxel size in millimeters along x, y and z.
struct Spacing {
  double sx = 1.0;
  double sy = 1.0;
  double sz = 1.0;

  Spacing() = default;
  Spacing(double x, double y, double z);

  double operator[](int axis) const { return axis == 0 ? sx : (axis == 1 ? sy : sz); }

  /// Smallest in-plane (x/y) spacing.
  double in_plane() const { return sx < sy ? sx : sy; }

  Spacing scaled(double k) const { return {sx * k, sy * k, sz * k}; }
};

/// Relative comparison; header spacing is usually stored as float32.
bool spacing_equal(const Spacing& a, const Spacing& b, double rel_tol = 1e-6);

struct Index3 {
  std::int64_t i = 0;
  std::int64_t j = 0;
  std::int64_t k = 0;

  friend Index3 operator+(Index3 a, Index3 b) { return {a.i + b.i, a.j + b.j, a.k + b.k}; }
  friend Index3 operator-(Index3 a, Index3 b) { return {a.i - b.i, a.j - b.j, a.k - b.k}; }
  friend bool operator==(const Index3&, const Index3&) = default;
};

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Point3&, const Point3&) = default;
};

struct Dims {
  std::int64_t nx = 0;
  std::int64_t ny = 0;
  std::int64_t nz = 0;

  Dims() = default;
  Dims(std::int64_t x, std::int64_t y, std::int64_t z);

  std::int64_t operator[](int axis) const { return axis == 0 ? nx : (axis == 1 ? ny : nz); }
  std::size_t size() const { return static_cast<std::size_t>(nx * ny * nz); }
  bool contains(const Index3& p) const {
    return p.i >= 0 && p.j >= 0 && p.k >= 0 && p.i < nx && p.j < ny && p.k < nz;
  }
  std::size_t flat(std::int64_t i, std::int64_t j, std::int64_t k) const {
    return static_cast<std::size_t>(i + nx * (j + ny * k));
  }
  Index3 unflat(std::size_t idx) const;

  friend bool operator==(const Dims&, const Dims&) = default;
};

/// Index to millimeters. Throws IndexError when `index` lies outside `dims`.
Point3 voxel_to_world(const Dims& dims, const Spacing& spacing, const Index3& index);

template <typename T>
class VoxelGrid {
 public:
  using value_type = T;

  const Dims& dims() const { return dims_; }
  const Spacing& spacing() const { return spacing_; }
  std::size_t size() const { return data_.size(); }

  T operator[](std::size_t idx) const { return data_[idx]; }
  T at(std::int64_t i, std::int64_t j, std::int64_t k) const {
    if (!dims_.contains({i, j, k})) throw IndexError("voxel index out of range");
    return data_[dims_.flat(i, j, k)];
  }
  std::span<const T> values() const { return data_; }

  Point3 world(const Index3& p) const { return voxel_to_world(dims_, spacing_, p); }

 protected:
  VoxelGrid(const Dims& dims, const Spacing& spacing, std::vector<T> data)
      : dims_(dims), spacing_(spacing), data_(std::move(data)) {
    if (data_.size() != dims_.size()) throw ShapeError("buffer length does not match dims");
  }

  Dims dims_;
  Spacing spacing_;
  std::vector<T> data_;
};

/// Real value per voxel: images, signed distance maps, probabilities, logits.
/// Values are always finite.
class ScalarVolume : public VoxelGrid<double> {
 public:
  ScalarVolume(const Dims& dims, const Spacing& spacing, double fill = 0.0);
  ScalarVolume(const Dims& dims, const Spacing& spacing, std::vector<double> values);

  void set(std::size_t idx, double v);
  void set(std::int64_t i, std::int64_t j, std::int64_t k, double v) { set(dims_.flat(i, j, k), v); }
};

/// One byte per voxel, each exactly 0 or 1.
class BinaryMask : public VoxelGrid<std::uint8_t> {
 public:
  BinaryMask(const Dims& dims, const Spacing& spacing);
  /// Throws NonBinaryMaskError if any byte is not 0 or 1.
  BinaryMask(const Dims& dims, const Spacing& spacing, std::vector<std::uint8_t> values);

  bool test(std::size_t idx) const { return data_[idx] != 0; }
  bool test(std::int64_t i, std::int64_t j, std::int64_t k) const { return data_[dims_.flat(i, j, k)] != 0; }
  void set(std::size_t idx, bool v) { data_[idx] = v ? 1 : 0; }
  void set(std::int64_t i, std::int64_t j, std::int64_t k, bool v) { set(dims_.flat(i, j, k), v); }

  std::size_t count() const;
  bool none() const { return count() == 0; }
  bool all() const { return count() == size(); }
};

template <typename A, typename B>
bool masks_compatible(const VoxelGrid<A>& a, const VoxelGrid<B>& b) {
  return a.dims() == b.dims() && spacing_equal(a.spacing(), b.spacing());
}

/// Throws ShapeError naming `what` when the grids disagree in dims or spacing.
template <typename A, typename B>
void require_compatible(const VoxelGrid<A>& a, const VoxelGrid<B>& b, const char* what) {
  if (!masks_compatible(a, b)) throw ShapeError(std::string(what) + ": dims/spacing mismatch");
}

BinaryMask complement(const BinaryMask& m);
BinaryMask mask_and(const BinaryMask& a, const BinaryMask& b);
BinaryMask mask_or(const BinaryMask& a, const BinaryMask& b);
BinaryMask mask_xor(const BinaryMask& a, const BinaryMask& b);
/// a AND NOT b
BinaryMask mask_minus(const BinaryMask& a, const BinaryMask& b);
bool is_subset(const BinaryMask& a, const BinaryMask& b);
std::size_t overlap_count(const BinaryMask& a, const BinaryMask& b);

}  // namespace scargeo
