#include "scargeo/volume.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace scargeo {

Spacing::Spacing(double x, double y, double z) : sx(x), sy(y), sz(z) {
  for (double s : {x, y, z}) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw ParameterError("spacing must be positive and finite, got " + std::to_string(s));
    }
  }
}

bool spacing_equal(const Spacing& a, const Spacing& b, double rel_tol) {
  for (int axis = 0; axis < 3; ++axis) {
    const double scale = std::max(std::abs(a[axis]), std::abs(b[axis]));
    if (std::abs(a[axis] - b[axis]) > rel_tol * scale) return false;
  }
  return true;
}

Dims::Dims(std::int64_t x, std::int64_t y, std::int64_t z) : nx(x), ny(y), nz(z) {
  if (x <= 0 || y <= 0 || z <= 0) throw ParameterError("dims must be positive");
}

Index3 Dims::unflat(std::size_t idx) const {
  const auto n = static_cast<std::int64_t>(idx);
  return {n % nx, (n / nx) % ny, n / (nx * ny)};
}

Point3 voxel_to_world(const Dims& dims, const Spacing& spacing, const Index3& index) {
  if (!dims.contains(index)) throw IndexError("voxel index out of range");
  return {static_cast<double>(index.i) * spacing.sx, static_cast<double>(index.j) * spacing.sy,
          static_cast<double>(index.k) * spacing.sz};
}

ScalarVolume::ScalarVolume(const Dims& dims, const Spacing& spacing, double fill)
    : VoxelGrid<double>(dims, spacing, std::vector<double>(dims.size(), fill)) {
  if (!std::isfinite(fill)) throw ParameterError("non-finite fill value");
}

ScalarVolume::ScalarVolume(const Dims& dims, const Spacing& spacing, std::vector<double> values)
    : VoxelGrid<double>(dims, spacing, std::move(values)) {
  if (!std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); })) {
    throw ParameterError("scalar volume contains NaN or Inf");
  }
}

void ScalarVolume::set(std::size_t idx, double v) {
  if (!std::isfinite(v)) throw ParameterError("non-finite voxel value");
  data_[idx] = v;
}

BinaryMask::BinaryMask(const Dims& dims, const Spacing& spacing)
    : VoxelGrid<std::uint8_t>(dims, spacing, std::vector<std::uint8_t>(dims.size(), 0)) {}

BinaryMask::BinaryMask(const Dims& dims, const Spacing& spacing, std::vector<std::uint8_t> values)
    : VoxelGrid<std::uint8_t>(dims, spacing, std::move(values)) {
  if (!std::all_of(data_.begin(), data_.end(), [](std::uint8_t v) { return v <= 1; })) {
    throw NonBinaryMaskError("mask contains values other than 0 and 1");
  }
}

std::size_t BinaryMask::count() const {
  return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), std::uint8_t{1}));
}

namespace {

template <typename Op>
BinaryMask combine(const BinaryMask& a, const BinaryMask& b, const char* what, Op op) {
  require_compatible(a, b, what);
  BinaryMask out(a.dims(), a.spacing());
  for (std::size_t n = 0; n < a.size(); ++n) out.set(n, op(a.test(n), b.test(n)));
  return out;
}

}  // namespace

BinaryMask complement(const BinaryMask& m) {
  BinaryMask out(m.dims(), m.spacing());
  for (std::size_t n = 0; n < m.size(); ++n) out.set(n, !m.test(n));
  return out;
}

BinaryMask mask_and(const BinaryMask& a, const BinaryMask& b) {
  return combine(a, b, "mask_and", [](bool x, bool y) { return x && y; });
}

BinaryMask mask_or(const BinaryMask& a, const BinaryMask& b) {
  return combine(a, b, "mask_or", [](bool x, bool y) { return x || y; });
}

BinaryMask mask_xor(const BinaryMask& a, const BinaryMask& b) {
  return combine(a, b, "mask_xor", [](bool x, bool y) { return x != y; });
}

BinaryMask mask_minus(const BinaryMask& a, const BinaryMask& b) {
  return combine(a, b, "mask_minus", [](bool x, bool y) { return x && !y; });
}

bool is_subset(const BinaryMask& a, const BinaryMask& b) {
  require_compatible(a, b, "is_subset");
  for (std::size_t n = 0; n < a.size(); ++n) {
    if (a.test(n) && !b.test(n)) return false;
  }
  return true;
}

std::size_t overlap_count(const BinaryMask& a, const BinaryMask& b) {
  require_compatible(a, b, "overlap_count");
  std::size_t c = 0;
  for (std::size_t n = 0; n < a.size(); ++n) c += (a.test(n) && b.test(n)) ? 1 : 0;
  return c;
}

}  // namespace scargeo
