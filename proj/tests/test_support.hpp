#pragma once

// Shared generators and independent reference implementations for tests.
// Nothing here calls into the code paths it is used to check.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "scargeo/volume.hpp"

namespace scargeo::testing {

inline BinaryMask random_mask(const Dims& dims, const Spacing& spacing, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(density);
  BinaryMask m(dims, spacing);
  for (std::size_t n = 0; n < m.size(); ++n) m.set(n, coin(rng));
  return m;
}

/// Random mask guaranteed to hold at least one foreground and one background voxel.
inline BinaryMask random_proper_mask(const Dims& dims, const Spacing& spacing, double density, std::mt19937_64& rng) {
  for (;;) {
    BinaryMask m = random_mask(dims, spacing, density, rng);
    if (!m.none() && !m.all()) return m;
  }
}

inline Spacing random_spacing(std::mt19937_64& rng, double lo = 0.5, double hi = 3.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  const double x = u(rng);
  const double y = u(rng);
  const double z = u(rng);
  return {x, y, z};
}

inline BinaryMask box_mask(const Dims& dims, const Spacing& spacing, Index3 lo, Index3 hi) {
  BinaryMask m(dims, spacing);
  for (std::int64_t k = lo.k; k <= hi.k; ++k)
    for (std::int64_t j = lo.j; j <= hi.j; ++j)
      for (std::int64_t i = lo.i; i <= hi.i; ++i) m.set(i, j, k, true);
  return m;
}

inline BinaryMask ball_mask(const Dims& dims, const Spacing& spacing, Point3 center_vox, double radius_vox) {
  BinaryMask m(dims, spacing);
  for (std::int64_t k = 0; k < dims.nz; ++k)
    for (std::int64_t j = 0; j < dims.ny; ++j)
      for (std::int64_t i = 0; i < dims.nx; ++i) {
        const double dx = static_cast<double>(i) - center_vox.x;
        const double dy = static_cast<double>(j) - center_vox.y;
        const double dz = static_cast<double>(k) - center_vox.z;
        m.set(i, j, k, dx * dx + dy * dy + dz * dz <= radius_vox * radius_vox);
      }
  return m;
}

inline double world_distance(const Dims& d, const Spacing& s, std::size_t a, std::size_t b) {
  const Index3 p = d.unflat(a);
  const Index3 q = d.unflat(b);
  const double dx = static_cast<double>(p.i - q.i) * s.sx;
  const double dy = static_cast<double>(p.j - q.j) * s.sy;
  const double dz = static_cast<double>(p.k - q.k) * s.sz;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

/// Signed distance by direct enumeration: inside voxels get +min distance to
/// any outside voxel, outside voxels -min distance to any inside voxel.
inline std::vector<double> signed_distance_oracle(const BinaryMask& m, const Spacing& s) {
  std::vector<double> out(m.size());
  for (std::size_t a = 0; a < m.size(); ++a) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < m.size(); ++b) {
      if (m.test(b) != m.test(a)) best = std::min(best, world_distance(m.dims(), s, a, b));
    }
    out[a] = m.test(a) ? best : -best;
  }
  return out;
}

/// Surface set by explicit 6-neighbour scan (out-of-grid = background).
inline std::vector<std::size_t> surface_oracle(const BinaryMask& m) {
  std::vector<std::size_t> out;
  const Dims& d = m.dims();
  for (std::size_t n = 0; n < m.size(); ++n) {
    if (!m.test(n)) continue;
    const Index3 p = d.unflat(n);
    bool edge = false;
    const Index3 faces[6] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    for (const Index3& f : faces) {
      const Index3 q = p + f;
      if (!d.contains(q) || !m.test(q.i, q.j, q.k)) edge = true;
    }
    if (edge) out.push_back(n);
  }
  return out;
}

/// All-pairs average symmetric surface distance in long double.
inline double assd_oracle(const BinaryMask& a, const BinaryMask& b, const Spacing& s) {
  const auto sa = surface_oracle(a);
  const auto sb = surface_oracle(b);
  long double total = 0.0L;
  auto one_way = [&](const std::vector<std::size_t>& from, const std::vector<std::size_t>& to) {
    for (std::size_t x : from) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t y : to) best = std::min(best, world_distance(a.dims(), s, x, y));
      total += best;
    }
  };
  one_way(sa, sb);
  one_way(sb, sa);
  return static_cast<double>(total / static_cast<long double>(sa.size() + sb.size()));
}

/// Weighted BCE evaluated literally in long double with the naive logistic.
inline long double wbce_oracle(const std::vector<double>& z, const BinaryMask& gt, const BinaryMask& roi, double w_max,
                               double eps) {
  long double P = 0, N = 0;
  for (std::size_t n = 0; n < z.size(); ++n) {
    if (!roi.test(n)) continue;
    (gt.test(n) ? P : N) += 1;
  }
  long double w = std::sqrt((N + eps) / (P + eps));
  if (w < 1) w = 1;
  if (w > w_max) w = w_max;
  long double sum = 0;
  for (std::size_t n = 0; n < z.size(); ++n) {
    if (!roi.test(n)) continue;
    const long double sig = 1.0L / (1.0L + std::exp(-static_cast<long double>(z[n])));
    const long double y = gt.test(n) ? 1.0L : 0.0L;
    sum += -w * y * std::log(sig) - (1.0L - y) * std::log(1.0L - sig);
  }
  return sum / (P + N);
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& tag) {
  static std::mt19937_64 rng(std::random_device{}());
  auto dir = std::filesystem::temp_directory_path() / ("scargeo-" + tag + "-" + std::to_string(rng() % 1000000000));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::FILE* f = std::fopen(p.string().c_str(), "rb");
  std::string s;
  if (!f) return s;
  char buf[65536];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof(buf), f)) > 0) s.append(buf, got);
  std::fclose(f);
  return s;
}

}  // namespace scargeo::testing
