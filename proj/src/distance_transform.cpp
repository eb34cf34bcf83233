#include "scargeo/distance_transform.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "scargeo/parallel.hpp"

namespace scargeo {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Lower envelope of the parabolas w * (q - p)^2 + f(p) over the finite sites
// p of one line, evaluated at every integer q. `line` is read and overwritten
// through `stride`. Scratch buffers are sized by the caller.
struct LinePass {
  std::vector<double> f;
  std::vector<std::int64_t> site;
  std::vector<double> bound;

  explicit LinePass(std::int64_t n)
      : f(static_cast<std::size_t>(n)), site(static_cast<std::size_t>(n)), bound(static_cast<std::size_t>(n) + 1) {}

  void run(double* line, std::int64_t n, std::int64_t stride, double w) {
    for (std::int64_t q = 0; q < n; ++q) f[q] = line[q * stride];

    auto crossing = [&](std::int64_t p, std::int64_t q) {
      const double dp = static_cast<double>(p);
      const double dq = static_cast<double>(q);
      return ((f[q] + w * dq * dq) - (f[p] + w * dp * dp)) / (2.0 * w * (dq - dp));
    };

    std::int64_t k = -1;
    for (std::int64_t q = 0; q < n; ++q) {
      if (f[q] == kInf) continue;
      if (k < 0) {
        k = 0;
        site[0] = q;
        bound[0] = -kInf;
        bound[1] = kInf;
        continue;
      }
      double s = crossing(site[k], q);
      while (k > 0 && s <= bound[k]) {
        --k;
        s = crossing(site[k], q);
      }
      ++k;
      site[k] = q;
      bound[k] = s;
      bound[k + 1] = kInf;
    }
    if (k < 0) return;  // no sites on this line; stays +inf

    std::int64_t j = 0;
    for (std::int64_t q = 0; q < n; ++q) {
      while (bound[j + 1] < static_cast<double>(q)) ++j;
      const double d = static_cast<double>(q - site[j]);
      line[q * stride] = w * d * d + f[site[j]];
    }
  }
};

void pass_along_axis(std::vector<double>& data, const Dims& dims, int axis, double weight) {
  const std::int64_t n = dims[axis];
  const std::int64_t stride = axis == 0 ? 1 : (axis == 1 ? dims.nx : dims.nx * dims.ny);
  // The two remaining axes enumerate the lines.
  const int a = axis == 0 ? 1 : 0;
  const int b = axis == 2 ? 1 : 2;
  const std::int64_t na = dims[a];
  const std::int64_t nb = dims[b];
  const std::int64_t stride_a = a == 0 ? 1 : dims.nx;
  const std::int64_t stride_b = b == 1 ? dims.nx : dims.nx * dims.ny;

  parallel_for(static_cast<std::size_t>(na * nb), [&](std::size_t begin, std::size_t end) {
    LinePass pass(n);
    for (std::size_t line = begin; line < end; ++line) {
      const auto ia = static_cast<std::int64_t>(line) % na;
      const auto ib = static_cast<std::int64_t>(line) / na;
      pass.run(data.data() + ia * stride_a + ib * stride_b, n, stride, weight);
    }
  });
}

}  // namespace

ScalarVolume edt_squared(const BinaryMask& target, const Spacing& spacing) {
  if (target.none()) throw EmptyForegroundError("distance transform of an empty set");
  const Dims& dims = target.dims();
  std::vector<double> d(dims.size());
  for (std::size_t n = 0; n < d.size(); ++n) d[n] = target.test(n) ? 0.0 : kInf;
  for (int axis = 0; axis < 3; ++axis) {
    pass_along_axis(d, dims, axis, spacing[axis] * spacing[axis]);
  }
  return ScalarVolume(dims, spacing, std::move(d));
}

DistanceField edt(const BinaryMask& target, const Spacing& spacing) {
  ScalarVolume sq = edt_squared(target, spacing);
  std::vector<double> d(sq.values().begin(), sq.values().end());
  for (double& v : d) v = std::sqrt(v);
  return DistanceField(ScalarVolume(target.dims(), spacing, std::move(d)));
}

DistanceField edt(const BinaryMask& target) { return edt(target, target.spacing()); }

DistanceField edt_bruteforce(const BinaryMask& target, const Spacing& spacing) {
  const Dims& dims = target.dims();
  if (dims.nx > kBruteForceMaxExtent || dims.ny > kBruteForceMaxExtent || dims.nz > kBruteForceMaxExtent) {
    throw OracleSizeError("brute-force distance oracle is limited to 32 voxels per axis");
  }
  if (target.none()) throw EmptyForegroundError("distance transform of an empty set");

  std::vector<Index3> sites;
  for (std::size_t n = 0; n < target.size(); ++n) {
    if (target.test(n)) sites.push_back(dims.unflat(n));
  }
  std::vector<double> out(dims.size());
  for (std::size_t n = 0; n < out.size(); ++n) {
    const Index3 x = dims.unflat(n);
    double best = kInf;
    for (const Index3& y : sites) {
      const double dx = static_cast<double>(x.i - y.i) * spacing.sx;
      const double dy = static_cast<double>(x.j - y.j) * spacing.sy;
      const double dz = static_cast<double>(x.k - y.k) * spacing.sz;
      const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
      if (d < best) best = d;
    }
    out[n] = best;
  }
  return DistanceField(ScalarVolume(dims, spacing, std::move(out)));
}

}  // namespace scargeo
