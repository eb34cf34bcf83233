#include <doctest.h>

#include <cmath>
#include <random>

#include "scargeo/phantom.hpp"
#include "scargeo/sdm.hpp"
#include "test_support.hpp"

using namespace scargeo;

TEST_CASE("cavity SDM of a centered cube") {
  const Dims d(5, 5, 5);
  const Spacing s(1, 1, 1);
  const BinaryMask cube = testing::box_mask(d, s, {1, 1, 1}, {3, 3, 3});
  const ScalarVolume v = cavity_sdm(cube, s);
  CHECK(v.at(2, 2, 2) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(v.at(0, 0, 0) == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-15));
  CHECK(v.at(1, 2, 2) == doctest::Approx(1.0).epsilon(1e-15));
  const std::vector<double> oracle = testing::signed_distance_oracle(cube, s);
  for (std::size_t n = 0; n < cube.size(); ++n) CHECK(std::abs(v[n] - oracle[n]) <= 1e-9);
}

TEST_CASE("complementing the mask flips the sign") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    const Spacing s = testing::random_spacing(rng);
    const BinaryMask m = testing::random_proper_mask(Dims(7, 6, 5), s, 0.4, rng);
    const ScalarVolume a = cavity_sdm(m, s);
    const ScalarVolume b = cavity_sdm(complement(m), s);
    for (std::size_t n = 0; n < m.size(); ++n) CHECK(a[n] == -b[n]);
  }
}

TEST_CASE("degenerate masks raise") {
  const Dims d(4, 4, 4);
  CHECK_THROWS_AS(cavity_sdm(BinaryMask(d, Spacing()), Spacing()), DegenerateMaskError);
  CHECK_THROWS_AS(cavity_sdm(BinaryMask(d, Spacing(), std::vector<std::uint8_t>(64, 1)), Spacing()),
                  DegenerateMaskError);
  CHECK_THROWS_AS(wall_sdm(BinaryMask(d, Spacing()), Spacing()), DegenerateMaskError);
  CHECK_THROWS_AS(build_sdm_pair(BinaryMask(d, Spacing()), Spacing()), DegenerateMaskError);
}

TEST_CASE("SDM oracle equivalence and sign/membership on random grids") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 25; ++t) {
    std::uniform_int_distribution<int> ext(2, 9);
    const Spacing s = testing::random_spacing(rng);
    const BinaryMask m = testing::random_proper_mask(Dims(ext(rng), ext(rng), ext(rng)), s, 0.3, rng);
    const ScalarVolume v = wall_sdm(m, s);
    const std::vector<double> oracle = testing::signed_distance_oracle(m, s);
    for (std::size_t n = 0; n < m.size(); ++n) {
      REQUIRE(std::abs(v[n] - oracle[n]) <= 1e-9);
      REQUIRE((v[n] > 0.0) == m.test(n));
      REQUIRE(v[n] != 0.0);
    }
  }
}

TEST_CASE("wall SDM of a one-voxel-thick shell") {
  const Dims d(9, 9, 9);
  const Spacing s(1, 1, 1);
  const BinaryMask outer = testing::box_mask(d, s, {2, 2, 2}, {6, 6, 6});
  const BinaryMask inner = testing::box_mask(d, s, {3, 3, 3}, {5, 5, 5});
  const BinaryMask shell = mask_minus(outer, inner);
  const ScalarVolume v = wall_sdm(shell, s);
  for (std::size_t n = 0; n < shell.size(); ++n) {
    if (shell.test(n)) CHECK(v[n] == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK(v.at(1, 4, 4) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(v.at(3, 4, 4) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(v.at(4, 4, 4) == doctest::Approx(-2.0).epsilon(1e-15));  // grows toward the center
}

TEST_CASE("clip_normalize") {
  const ScalarVolume v(Dims(4, 1, 1), Spacing(), {30.0, -6.0, 0.0, -40.0});
  const ScalarVolume n = clip_normalize(v, 12.0);
  CHECK(n[0] == 1.0);
  CHECK(n[1] == -0.5);
  CHECK(n[2] == 0.0);
  CHECK(n[3] == -1.0);
  CHECK_THROWS_AS(clip_normalize(v, 0.0), ParameterError);
  CHECK_THROWS_AS(clip_normalize(v, -3.0), ParameterError);
}

TEST_CASE("SDM pair on a phantom") {
  PhantomSpec spec;
  spec.dims = Dims(64, 64, 24);
  spec.semi_axes_mm = {14.0, 12.0, 20.0};
  const Phantom ph = generate(spec);
  const Spacing& s = spec.spacing;
  const SdmPair a = build_sdm_pair(ph.cavity, s, 2.0, 12.0);
  const SdmPair b = build_sdm_pair(ph.cavity, s, 2.0, 12.0);

  for (std::size_t n = 0; n < a.cavity_sdm.size(); ++n) {
    REQUIRE(a.cavity_sdm[n] == b.cavity_sdm[n]);
    REQUIRE(a.wall_sdm[n] == b.wall_sdm[n]);
    REQUIRE(std::abs(a.cavity_sdm[n]) <= 1.0);
    REQUIRE(std::abs(a.wall_sdm[n]) <= 1.0);
    REQUIRE((a.cavity_sdm[n] > 0) == ph.cavity.test(n));
    REQUIRE((a.wall_sdm[n] > 0) == a.wall.test(n));
    if (std::abs(a.cavity_sdm[n]) == 1.0) REQUIRE(std::abs(a.cavity_sdm_mm[n]) >= 12.0);
  }

  // Zero crossings between axis neighbours sit exactly on mask boundaries,
  // and boundary voxels stay within one voxel diagonal of the surface.
  const Dims& d = spec.dims;
  const double diag = std::sqrt(s.sx * s.sx + s.sy * s.sy + s.sz * s.sz);
  for (std::size_t n = 0; n < ph.cavity.size(); ++n) {
    const Index3 p = d.unflat(n);
    for (int axis = 0; axis < 3; ++axis) {
      Index3 q = p;
      (axis == 0 ? q.i : axis == 1 ? q.j : q.k) += 1;
      if (!d.contains(q)) continue;
      const std::size_t m = d.flat(q.i, q.j, q.k);
      const bool cav_flip = (a.cavity_sdm_mm[n] > 0) != (a.cavity_sdm_mm[m] > 0);
      REQUIRE(cav_flip == (ph.cavity.test(n) != ph.cavity.test(m)));
      const bool wall_flip = (a.wall_sdm_mm[n] > 0) != (a.wall_sdm_mm[m] > 0);
      REQUIRE(wall_flip == (a.wall.test(n) != a.wall.test(m)));
      if (cav_flip) {
        REQUIRE(std::abs(a.cavity_sdm_mm[n]) <= diag);
        REQUIRE(std::abs(a.cavity_sdm_mm[m]) <= diag);
      }
    }
  }
}
