// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "scargeo/cli.hpp"
#include "scargeo/distance_transform.hpp"
#include "scargeo/losses.hpp"
#include "scargeo/metrics.hpp"
#include "scargeo/morphology.hpp"
#include "scargeo/phantom.hpp"
#include "scargeo/regions.hpp"
#include "scargeo/sdm.hpp"
#include "test_support.hpp"

using namespace scargeo;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(const char* name, const std::function<Outcome()>& check) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s  %-28s %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ScalarVolume with_value(const ScalarVolume& v, std::size_t idx, double value) {
  std::vector<double> z(v.values().begin(), v.values().end());
  z[idx] = value;
  return {v.dims(), v.spacing(), std::move(z)};
}

Outcome edt_exactness() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> density(0.02, 0.6);
  double worst = 0.0;
  int masks = 0;
  for (int n : {4, 8, 16}) {
    for (int t = 0; t < 100; ++t) {
      const Spacing s = testing::random_spacing(rng, 0.5, 3.0);
      BinaryMask m = testing::random_mask(Dims(n, n, n), s, density(rng), rng);
      if (m.none()) m.set(rng() % m.size(), true);
      const DistanceField fast = edt(m, s);
      const DistanceField slow = edt_bruteforce(m, s);
      for (std::size_t v = 0; v < m.size(); ++v) worst = std::max(worst, std::abs(fast[v] - slow[v]));
      ++masks;
    }
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-9 && secs < 30.0, fmt("%d masks, max |diff| = %.3g mm, %.1f s (< 30 s)", masks, worst, secs)};
}

Outcome sdm_sign() {
  std::mt19937_64 rng(1002);
  std::uniform_int_distribution<int> ext(3, 24);
  std::uniform_real_distribution<double> density(0.05, 0.8);
  std::size_t voxels = 0, mismatched = 0;
  for (int t = 0; t < 50; ++t) {
    const Spacing s = testing::random_spacing(rng);
    const BinaryMask m = testing::random_proper_mask(Dims(ext(rng), ext(rng), ext(rng)), s, density(rng), rng);
    const ScalarVolume v = cavity_sdm(m, s);
    for (std::size_t n = 0; n < m.size(); ++n) {
      const bool positive = v[n] > 0.0;
      const bool negative = v[n] < 0.0;
      if (!(m.test(n) ? positive : negative)) ++mismatched;
      ++voxels;
    }
  }
  return {mismatched == 0, fmt("50 masks, %zu voxels, %zu sign mismatches", voxels, mismatched)};
}

// Half-thickness: mean wall SDM over cavity voxels with an in-plane face
// neighbour outside the cavity, the medial layer of a band grown by an
// in-plane element equally to both sides.
Outcome wall_band_geometry() {
  const PhantomSpec spec;
  const Phantom ph = generate(spec);
  const Spacing& s = spec.spacing;
  const Dims& d = spec.dims;
  const BinaryMask band = wall_band(ph.cavity, s, 2.0);
  const ScalarVolume depth = wall_sdm(band, s);
  const Index3 in_plane[4] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}};
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t n = 0; n < d.size(); ++n) {
    if (!ph.cavity.test(n)) continue;
    const Index3 p = d.unflat(n);
    bool medial = false;
    for (const Index3& o : in_plane) {
      const Index3 q = p + o;
      if (!d.contains(q) || !ph.cavity.test(q.i, q.j, q.k)) medial = true;
    }
    if (!medial) continue;
    sum += depth[n];
    ++count;
  }
  const double mean = sum / static_cast<double>(count);
  const double tol = s.in_plane();
  return {count > 0 && std::abs(mean - 2.0) <= tol,
          fmt("mean half-thickness %.4f mm over %zu voxels, target 2 +/- %.3f mm", mean, count, tol)};
}

Outcome radius_rule() {
  struct Row {
    Spacing s;
    double tau;
    int want;
  };
  const Row table[] = {
      {{0.625, 0.625, 2.5}, 2.0, 3}, {{1, 1, 1}, 0.3, 1},          {{2, 2, 2}, 2.0, 1},
      {{0.5, 0.5, 1}, 2.0, 4},       {{0.7, 0.7, 2}, 2.0, 3},      {{1.25, 1.25, 2.5}, 2.0, 2},
      {{0.625, 0.8, 2.5}, 3.0, 5},   {{0.8, 0.625, 2.5}, 3.0, 5},  {{1, 1, 1}, 2.5, 3},
      {{3, 3, 3}, 2.0, 1},           {{0.3, 0.3, 1}, 2.0, 7},      {{0.9375, 0.9375, 1.5}, 2.0, 2},
      {{0.625, 0.625, 2.5}, 1.0, 2}, {{0.625, 0.625, 2.5}, 5.0, 8}, {{1.5, 0.5, 2}, 1.2, 2},
      {{2, 2, 0.5}, 1.0, 1},         {{0.4, 0.4, 0.4}, 4.0, 10},   {{1, 1, 5}, 0.49, 1},
      {{0.75, 0.75, 3}, 2.0, 3},     {{0.55, 0.55, 2.2}, 2.75, 5},
  };
  int wrong = 0;
  std::string first;
  for (const Row& r : table) {
    const int got = wall_radius(r.s, r.tau);
    if (got != r.want) {
      if (wrong++ == 0) first = fmt(" first: tau %.3g got %d want %d", r.tau, got, r.want);
    }
  }
  return {wrong == 0, fmt("%zu combinations, %d mismatches", std::size(table), wrong) + first};
}

Outcome gradient() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1005);
  std::normal_distribution<double> g(0.0, 1.5);
  const double h = 1e-4;
  LossConfig cfg;
  cfg.lambda_dice = 1.0;
  cfg.lambda_bce = 2.0;
  cfg.alpha = 0.1;
  cfg.w_max = 10.0;
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const Dims d(6, 6, 6);
    const Spacing s = testing::random_spacing(rng);
    const BinaryMask y = testing::random_proper_mask(d, s, 0.2, rng);
    const BinaryMask roi = testing::random_proper_mask(d, s, 0.5, rng);
    std::vector<double> zv(d.size());
    for (double& v : zv) v = g(rng);
    const ScalarVolume z(d, s, zv);
    const LossReport r = total_loss(z, y, roi, cfg, true);
    for (std::size_t n = 0; n < d.size(); ++n) {
      const double fd = (total_loss(with_value(z, n, z[n] + h), y, roi, cfg).total -
                         total_loss(with_value(z, n, z[n] - h), y, roi, cfg).total) /
                        (2.0 * h);
      const double an = (*r.grad_logits)[n];
      const double scale = std::max(std::abs(an), std::abs(fd));
      worst = std::max(worst, scale > 0.0 ? std::abs(an - fd) / scale : 0.0);
    }
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-4 && secs < 60.0, fmt("20 cases of 6^3, max rel err %.3g (< 1e-4), %.1f s (< 60 s)", worst, secs)};
}

Outcome roi_locality() {
  PhantomSpec spec;
  spec.dims = Dims(64, 64, 28);
  spec.semi_axes_mm = {13.0, 11.0, 22.0};
  const Phantom ph = generate(spec);
  const SupervisionRegions regions = build_regions(ph.cavity, spec.spacing);
  std::mt19937_64 rng(1006);
  std::normal_distribution<double> g(0.0, 3.0);
  std::vector<double> zv(ph.scar.size());
  for (double& v : zv) v = g(rng);
  const ScalarVolume z(ph.scar.dims(), spec.spacing, zv);
  const LossConfig cfg;
  const LossReport base = total_loss(z, ph.scar, regions, cfg);

  std::vector<std::size_t> outside;
  for (std::size_t n = 0; n < z.size(); ++n) {
    if (!regions.effective.test(n)) outside.push_back(n);
  }
  std::shuffle(outside.begin(), outside.end(), rng);
  outside.resize(1000);

  int broken = 0;
  bool global_moved = false;
  for (std::size_t n : outside) {
    const LossReport r = total_loss(with_value(z, n, z[n] + g(rng) + 5.0), ph.scar, regions, cfg);
    const bool roi_same = r.dice_roi == base.dice_roi && r.wbce_roi == base.wbce_roi && r.combined == base.combined;
    const bool via_global = r.total == base.combined + cfg.alpha * cfg.lambda_dice * r.dice_global;
    if (!roi_same || !via_global) ++broken;
    if (r.dice_global != base.dice_global) global_moved = true;
  }
  std::vector<double> all = zv;
  for (std::size_t n : outside) all[n] = -all[n] + 7.0;
  const LossReport joint = total_loss(ScalarVolume(z.dims(), z.spacing(), all), ph.scar, regions, cfg);
  if (joint.dice_roi != base.dice_roi || joint.wbce_roi != base.wbce_roi) ++broken;
  return {broken == 0 && global_moved,
          fmt("1000 single-voxel and 1 joint perturbation outside R_eff, %d ROI-term changes", broken)};
}

Outcome positive_weight() {
  int bad = 0;
  for (std::size_t N : {0u, 1u, 10u, 500u, 10000u}) {
    for (std::size_t P = N; P < N + 50; ++P) bad += adaptive_positive_weight(P, N, 10.0, 1e-5) == 1.0 ? 0 : 1;
  }
  for (std::size_t N : {10000u, 20000u, 1000000u}) bad += adaptive_positive_weight(0, N, 10.0, 1e-5) == 10.0 ? 0 : 1;
  for (std::size_t N : {0u, 7u, 100u, 4096u, 10000u}) {
    double previous = adaptive_positive_weight(0, N, 10.0, 1e-5);
    for (std::size_t P = 1; P <= 2 * N + 20; ++P) {
      const double w = adaptive_positive_weight(P, N, 10.0, 1e-5);
      if (w > previous || w < 1.0 || w > 10.0) ++bad;
      previous = w;
    }
  }
  // the same rule as seen through the BCE term on a real mask
  const Dims d(25, 20, 20);
  const BinaryMask roi(d, Spacing(), std::vector<std::uint8_t>(d.size(), 1));
  const WeightedBce b = roi_weighted_bce(ScalarVolume(d, Spacing()), BinaryMask(d, Spacing()), roi);
  if (b.w_plus != 10.0 || b.P != 0 || b.N != 10000) ++bad;
  return {bad == 0, fmt("floor, clamp and monotonicity sweep, %d violations", bad)};
}

Outcome assd_oracle() {
  std::mt19937_64 rng(1008);
  std::uniform_real_distribution<double> density(0.05, 0.6);
  double worst = 0.0, self = 0.0;
  for (int t = 0; t < 50; ++t) {
    const Spacing s = testing::random_spacing(rng);
    const Dims d(12, 12, 12);
    const BinaryMask a = testing::random_proper_mask(d, s, density(rng), rng);
    const BinaryMask b = testing::random_proper_mask(d, s, density(rng), rng);
    worst = std::max(worst, std::abs(assd(a, b, s) - testing::assd_oracle(a, b, s)));
    self = std::max(self, assd(a, a, s));
  }
  return {worst <= 1e-9 && self == 0.0, fmt("50 pairs of 12^3, max |diff| = %.3g mm, self-distance %.3g", worst, self)};
}

Outcome anatomical_closure() {
  std::mt19937_64 rng(1009);
  std::uniform_real_distribution<double> axis(9.0, 14.0);
  std::uniform_int_distribution<std::size_t> count(0, 40);
  int wrong = 0;
  for (int t = 0; t < 10; ++t) {
    PhantomSpec spec;
    spec.dims = Dims(64, 64, 28);
    spec.semi_axes_mm = {axis(rng), axis(rng), 20.0 + axis(rng) / 2.0};
    spec.seed = rng();
    const Phantom ph = generate(spec);
    const PlantCounts planted{count(rng), count(rng), count(rng)};
    const BinaryMask pred = plant_errors(ph.scar, ph.cavity, ph.wall, planted, rng());
    const AnatomicalErrors e = anatomical_errors(pred, ph.scar, ph.cavity, ph.wall);
    if (e.fp_in_cavity != planted.fp_in_cavity || e.fp_outside_wall != planted.fp_outside ||
        e.fn_inside_wall != planted.fn_inside) {
      ++wrong;
    }
  }
  return {wrong == 0, fmt("10 planted configurations, %d with mismatched counts", wrong)};
}

int cli(std::vector<std::string> args, std::string& out) {
  args.insert(args.begin(), "scargeo");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), o, e);
  out = o.str() + e.str();
  return code;
}

Outcome pipeline_determinism() {
  const fs::path dir = testing::temp_dir("acceptance-pipeline");
  std::string log;
  if (cli({"phantom", "--out-dir", (dir / "ph").string(), "--plant", "5", "10", "3"}, log) != 0) {
    return {false, "phantom failed: " + log};
  }
  std::vector<std::string> json(2);
  for (int run = 0; run < 2; ++run) {
    const fs::path out = dir / ("run" + std::to_string(run));
    const int code = cli({"pipeline", "--cavity", (dir / "ph" / "cavity.nii.gz").string(), "--out-dir", out.string(),
                          "--pred", (dir / "ph" / "pred.nii.gz").string(), "--gt",
                          (dir / "ph" / "scar.nii.gz").string(), "--tau-wall", "2", "--tau-band", "3", "--clip",
                          "12", "--raw-mm"},
                         json[run]);
    if (code != 0) return {false, "pipeline failed: " + json[run]};
  }
  int files = 0, differing = 0;
  for (const auto& entry : fs::directory_iterator(dir / "run0")) {
    const fs::path other = dir / "run1" / entry.path().filename();
    ++files;
    if (!fs::exists(other) || testing::read_file(entry.path()) != testing::read_file(other)) ++differing;
  }
  const bool same_json = json[0] == json[1];
  fs::remove_all(dir);
  return {files >= 6 && differing == 0 && same_json,
          fmt("%d files compared, %d differ, stdout JSON %s", files, differing, same_json ? "identical" : "differs")};
}

}  // namespace

int main() {
  report("edt-exactness", edt_exactness);
  report("sdm-sign-convention", sdm_sign);
  report("wall-band-half-thickness", wall_band_geometry);
  report("wall-radius-rule", radius_rule);
  report("loss-gradient", gradient);
  report("roi-locality", roi_locality);
  report("positive-weight", positive_weight);
  report("assd-oracle", assd_oracle);
  report("anatomical-closure", anatomical_closure);
  report("pipeline-determinism", pipeline_determinism);
  std::printf("SKIP  %-28s trainer bridge is not part of this build\n", "bridge-equivalence");
  std::printf("%s: %d failure(s)\n", failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED", failures);
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
