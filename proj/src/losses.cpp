#include "scargeo/losses.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace scargeo {

void LossConfig::validate() const {
  if (!(lambda_dice >= 0.0) || !(lambda_bce >= 0.0) || !(alpha >= 0.0)) {
    throw ParameterError("loss weights must be non-negative");
  }
  if (!(w_max >= 1.0)) throw ParameterError("w_max must be at least 1");
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kLeaf = 16;
  if (values.size() <= kLeaf) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double adaptive_positive_weight(std::size_t P, std::size_t N, double w_max, double eps) {
  if (!(w_max >= 1.0)) throw ParameterError("w_max must be at least 1");
  if (!(eps > 0.0)) throw ParameterError("epsilon must be positive");
  const double ratio = (static_cast<double>(N) + eps) / (static_cast<double>(P) + eps);
  return std::clamp(std::sqrt(ratio), 1.0, w_max);
}

namespace {

void require_probabilities(const ScalarVolume& prob) {
  for (double p : prob.values()) {
    if (p < 0.0 || p > 1.0) throw ParameterError("probabilities must lie in [0, 1]");
  }
}

struct DiceSums {
  double intersection = 0.0;  // sum R p y
  double denominator = 0.0;   // sum R p + sum R y + eps
  double loss = 0.0;
};

// `in_region(n)` selects voxels; excluded voxels never touch the sums.
template <typename Region>
DiceSums dice_sums(std::span<const double> prob, const BinaryMask& gt, Region in_region, double eps) {
  const std::size_t n = prob.size();
  std::vector<double> inter(n, 0.0);
  std::vector<double> mass(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    if (!in_region(v)) continue;
    const double y = gt.test(v) ? 1.0 : 0.0;
    inter[v] = prob[v] * y;
    mass[v] = prob[v] + y;
  }
  DiceSums s;
  s.intersection = pairwise_sum(inter);
  s.denominator = pairwise_sum(mass) + eps;
  s.loss = 1.0 - (2.0 * s.intersection + eps) / s.denominator;
  return s;
}

}  // namespace

double roi_dice_loss(const ScalarVolume& prob, const BinaryMask& gt, const BinaryMask& roi, double eps) {
  require_compatible(prob, gt, "roi_dice_loss");
  require_compatible(prob, roi, "roi_dice_loss");
  if (!(eps > 0.0)) throw ParameterError("epsilon must be positive");
  require_probabilities(prob);
  return dice_sums(prob.values(), gt, [&](std::size_t v) { return roi.test(v); }, eps).loss;
}

double global_dice_loss(const ScalarVolume& prob, const BinaryMask& gt, double eps) {
  require_compatible(prob, gt, "global_dice_loss");
  if (!(eps > 0.0)) throw ParameterError("epsilon must be positive");
  require_probabilities(prob);
  return dice_sums(prob.values(), gt, [](std::size_t) { return true; }, eps).loss;
}

WeightedBce roi_weighted_bce(const ScalarVolume& logits, const BinaryMask& gt, const BinaryMask& roi, double w_max,
                             double eps) {
  require_compatible(logits, gt, "roi_weighted_bce");
  require_compatible(logits, roi, "roi_weighted_bce");
  WeightedBce out;
  for (std::size_t v = 0; v < roi.size(); ++v) {
    if (!roi.test(v)) continue;
    (gt.test(v) ? out.P : out.N) += 1;
  }
  const std::size_t roi_size = out.P + out.N;
  if (roi_size == 0) throw EmptyRoiError("weighted BCE over an empty ROI");
  out.w_plus = adaptive_positive_weight(out.P, out.N, w_max, eps);

  std::vector<double> terms(logits.size(), 0.0);
  for (std::size_t v = 0; v < terms.size(); ++v) {
    if (!roi.test(v)) continue;
    // -log s(z) = softplus(-z), -log(1 - s(z)) = softplus(z)
    terms[v] = gt.test(v) ? out.w_plus * softplus(-logits[v]) : softplus(logits[v]);
  }
  out.loss = pairwise_sum(terms) / static_cast<double>(roi_size);
  return out;
}

LossReport total_loss(const ScalarVolume& logits, const BinaryMask& gt, const BinaryMask& roi, const LossConfig& cfg,
                      bool with_gradient) {
  cfg.validate();
  require_compatible(logits, gt, "total_loss");
  require_compatible(logits, roi, "total_loss");

  const std::size_t n = logits.size();
  std::vector<double> prob(n);
  for (std::size_t v = 0; v < n; ++v) prob[v] = sigmoid(logits[v]);

  const WeightedBce bce = roi_weighted_bce(logits, gt, roi, cfg.w_max, cfg.epsilon);
  const DiceSums local = dice_sums(prob, gt, [&](std::size_t v) { return roi.test(v); }, cfg.epsilon);
  const DiceSums global = dice_sums(prob, gt, [](std::size_t) { return true; }, cfg.epsilon);

  LossReport r;
  r.dice_roi = local.loss;
  r.wbce_roi = bce.loss;
  r.dice_global = global.loss;
  r.w_plus = bce.w_plus;
  r.P = bce.P;
  r.N = bce.N;
  r.combined = cfg.lambda_dice * r.dice_roi + cfg.lambda_bce * r.wbce_roi;
  r.total = r.combined + cfg.alpha * cfg.lambda_dice * r.dice_global;

  if (with_gradient) {
    // d(1 - (2I + eps) / D) / dp = ((2I + eps) - 2 y D) / D^2 per selected voxel
    const double roi_num = 2.0 * local.intersection + cfg.epsilon;
    const double roi_den2 = local.denominator * local.denominator;
    const double glob_num = 2.0 * global.intersection + cfg.epsilon;
    const double glob_den2 = global.denominator * global.denominator;
    const double inv_roi = 1.0 / static_cast<double>(r.P + r.N);
    const double global_scale = cfg.alpha * cfg.lambda_dice;

    std::vector<double> grad(n);
    for (std::size_t v = 0; v < n; ++v) {
      const double y = gt.test(v) ? 1.0 : 0.0;
      const double z = logits[v];
      const double dp_dz = prob[v] * sigmoid(-z);
      double d_prob = global_scale * (glob_num - 2.0 * y * global.denominator) / glob_den2;
      double d_logit = 0.0;
      if (roi.test(v)) {
        d_prob += cfg.lambda_dice * (roi_num - 2.0 * y * local.denominator) / roi_den2;
        // d/dz [w y softplus(-z) + (1 - y) softplus(z)] = -w y s(-z) + (1 - y) s(z)
        const double d_bce = y > 0.0 ? -r.w_plus * sigmoid(-z) : prob[v];
        d_logit = cfg.lambda_bce * d_bce * inv_roi;
      }
      grad[v] = d_prob * dp_dz + d_logit;
    }
    r.grad_logits.emplace(logits.dims(), logits.spacing(), std::move(grad));
  }
  return r;
}

LossReport total_loss(const ScalarVolume& logits, const BinaryMask& gt, const SupervisionRegions& regions,
                      const LossConfig& cfg, bool with_gradient) {
  const BinaryMask& roi = cfg.region_mode == RegionMode::wall ? regions.roi_wall : regions.effective;
  return total_loss(logits, gt, roi, cfg, with_gradient);
}

}  // namespace scargeo
