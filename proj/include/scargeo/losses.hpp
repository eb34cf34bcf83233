#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "scargeo/regions.hpp"
#include "scargeo/volume.hpp"

namespace scargeo {

enum class RegionMode { wall, effective };

struct LossConfig {
  double lambda_dice = 1.0;
  double lambda_bce = 2.0;
  double alpha = 0.1;     // weight of the whole-volume Dice term
  double w_max = 10.0;    // upper clamp of the adaptive positive weight
  double epsilon = 1e-5;  // Dice smoothing and w+ ratio stabilizer
  RegionMode region_mode = RegionMode::effective;

  /// Throws ParameterError on negative weights, w_max < 1 or epsilon <= 0.
  void validate() const;
};

struct LossReport {
  double dice_roi = 0.0;
  double wbce_roi = 0.0;
  double dice_global = 0.0;
  double combined = 0.0;  // lambda_dice * dice_roi + lambda_bce * wbce_roi
  double total = 0.0;     // combined + alpha * lambda_dice * dice_global
  double w_plus = 1.0;
  std::size_t P = 0;  // scar voxels inside the ROI
  std::size_t N = 0;  // background voxels inside the ROI
  std::optional<ScalarVolume> grad_logits;
};

struct WeightedBce {
  double loss = 0.0;
  double w_plus = 1.0;
  std::size_t P = 0;
  std::size_t N = 0;
};

/// Logistic function evaluated without overflow for any finite z.
double sigmoid(double z);
/// log(1 + exp(z)) evaluated without overflow; equals -log(sigmoid(-z)).
double softplus(double z);

/// Sum with a fixed pairwise reduction tree; the result only depends on the
/// order of `values`.
double pairwise_sum(std::span<const double> values);

/// clamp(sqrt((N + eps) / (P + eps)), 1, w_max)
double adaptive_positive_weight(std::size_t P, std::size_t N, double w_max, double eps);

/// 1 - (2 sum R p y + eps) / (sum R p + sum R y + eps). `prob` must lie in [0, 1].
double roi_dice_loss(const ScalarVolume& prob, const BinaryMask& gt, const BinaryMask& roi, double eps = 1e-5);

/// Dice loss over the whole grid.
double global_dice_loss(const ScalarVolume& prob, const BinaryMask& gt, double eps = 1e-5);

/// Mean over the ROI of -w+ y log s(z) - (1 - y) log(1 - s(z)), with w+ from
/// the ROI's own class counts. Throws EmptyRoiError for an empty ROI.
WeightedBce roi_weighted_bce(const ScalarVolume& logits, const BinaryMask& gt, const BinaryMask& roi,
                             double w_max = 10.0, double eps = 1e-5);

/// Full objective on logits. When `with_gradient` is set, also returns
/// d total / d logits, holding w+ fixed (it depends on labels only).
LossReport total_loss(const ScalarVolume& logits, const BinaryMask& gt, const BinaryMask& roi,
                      const LossConfig& cfg = {}, bool with_gradient = false);

/// Picks the ROI from `regions` according to cfg.region_mode.
LossReport total_loss(const ScalarVolume& logits, const BinaryMask& gt, const SupervisionRegions& regions,
                      const LossConfig& cfg = {}, bool with_gradient = false);

}  // namespace scargeo
