#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "clearsky/classifier/metrics.hpp"
#include "clearsky/classifier/resnet.hpp"
#include "clearsky/data/manifest.hpp"
#include "clearsky/data/pair_stream.hpp"
#include "clearsky/data/patch.hpp"

namespace clearsky::cls {

struct ClassifierTrainConfig {
  int epochs = 20;
  int batch_size = 64;
  double lr = 0.05;
  double momentum = 0.9;
  double weight_decay = 5e-4;
  double drop_label_prob = 0.5;  // informational; the regularizer is the 0.5 coin
  PredictRule rule;
  bool tune_tau = true;
  Averaging averaging = Averaging::kMicro;
  std::string normalization = "zscore";  // "unit" | "zscore"
  std::uint64_t seed = 7;
};

struct EpochMetrics {
  int epoch = 0;
  double train_loss = 0.0;
  MetricsReport report;
};

struct ClassifierTrainResult {
  ResNet18 net{nullptr};       // best-F2 parameters
  data::BandStats pixel_stats; // per-channel standardization, empty for unit
  double tuned_tau = 0.0;
  int best_epoch = -1;
  double best_f2 = -1.0;
  std::vector<EpochMetrics> history;
};

/// Per-channel mean/std of stored pixel values over the given patches.
data::BandStats compute_pixel_stats(const data::PatchSource& source,
                                    const std::vector<std::string>& ids);

/// Standardizes a [B,C,H,W] batch with the given stats (no-op if empty).
torch::Tensor apply_pixel_stats(const torch::Tensor& batch,
                                const data::BandStats& stats);

/// Trains the residual classifier on the manifest's train split (both
/// domains). Every training example passes through drop_labels; validation
/// metrics are computed per epoch without dropping and the best-F2
/// parameters are retained. Throws DivergedTraining on non-finite loss.
ClassifierTrainResult train_classifier(
    const ClassifierTrainConfig& config, const data::DatasetManifest& manifest,
    const data::PatchSource& source,
    const std::function<void(const EpochMetrics&)>& on_epoch = {});

/// Global-average-pooled penultimate activations, [n, 512]. Deterministic:
/// evaluation mode with frozen batch-norm statistics.
torch::Tensor extract_features(ResNet18& net, const torch::Tensor& batch);

/// Features of a list of patches, loaded in fixed order with the given
/// normalization stats, batched at `batch_size`.
torch::Tensor extract_features_for(ResNet18& net, const data::PatchSource& source,
                                   const std::vector<std::string>& ids,
                                   const data::BandStats& stats,
                                   int batch_size = 64);

}  // namespace clearsky::cls
