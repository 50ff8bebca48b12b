#include "clearsky/classifier/train.hpp"

#include <cmath>

#include "clearsky/classifier/targets.hpp"
#include "clearsky/errors.hpp"
#include "clearsky/seeds.hpp"

namespace clearsky::cls {

data::BandStats compute_pixel_stats(const data::PatchSource& source,
                                    const std::vector<std::string>& ids) {
  torch::NoGradGuard no_grad;
  double count = 0.0;
  torch::Tensor sum, sum_sq;
  for (const auto& id : ids) {
    auto px = source.load(id).pixels.to(torch::kFloat64);
    if (!sum.defined()) {
      sum = torch::zeros({px.size(0)}, torch::kFloat64);
      sum_sq = torch::zeros({px.size(0)}, torch::kFloat64);
    }
    sum += px.sum({1, 2});
    sum_sq += (px * px).sum({1, 2});
    count += double(px.size(1)) * double(px.size(2));
  }
  if (!sum.defined() || count == 0.0) {
    throw MissingStats("compute_pixel_stats: no patches");
  }

  data::BandStats stats;
  for (long c = 0; c < sum.size(0); ++c) {
    const double mean = sum[c].item<double>() / count;
    const double var =
        std::max(sum_sq[c].item<double>() / count - mean * mean, 0.0);
    stats.mean.push_back(mean);
    stats.std.push_back(std::sqrt(var));
  }
  return stats;
}

torch::Tensor apply_pixel_stats(const torch::Tensor& batch,
                                const data::BandStats& stats) {
  if (stats.mean.empty()) return batch;
  const long c = batch.size(1);
  if (long(stats.mean.size()) != c) {
    throw MissingStats("apply_pixel_stats: stats cover " +
                       std::to_string(stats.mean.size()) + " channels, batch has " +
                       std::to_string(c));
  }
  auto mean = torch::tensor(stats.mean, torch::kFloat32).view({1, c, 1, 1});
  auto std = torch::tensor(stats.std, torch::kFloat32)
                 .clamp_min(1e-6)
                 .view({1, c, 1, 1});
  return (batch - mean) / std;
}

namespace {

struct LoadedBatch {
  torch::Tensor pixels;
  std::vector<std::set<int>> labels;
};

LoadedBatch load_batch(const data::PatchSource& source,
                       const std::vector<std::string>& ids,
                       const data::BandStats& stats) {
  LoadedBatch b;
  std::vector<torch::Tensor> tensors;
  tensors.reserve(ids.size());
  for (const auto& id : ids) {
    auto patch = source.load(id);
    tensors.push_back(patch.pixels);
    b.labels.push_back(patch.labels);
  }
  b.pixels = apply_pixel_stats(torch::stack(tensors, 0), stats);
  return b;
}

MetricsReport evaluate_split(ResNet18& net, const data::PatchSource& source,
                             const std::vector<std::string>& ids,
                             const data::BandStats& stats,
                             const ClassifierTrainConfig& cfg, int batch_size,
                             double* tuned_tau) {
  torch::NoGradGuard no_grad;
  net->eval();

  std::vector<torch::Tensor> prob_rows;
  std::vector<std::set<int>> truths;
  for (std::size_t i = 0; i < ids.size(); i += std::size_t(batch_size)) {
    std::vector<std::string> chunk(
        ids.begin() + long(i),
        ids.begin() + long(std::min(ids.size(), i + std::size_t(batch_size))));
    auto batch = load_batch(source, chunk, stats);
    prob_rows.push_back(torch::softmax(net->forward(batch.pixels), 1));
    truths.insert(truths.end(), batch.labels.begin(), batch.labels.end());
  }
  auto probs = torch::cat(prob_rows, 0);

  PredictRule rule = cfg.rule;
  if (cfg.tune_tau) {
    rule.tau_abs = tune_tau_abs(probs, truths, cfg.rule.alpha, default_tau_grid());
  }
  if (tuned_tau != nullptr) *tuned_tau = rule.tau_abs;

  std::vector<std::set<int>> preds;
  preds.reserve(truths.size());
  for (long i = 0; i < probs.size(0); ++i) {
    preds.push_back(predict_labels(probs[i], rule));
  }
  return evaluate_metrics(preds, truths, cfg.averaging);
}

}  // namespace

ClassifierTrainResult train_classifier(
    const ClassifierTrainConfig& config, const data::DatasetManifest& manifest,
    const data::PatchSource& source,
    const std::function<void(const EpochMetrics&)>& on_epoch) {
  if (manifest.train.empty() || manifest.val.empty()) {
    throw BadConfig("train_classifier: manifest needs nonempty train and val");
  }

  SeedBank seeds(config.seed);
  torch::manual_seed(seeds.seed_for("classifier/torch"));
  auto shuffle_rng = seeds.engine("classifier/shuffle");
  auto drop_rng = seeds.engine("classifier/drop_labels");

  const int n_classes = int(manifest.label_vocabulary.size());
  const auto probe = source.load(manifest.train.front());
  const int in_channels = int(probe.pixels.size(0));

  data::BandStats stats;
  if (config.normalization == "zscore") {
    stats = compute_pixel_stats(source, manifest.train);
  }

  ResNet18 net(in_channels, n_classes);
  torch::optim::SGD opt(net->parameters(),
                        torch::optim::SGDOptions(config.lr)
                            .momentum(config.momentum)
                            .weight_decay(config.weight_decay));

  ClassifierTrainResult result;
  result.pixel_stats = stats;
  std::vector<torch::Tensor> best_params;

  std::vector<std::string> order = manifest.train;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    net->train();
    deterministic_shuffle(order, shuffle_rng);

    double loss_sum = 0.0;
    long batch_count = 0;
    for (std::size_t i = 0; i < order.size(); i += std::size_t(config.batch_size)) {
      std::vector<std::string> chunk(
          order.begin() + long(i),
          order.begin() +
              long(std::min(order.size(), i + std::size_t(config.batch_size))));
      auto batch = load_batch(source, chunk, stats);

      std::vector<torch::Tensor> target_rows;
      target_rows.reserve(batch.labels.size());
      for (const auto& labels : batch.labels) {
        target_rows.push_back(
            target_distribution(drop_labels(labels, drop_rng), n_classes));
      }
      auto targets = torch::stack(target_rows, 0);

      opt.zero_grad();
      auto loss = classification_loss(net->forward(batch.pixels), targets);
      const double loss_val = loss.item<double>();
      if (!std::isfinite(loss_val)) {
        throw DivergedTraining("classifier loss non-finite at epoch " +
                               std::to_string(epoch));
      }
      loss.backward();
      opt.step();
      loss_sum += loss_val;
      ++batch_count;
    }

    EpochMetrics em;
    em.epoch = epoch;
    em.train_loss = batch_count > 0 ? loss_sum / double(batch_count) : 0.0;
    double tuned_tau = config.rule.tau_abs;
    em.report = evaluate_split(net, source, manifest.val, stats, config,
                               config.batch_size, &tuned_tau);
    result.history.push_back(em);
    if (on_epoch) on_epoch(em);

    if (em.report.f2 > result.best_f2) {
      result.best_f2 = em.report.f2;
      result.best_epoch = epoch;
      result.tuned_tau = tuned_tau;
      best_params.clear();
      torch::NoGradGuard no_grad;
      for (const auto& p : net->parameters()) best_params.push_back(p.clone());
      for (const auto& b : net->buffers()) best_params.push_back(b.clone());
    }
  }

  // Restore the best-F2 checkpoint into the returned network.
  if (!best_params.empty()) {
    torch::NoGradGuard no_grad;
    std::size_t k = 0;
    for (auto& p : net->parameters()) p.copy_(best_params[k++]);
    for (auto& b : net->buffers()) b.copy_(best_params[k++]);
  }
  net->eval();
  result.net = net;
  return result;
}

torch::Tensor extract_features(ResNet18& net, const torch::Tensor& batch) {
  if (batch.dim() != 4 || batch.size(1) != net->in_channels()) {
    throw ShapeMismatch("extract_features: expected [n," +
                        std::to_string(net->in_channels()) + ",H,W]");
  }
  torch::NoGradGuard no_grad;
  const bool was_training = net->is_training();
  net->eval();
  auto feats = net->features(batch);
  if (was_training) net->train();
  return feats;
}

torch::Tensor extract_features_for(ResNet18& net, const data::PatchSource& source,
                                   const std::vector<std::string>& ids,
                                   const data::BandStats& stats, int batch_size) {
  std::vector<torch::Tensor> rows;
  for (std::size_t i = 0; i < ids.size(); i += std::size_t(batch_size)) {
    std::vector<std::string> chunk(
        ids.begin() + long(i),
        ids.begin() + long(std::min(ids.size(), i + std::size_t(batch_size))));
    auto pixels = apply_pixel_stats(source.load_batch(chunk), stats);
    rows.push_back(extract_features(net, pixels));
  }
  return torch::cat(rows, 0);
}

}  // namespace clearsky::cls
