#pragma once

#include <set>
#include <vector>

#include <torch/torch.h>

namespace clearsky::cls {

struct MetricsReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
  bool degenerate = false;  // a division-by-zero case was scored as 0
};

enum class Averaging { kMicro, kPerSample };

/// F_beta = (1 + beta^2) P R / (beta^2 P + R); 0 when the denominator is 0.
double f_beta(double precision, double recall, double beta);

/// Precision/recall/F1/F2 of predicted label sets against ground truth,
/// either micro-aggregated over counts or averaged per sample.
MetricsReport evaluate_metrics(const std::vector<std::set<int>>& predicted,
                               const std::vector<std::set<int>>& truth,
                               Averaging averaging);

/// Decision rule for softmax outputs: keep classes with probability at
/// least max(tau_abs, alpha * max probability); the argmax class is always
/// kept, so the prediction is never empty.
struct PredictRule {
  double tau_abs = 0.05;
  double alpha = 0.5;
};

std::set<int> predict_labels(const torch::Tensor& probabilities,
                             const PredictRule& rule);

/// Exhaustive grid search for the tau_abs maximizing validation F2 (micro),
/// at fixed alpha. Ties resolve to the smallest tau.
double tune_tau_abs(const torch::Tensor& probabilities,
                    const std::vector<std::set<int>>& truth, double alpha,
                    const std::vector<double>& grid);

/// The default tuning grid {0.01, 0.02, ..., 0.50}.
std::vector<double> default_tau_grid();

}  // namespace clearsky::cls
