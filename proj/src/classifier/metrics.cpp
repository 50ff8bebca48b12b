#include "clearsky/classifier/metrics.hpp"

#include <algorithm>

#include "clearsky/errors.hpp"

namespace clearsky::cls {

double f_beta(double precision, double recall, double beta) {
  const double b2 = beta * beta;
  const double denom = b2 * precision + recall;
  if (denom <= 0.0) return 0.0;
  return (1.0 + b2) * precision * recall / denom;
}

namespace {

std::size_t intersection_size(const std::set<int>& a, const std::set<int>& b) {
  std::size_t n = 0;
  for (int x : a) n += b.count(x);
  return n;
}

}  // namespace

MetricsReport evaluate_metrics(const std::vector<std::set<int>>& predicted,
                               const std::vector<std::set<int>>& truth,
                               Averaging averaging) {
  if (predicted.size() != truth.size()) {
    throw LengthMismatch("evaluate_metrics: " + std::to_string(predicted.size()) +
                         " predictions vs " + std::to_string(truth.size()) +
                         " truths");
  }
  if (predicted.empty()) {
    throw LengthMismatch("evaluate_metrics: empty sample lists");
  }

  MetricsReport r;
  if (averaging == Averaging::kMicro) {
    std::size_t tp = 0, n_pred = 0, n_true = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
      tp += intersection_size(predicted[i], truth[i]);
      n_pred += predicted[i].size();
      n_true += truth[i].size();
    }
    if (n_pred == 0 || n_true == 0) r.degenerate = true;
    r.precision = n_pred == 0 ? 0.0 : double(tp) / double(n_pred);
    r.recall = n_true == 0 ? 0.0 : double(tp) / double(n_true);
  } else {
    double p_sum = 0.0, r_sum = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
      const auto tp = double(intersection_size(predicted[i], truth[i]));
      if (predicted[i].empty() || truth[i].empty()) r.degenerate = true;
      p_sum += predicted[i].empty() ? 0.0 : tp / double(predicted[i].size());
      r_sum += truth[i].empty() ? 0.0 : tp / double(truth[i].size());
    }
    r.precision = p_sum / double(predicted.size());
    r.recall = r_sum / double(predicted.size());
  }
  r.f1 = f_beta(r.precision, r.recall, 1.0);
  r.f2 = f_beta(r.precision, r.recall, 2.0);
  return r;
}

std::set<int> predict_labels(const torch::Tensor& probabilities,
                             const PredictRule& rule) {
  auto probs = probabilities.to(torch::kFloat64).flatten();
  const auto n = probs.size(0);
  const double* p = probs.data_ptr<double>();

  long argmax = 0;
  for (long c = 1; c < n; ++c) {
    if (p[c] > p[argmax]) argmax = c;
  }
  const double cut = std::max(rule.tau_abs, rule.alpha * p[argmax]);

  std::set<int> out;
  for (long c = 0; c < n; ++c) {
    if (p[c] >= cut) out.insert(int(c));
  }
  out.insert(int(argmax));
  return out;
}

std::vector<double> default_tau_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 50; ++i) grid.push_back(i / 100.0);
  return grid;
}

double tune_tau_abs(const torch::Tensor& probabilities,
                    const std::vector<std::set<int>>& truth, double alpha,
                    const std::vector<double>& grid) {
  if (std::size_t(probabilities.size(0)) != truth.size()) {
    throw LengthMismatch("tune_tau_abs: probability rows vs truths");
  }
  double best_tau = grid.at(0);
  double best_f2 = -1.0;
  for (double tau : grid) {
    std::vector<std::set<int>> preds;
    preds.reserve(truth.size());
    for (long i = 0; i < probabilities.size(0); ++i) {
      preds.push_back(predict_labels(probabilities[i], {tau, alpha}));
    }
    const double f2 = evaluate_metrics(preds, truth, Averaging::kMicro).f2;
    if (f2 > best_f2) {
      best_f2 = f2;
      best_tau = tau;
    }
  }
  return best_tau;
}

}  // namespace clearsky::cls
