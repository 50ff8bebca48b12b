#include "clearsky/classifier/targets.hpp"

#include <vector>

#include "clearsky/errors.hpp"
#include "clearsky/seeds.hpp"

namespace clearsky::cls {

std::set<int> drop_labels(const std::set<int>& labels, std::mt19937_64& rng) {
  if (labels.empty()) {
    throw EmptyLabels("drop_labels: empty label set");
  }
  const bool keep_all = uniform_index(rng, 2) == 0;
  if (keep_all) {
    return labels;
  }
  std::vector<int> flat(labels.begin(), labels.end());
  return {flat[uniform_index(rng, flat.size())]};
}

torch::Tensor target_distribution(const std::set<int>& labels, int n_classes) {
  if (labels.empty()) {
    throw EmptyLabels("target_distribution: empty label set");
  }
  auto t = torch::zeros({n_classes}, torch::kFloat32);
  const float mass = 1.0f / float(labels.size());
  for (int l : labels) {
    t[l] = mass;
  }
  return t;
}

torch::Tensor classification_loss(const torch::Tensor& logits,
                                  const torch::Tensor& targets) {
  if (logits.sizes() != targets.sizes()) {
    throw ShapeMismatch("classification_loss: logits and targets differ in shape");
  }
  if (!torch::isfinite(logits).all().item<bool>()) {
    throw NonFiniteLogits("classification_loss: non-finite logits");
  }
  auto log_probs = torch::log_softmax(logits, /*dim=*/1);
  return -(targets * log_probs).sum(1).mean();
}

}  // namespace clearsky::cls
