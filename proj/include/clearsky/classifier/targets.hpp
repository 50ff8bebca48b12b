#pragma once

#include <random>
#include <set>

#include <torch/torch.h>

namespace clearsky::cls {

/// Imbalance regularizer: with probability 0.5 the label set passes through
/// unchanged, otherwise it collapses to a single label chosen uniformly.
std::set<int> drop_labels(const std::set<int>& labels, std::mt19937_64& rng);

/// Uniform distribution over the positive classes, as a length-n_classes
/// probability vector (the softmax training target).
torch::Tensor target_distribution(const std::set<int>& labels, int n_classes);

/// Mean over the batch of the cross entropy H(target, softmax(logits)).
/// logits, targets: [n, n_classes]; each target row sums to 1.
torch::Tensor classification_loss(const torch::Tensor& logits,
                                  const torch::Tensor& targets);

}  // namespace clearsky::cls
