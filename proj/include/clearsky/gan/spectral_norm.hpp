#pragma once

#include <torch/torch.h>

namespace clearsky::gan {

struct PowerIterStep {
  torch::Tensor w_normalized;
  torch::Tensor u_next;
  double sigma = 0.0;
};

/// One power-iteration step on a 2-D weight matrix (out_rows x rest):
///   v = normalize(w^T u), u' = normalize(w v), sigma = u'^T w v
/// returning w / sigma and the updated left-singular estimate. Throws
/// ZeroMatrix when w or u vanishes.
PowerIterStep spectral_normalize(const torch::Tensor& w, const torch::Tensor& u);

/// Conv2d whose weight is divided by the power-iteration estimate of its
/// top singular value (kernel flattened to out_channels x rest) on every
/// training forward. Evaluation forwards reuse the stored estimate without
/// touching it. With `enabled` false this is a plain convolution.
struct SpectralConv2dImpl : torch::nn::Module {
  SpectralConv2dImpl(torch::nn::Conv2dOptions options, bool enabled);
  torch::Tensor forward(const torch::Tensor& x);

  torch::nn::Conv2d conv{nullptr};
  torch::Tensor u;  // power-iteration state, a registered buffer
  bool enabled;
};
TORCH_MODULE(SpectralConv2d);

struct SpectralLinearImpl : torch::nn::Module {
  SpectralLinearImpl(int in_features, int out_features, bool enabled);
  torch::Tensor forward(const torch::Tensor& x);

  torch::nn::Linear linear{nullptr};
  torch::Tensor u;
  bool enabled;
};
TORCH_MODULE(SpectralLinear);

/// Shared implementation for both layer kinds: returns the weight to use in
/// this forward pass and, in training mode, advances `u` in place.
torch::Tensor spectral_weight(const torch::Tensor& weight, torch::Tensor& u,
                              bool training);

}  // namespace clearsky::gan
