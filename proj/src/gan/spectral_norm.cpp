#include "clearsky/gan/spectral_norm.hpp"

#include "clearsky/errors.hpp"

namespace clearsky::gan {

namespace {
constexpr double kNormEps = 1e-12;

torch::Tensor l2_normalize(const torch::Tensor& v) {
  return v / v.norm().clamp_min(kNormEps);
}
}  // namespace

PowerIterStep spectral_normalize(const torch::Tensor& w, const torch::Tensor& u) {
  if (w.dim() != 2) {
    throw ShapeMismatch("spectral_normalize: weight must be 2-D");
  }
  if (w.abs().max().item<double>() == 0.0) {
    throw ZeroMatrix("spectral_normalize: zero weight matrix");
  }
  if (u.abs().max().item<double>() == 0.0) {
    throw ZeroMatrix("spectral_normalize: zero u estimate");
  }

  auto v = l2_normalize(torch::mv(w.t(), u));
  auto u_next = l2_normalize(torch::mv(w, v));
  auto sigma = torch::dot(u_next, torch::mv(w, v));

  PowerIterStep step;
  step.sigma = sigma.item<double>();
  step.w_normalized = w / sigma;
  step.u_next = u_next;
  return step;
}

torch::Tensor spectral_weight(const torch::Tensor& weight, torch::Tensor& u,
                              bool training) {
  auto w_mat = weight.view({weight.size(0), -1});

  torch::Tensor v;
  {
    torch::NoGradGuard no_grad;
    if (training) {
      auto step = spectral_normalize(w_mat.detach(), u);
      u.copy_(step.u_next);
    }
    v = l2_normalize(torch::mv(w_mat.detach().t(), u));
  }
  // sigma keeps the graph through the weight; u and v are constants here.
  auto sigma = torch::dot(u, torch::mv(w_mat, v));
  return weight / sigma;
}

SpectralConv2dImpl::SpectralConv2dImpl(torch::nn::Conv2dOptions options,
                                       bool enabled_)
    : enabled(enabled_) {
  conv = register_module("conv", torch::nn::Conv2d(options));
  u = register_buffer(
      "u", l2_normalize(torch::randn({conv->weight.size(0)})));
}

torch::Tensor SpectralConv2dImpl::forward(const torch::Tensor& x) {
  if (!enabled) {
    return conv->forward(x);
  }
  auto w = spectral_weight(conv->weight, u, is_training());
  return torch::nn::functional::detail::conv2d(
      x, w, conv->bias, conv->options.stride(), conv->options.padding(),
      conv->options.dilation(), conv->options.groups());
}

SpectralLinearImpl::SpectralLinearImpl(int in_features, int out_features,
                                       bool enabled_)
    : enabled(enabled_) {
  linear = register_module("linear", torch::nn::Linear(in_features, out_features));
  u = register_buffer(
      "u", l2_normalize(torch::randn({linear->weight.size(0)})));
}

torch::Tensor SpectralLinearImpl::forward(const torch::Tensor& x) {
  if (!enabled) {
    return linear->forward(x);
  }
  auto w = spectral_weight(linear->weight, u, is_training());
  return torch::nn::functional::linear(x, w, linear->bias);
}

}  // namespace clearsky::gan
