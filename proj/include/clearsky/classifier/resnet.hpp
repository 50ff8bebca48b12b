#pragma once

#include <torch/torch.h>

namespace clearsky::cls {

struct BasicBlockImpl : torch::nn::Module {
  BasicBlockImpl(int in_planes, int planes, int stride);
  torch::Tensor forward(torch::Tensor x);

  torch::nn::Conv2d conv1{nullptr}, conv2{nullptr};
  torch::nn::BatchNorm2d bn1{nullptr}, bn2{nullptr};
  torch::nn::Sequential downsample;
};
TORCH_MODULE(BasicBlock);

/// 18-layer residual classifier. The penultimate activation is a
/// 512-dimensional global-average-pooled feature vector; `features` taps it
/// immediately before the final linear layer.
struct ResNet18Impl : torch::nn::Module {
  ResNet18Impl(int in_channels, int n_classes);

  torch::Tensor features(torch::Tensor x);  // [n, 512]
  torch::Tensor forward(torch::Tensor x);   // [n, n_classes] logits

  int in_channels() const { return in_channels_; }
  int n_classes() const { return n_classes_; }

  torch::nn::Conv2d conv1{nullptr};
  torch::nn::BatchNorm2d bn1{nullptr};
  torch::nn::Sequential layer1, layer2, layer3, layer4;
  torch::nn::Linear fc{nullptr};

 private:
  torch::nn::Sequential make_layer(int planes, int stride);
  int in_planes_ = 64;
  int in_channels_;
  int n_classes_;
};
TORCH_MODULE(ResNet18);

}  // namespace clearsky::cls
