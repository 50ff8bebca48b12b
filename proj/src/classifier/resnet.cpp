#include "clearsky/classifier/resnet.hpp"

namespace clearsky::cls {

using torch::nn::BatchNorm2d;
using torch::nn::BatchNorm2dOptions;
using torch::nn::Conv2d;
using torch::nn::Conv2dOptions;

BasicBlockImpl::BasicBlockImpl(int in_planes, int planes, int stride) {
  conv1 = register_module(
      "conv1", Conv2d(Conv2dOptions(in_planes, planes, 3).stride(stride).padding(1).bias(false)));
  bn1 = register_module("bn1", BatchNorm2d(planes));
  conv2 = register_module(
      "conv2", Conv2d(Conv2dOptions(planes, planes, 3).stride(1).padding(1).bias(false)));
  bn2 = register_module("bn2", BatchNorm2d(planes));
  if (stride != 1 || in_planes != planes) {
    downsample = torch::nn::Sequential(
        Conv2d(Conv2dOptions(in_planes, planes, 1).stride(stride).bias(false)),
        BatchNorm2d(planes));
    register_module("downsample", downsample);
  }
}

torch::Tensor BasicBlockImpl::forward(torch::Tensor x) {
  auto identity = downsample.is_empty() ? x : downsample->forward(x);
  auto out = torch::relu(bn1->forward(conv1->forward(x)));
  out = bn2->forward(conv2->forward(out));
  return torch::relu(out + identity);
}

ResNet18Impl::ResNet18Impl(int in_channels, int n_classes)
    : in_channels_(in_channels), n_classes_(n_classes) {
  conv1 = register_module(
      "conv1",
      Conv2d(Conv2dOptions(in_channels, 64, 7).stride(2).padding(3).bias(false)));
  bn1 = register_module("bn1", BatchNorm2d(64));
  layer1 = register_module("layer1", make_layer(64, 1));
  layer2 = register_module("layer2", make_layer(128, 2));
  layer3 = register_module("layer3", make_layer(256, 2));
  layer4 = register_module("layer4", make_layer(512, 2));
  fc = register_module("fc", torch::nn::Linear(512, n_classes));

  for (auto& m : modules(/*include_self=*/false)) {
    if (auto* conv = m->as<torch::nn::Conv2d>()) {
      torch::nn::init::kaiming_normal_(conv->weight, 0.0,
                                       torch::kFanOut, torch::kReLU);
    } else if (auto* bn = m->as<torch::nn::BatchNorm2d>()) {
      torch::nn::init::constant_(bn->weight, 1.0);
      torch::nn::init::constant_(bn->bias, 0.0);
    }
  }
}

torch::nn::Sequential ResNet18Impl::make_layer(int planes, int stride) {
  torch::nn::Sequential layer(BasicBlock(in_planes_, planes, stride),
                              BasicBlock(planes, planes, 1));
  in_planes_ = planes;
  return layer;
}

torch::Tensor ResNet18Impl::features(torch::Tensor x) {
  x = torch::relu(bn1->forward(conv1->forward(x)));
  x = torch::max_pool2d(x, 3, 2, 1);
  x = layer1->forward(x);
  x = layer2->forward(x);
  x = layer3->forward(x);
  x = layer4->forward(x);
  x = torch::adaptive_avg_pool2d(x, {1, 1});
  return x.flatten(1);
}

torch::Tensor ResNet18Impl::forward(torch::Tensor x) {
  return fc->forward(features(std::move(x)));
}

}  // namespace clearsky::cls
