/* Copyright 2026 The dwstft Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License. */

#include "dwstft/network.hpp"

#include "dwstft/init.hpp"

namespace dwstft::net {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

template <typename T>
void init_orthogonal(layers::PointwiseConv<T>& conv, std::uint64_t seed) {
  const auto q =
      layers::orthogonal_init(conv.out_channels, conv.in_channels, seed);
  for (std::size_t i = 0; i < q.size(); ++i) {
    conv.weight.value[i] = static_cast<T>(q[i]);
  }
}

template <typename T>
void assign(std::vector<T>& dst, const std::vector<T>& src) {
  std::copy(src.begin(), src.end(), dst.begin());
}

}  // namespace

template <typename T>
Block<T>::Block(const BlockSpec& spec, const std::string& name,
                std::uint64_t seed)
    : spec_(spec), name_(name) {
  spec_.validate();
  bottleneck_ = layers::PointwiseConv<T>(spec.in_channels, spec.bottleneck,
                                         false, name + ".bottleneck");
  for (int n : spec.branch_sizes) bases_.emplace_back(n);
  expansion_ = layers::PointwiseConv<T>(spec.concat_channels(),
                                        spec.out_channels, false,
                                        name + ".expansion");
  norm_ = layers::BatchNorm<T>(spec.out_channels, name + ".bn");
  init_orthogonal(bottleneck_, splitmix64(seed ^ 0x1));
  init_orthogonal(expansion_, splitmix64(seed ^ 0x2));
}

template <typename T>
Tensor4<T> Block<T>::forward(const Tensor4<T>& x, Mode mode) {
  if (x.shape().channels != spec_.in_channels) {
    throw ShapeError(name_ + " expects " + std::to_string(spec_.in_channels) +
                     " channels, got " + to_string(x.shape()));
  }
  input_ = x;
  reduced_ = layers::pointwise_forward(x, bottleneck_);
  std::vector<Tensor4<T>> branches;
  branches.reserve(bases_.size());
  for (const stft::StftBasis& basis : bases_) {
    branches.push_back(stft::forward_separable(reduced_, basis));
  }
  concat_ = concat_channels<T>(branches);
  Tensor4<T> expanded = layers::pointwise_forward(concat_, expansion_);
  if (spec_.kind == BlockKind::kResidual) expanded += x;
  pre_activation_ = layers::batchnorm_forward(expanded, norm_, mode, &norm_cache_);
  return layers::leaky_relu_forward(pre_activation_);
}

template <typename T>
Tensor4<T> Block<T>::backward(const Tensor4<T>& grad_out) {
  if (input_.empty()) throw ShapeError(name_ + ": backward before forward");
  Tensor4<T> g = layers::leaky_relu_backward(pre_activation_, grad_out);
  auto bn = layers::batchnorm_backward(g, norm_, norm_cache_);
  assign(norm_.gamma.grad, bn.grad_gamma);
  assign(norm_.beta.grad, bn.grad_beta);

  auto exp = layers::pointwise_backward(concat_, expansion_, bn.grad_x);
  assign(expansion_.weight.grad, exp.grad_w);

  const std::vector<std::size_t> sizes(bases_.size(),
                                       8 * spec_.bottleneck);
  const auto parts = split_channels(exp.grad_x, sizes);
  Tensor4<T> grad_reduced(reduced_.shape());
  for (std::size_t i = 0; i < bases_.size(); ++i) {
    grad_reduced += stft::backward(parts[i], bases_[i], reduced_.shape());
  }

  auto red = layers::pointwise_backward(input_, bottleneck_, grad_reduced);
  assign(bottleneck_.weight.grad, red.grad_w);
  Tensor4<T> grad_in = std::move(red.grad_x);
  if (spec_.kind == BlockKind::kResidual) grad_in += bn.grad_x;
  return grad_in;
}

template <typename T>
std::vector<Param<T>*> Block<T>::parameters() {
  return {&bottleneck_.weight, &expansion_.weight, &norm_.gamma, &norm_.beta,
          &norm_.running_mean, &norm_.running_var};
}

template <typename T>
Network<T>::Network(const NetSpec& spec, std::uint64_t seed) : spec_(spec) {
  spec_.validate();
  std::size_t channels = spec.in_channels;
  if (!spec.stages.empty()) {
    has_stem_ = true;
    channels = spec.stages.front().out_channels;
    stem_ = layers::PointwiseConv<T>(spec.in_channels, channels, false,
                                     "stem.conv");
    stem_norm_ = layers::BatchNorm<T>(channels, "stem.bn");
    init_orthogonal(stem_, splitmix64(seed ^ 0xabcdef));
  }
  const std::vector<BlockSpec> block_specs = spec.blocks();
  std::size_t k = 0;
  for (std::size_t s = 0; s < spec.stages.size(); ++s) {
    Stage stage;
    stage.first_block = k;
    stage.blocks = spec.stages[s].blocks;
    stage.pool = spec.stages[s].pool;
    for (std::size_t j = 0; j < stage.blocks; ++j, ++k) {
      const std::string name =
          "stage" + std::to_string(s + 1) + ".block" + std::to_string(j + 1);
      blocks_.emplace_back(block_specs[k], name, splitmix64(seed + 1000 * (k + 1)));
    }
    stages_.push_back(std::move(stage));
  }
  classifier_ = layers::PointwiseConv<T>(spec.final_channels(), spec.classes,
                                         true, "classifier");
  init_orthogonal(classifier_, splitmix64(seed ^ 0x5eed));
}

template <typename T>
Tensor4<T> Network<T>::forward(const Tensor4<T>& x, Mode mode) {
  const Shape4& s = x.shape();
  if (s.channels != spec_.in_channels) {
    throw ShapeError("network expects " + std::to_string(spec_.in_channels) +
                     " input channels, got " + to_string(s));
  }
  input_ = x;
  Tensor4<T> h = x;
  if (has_stem_) {
    stem_pre_activation_ = layers::batchnorm_forward(
        layers::pointwise_forward(x, stem_), stem_norm_, mode, &stem_cache_);
    h = layers::leaky_relu_forward(stem_pre_activation_);
  }
  for (Stage& stage : stages_) {
    for (std::size_t j = 0; j < stage.blocks; ++j) {
      h = blocks_[stage.first_block + j].forward(h, mode);
    }
    if (stage.pool) {
      stage.pool_input = h.shape();
      auto pooled = layers::maxpool2_forward(h);
      stage.argmax = std::move(pooled.argmax);
      h = std::move(pooled.out);
    }
  }
  pooled_from_ = h.shape();
  pooled_ = layers::global_avg_pool_forward(h);
  return layers::pointwise_forward(pooled_, classifier_);
}

template <typename T>
Tensor4<T> Network<T>::backward(const Tensor4<T>& grad_logits) {
  if (pooled_.empty()) throw ShapeError("network backward before forward");
  auto cls = layers::pointwise_backward(pooled_, classifier_, grad_logits);
  assign(classifier_.weight.grad, cls.grad_w);
  assign(classifier_.bias.grad, cls.grad_b);
  Tensor4<T> g = layers::global_avg_pool_backward(cls.grad_x, pooled_from_);
  for (auto it = stages_.rbegin(); it != stages_.rend(); ++it) {
    if (it->pool) g = layers::maxpool2_backward(g, it->argmax, it->pool_input);
    for (std::size_t j = it->blocks; j-- > 0;) {
      g = blocks_[it->first_block + j].backward(g);
    }
  }
  if (has_stem_) {
    g = layers::leaky_relu_backward(stem_pre_activation_, g);
    auto bn = layers::batchnorm_backward(g, stem_norm_, stem_cache_);
    assign(stem_norm_.gamma.grad, bn.grad_gamma);
    assign(stem_norm_.beta.grad, bn.grad_beta);
    auto conv = layers::pointwise_backward(input_, stem_, bn.grad_x);
    assign(stem_.weight.grad, conv.grad_w);
    g = std::move(conv.grad_x);
  }
  return g;
}

template <typename T>
Tensor4<T> Network<T>::predict(const Tensor4<T>& x) {
  return layers::softmax(forward(x, Mode::kEval));
}

template <typename T>
std::vector<Param<T>*> Network<T>::parameters() {
  std::vector<Param<T>*> out;
  if (has_stem_) {
    out.insert(out.end(), {&stem_.weight, &stem_norm_.gamma, &stem_norm_.beta,
                           &stem_norm_.running_mean, &stem_norm_.running_var});
  }
  for (Block<T>& b : blocks_) {
    auto ps = b.parameters();
    out.insert(out.end(), ps.begin(), ps.end());
  }
  out.push_back(&classifier_.weight);
  out.push_back(&classifier_.bias);
  return out;
}

template <typename T>
std::vector<Param<T>*> Network<T>::trainable_parameters() {
  std::vector<Param<T>*> out;
  for (Param<T>* p : parameters()) {
    if (p->trainable) out.push_back(p);
  }
  return out;
}

template <typename T>
std::uint64_t Network<T>::trainable_count() {
  std::uint64_t n = 0;
  for (Param<T>* p : trainable_parameters()) n += p->size();
  return n;
}

template <typename T>
std::vector<layers::NamedTensor> Network<T>::state() {
  std::vector<layers::NamedTensor> out;
  for (Param<T>* p : parameters()) {
    layers::NamedTensor t;
    t.name = p->name;
    t.dims.assign(p->dims.begin(), p->dims.end());
    t.values.assign(p->value.begin(), p->value.end());
    out.push_back(std::move(t));
  }
  return out;
}

template <typename T>
void Network<T>::load_state(const std::vector<layers::NamedTensor>& tensors) {
  auto params = parameters();
  if (tensors.size() != params.size()) {
    throw SpecError("checkpoint holds " + std::to_string(tensors.size()) +
                    " tensors, network has " + std::to_string(params.size()));
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    const layers::NamedTensor& t = tensors[i];
    Param<T>& p = *params[i];
    const bool dims_match =
        t.dims.size() == p.dims.size() &&
        std::equal(t.dims.begin(), t.dims.end(), p.dims.begin());
    if (t.name != p.name || !dims_match) {
      throw SpecError("checkpoint tensor '" + t.name +
                      "' does not match network parameter '" + p.name + "'");
    }
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto& v = tensors[i].values;
    for (std::size_t j = 0; j < v.size(); ++j) {
      params[i]->value[j] = static_cast<T>(v[j]);
    }
  }
}

template class Block<float>;
template class Block<double>;
template class Network<float>;
template class Network<double>;

}  // namespace dwstft::net
