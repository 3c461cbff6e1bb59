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

#include <gtest/gtest.h>

#include <sstream>

#include "dwstft/gradcheck.hpp"
#include "dwstft/netspec.hpp"
#include "dwstft/network.hpp"
#include "dwstft/param_count.hpp"
#include "test_util.hpp"

namespace dwstft::net {
namespace {

NetSpec parse(const std::string& text) {
  std::istringstream in(text);
  return parse_netspec(in);
}

const char* kSmallConfig = R"(# two plain-width stages
classes = 10
input = 3x32x32
seed = 7
branches = 3,5
[stage.1]
blocks = 2
b = 4
f = 16
pool = true
)";

NetSpec tiny_spec(std::size_t blocks, std::size_t classes = 3) {
  NetSpec s;
  s.classes = classes;
  s.in_channels = 2;
  s.height = 4;
  s.width = 4;
  s.seed = 5;
  s.branch_sizes = {3};
  s.stages = {{blocks, 2, 6, false}};
  return s;
}

TEST(NetSpec, ParsesAndFormatsRoundTrip) {
  const NetSpec spec = parse(kSmallConfig);
  EXPECT_EQ(spec.classes, 10u);
  EXPECT_EQ(spec.seed, 7u);
  ASSERT_EQ(spec.stages.size(), 1u);
  EXPECT_EQ(spec.stages[0].blocks, 2u);
  EXPECT_TRUE(spec.stages[0].pool);
  EXPECT_EQ(spec.branch_sizes, (std::vector<int>{3, 5}));
  const NetSpec again = parse(format_netspec(spec));
  EXPECT_EQ(format_netspec(again), format_netspec(spec));
}

TEST(NetSpec, StagesOrderedByNumber) {
  const NetSpec spec = parse(
      "classes = 2\ninput = 3x8x8\n[stage.2]\nblocks = 1\nb = 4\nf = 16\n"
      "[stage.1]\nblocks = 1\nb = 2\nf = 8\n");
  ASSERT_EQ(spec.stages.size(), 2u);
  EXPECT_EQ(spec.stages[0].out_channels, 8u);
  EXPECT_EQ(spec.stages[1].out_channels, 16u);
}

TEST(NetSpec, RejectsBadConfigs) {
  EXPECT_THROW(parse("colour = 3\n"), SpecError);
  EXPECT_THROW(parse("input = 3x32\n"), SpecError);
  EXPECT_THROW(parse("[stage.1]\nblocks = 1\nb = 4\n"), SpecError);
  // Bottleneck not narrower than the block input (f=4 -> b=4).
  EXPECT_THROW(parse("[stage.1]\nblocks = 2\nb = 4\nf = 4\n"), SpecError);
  EXPECT_THROW(parse("branches = 4\n[stage.1]\nblocks = 1\nb = 2\nf = 8\n"), SpecError);
  EXPECT_THROW(parse("input = 3x6x6\n[stage.1]\nblocks = 1\nb = 2\nf = 8\npool = true\n"
                     "[stage.2]\nblocks = 1\nb = 2\nf = 8\npool = true\n"),
               SpecError);
  EXPECT_THROW(load_netspec("/nonexistent/net.cfg"), IoError);
}

TEST(NetSpec, BlockKinds) {
  NetSpec spec = parse(kSmallConfig);
  spec.stages.push_back({2, 8, 32, false});
  const auto blocks = spec.blocks();
  ASSERT_EQ(blocks.size(), 4u);
  EXPECT_EQ(blocks[0].kind, BlockKind::kPlain);
  EXPECT_EQ(blocks[1].kind, BlockKind::kResidual);
  EXPECT_EQ(blocks[2].kind, BlockKind::kPlain);  // widens 16 -> 32
  EXPECT_EQ(blocks[2].in_channels, 16u);
  EXPECT_EQ(blocks[3].kind, BlockKind::kResidual);
}

TEST(NetSpec, ReferenceLayout) {
  const NetSpec spec = reference_netspec(32, 128, 100);
  EXPECT_EQ(spec.total_blocks(), 16u);
  ASSERT_EQ(spec.stages.size(), 4u);
  for (std::size_t s = 0; s < 4; ++s) EXPECT_EQ(spec.stages[s].pool, s < 3);
  EXPECT_EQ(spec.final_channels(), 128u);
  EXPECT_NO_THROW(spec.validate());
}

TEST(ParamCount, LayerClosedForms) {
  EXPECT_EQ(count_params_layer(LayerKind::kStandard, 4, 3, 16), 576u);
  EXPECT_EQ(count_params_layer(LayerKind::kDepthwiseSeparable, 4, 3, 16), 100u);
  EXPECT_EQ(count_params_layer(LayerKind::kStftSeparable, 4, 3, 16), 512u);
  EXPECT_EQ(count_params_layer(LayerKind::kStftSeparable, 4, 9, 16), 512u);
  EXPECT_EQ(parse_layer_kind("depthwise"), LayerKind::kDepthwiseSeparable);
  EXPECT_THROW(parse_layer_kind("dilated"), ParameterError);
}

// stem 3*16 + 32, two blocks of 16*4 + 2*(8*4*16) + 32, classifier 16*10 + 10.
TEST(ParamCount, SmallNetworkByHand) {
  const NetSpec spec = parse(kSmallConfig);
  EXPECT_EQ(count_params_network(spec).total, 80u + 2 * 1120u + 170u);
}

TEST(ParamCount, MatchesEnumeratedParameters) {
  std::vector<NetSpec> specs{parse(kSmallConfig), tiny_spec(3), reference_netspec(4, 16, 10)};
  NetSpec bare;
  bare.stages.clear();
  specs.push_back(bare);
  NetSpec three = reference_netspec(8, 24, 7);
  three.branch_sizes = {3, 5, 7};
  specs.push_back(three);
  for (const auto& spec : specs) {
    Network<float> network(spec, spec.seed);
    std::uint64_t enumerated = 0;
    for (auto* p : network.trainable_parameters()) enumerated += p->size();
    EXPECT_EQ(count_params_network(spec).total, enumerated);
    EXPECT_EQ(network.trainable_count(), enumerated);
  }
}

TEST(Network, ForwardShapeAndDeterminism) {
  const NetSpec spec = parse(kSmallConfig);
  const auto x = testing::gaussian({2, 3, 32, 32}, 1).cast<float>();
  Network<float> a(spec, 7), b(spec, 7), c(spec, 8);
  const auto ya = a.forward(x, Mode::kEval);
  EXPECT_EQ(ya.shape(), (Shape4{2, 10, 1, 1}));
  EXPECT_EQ(max_rel_diff(ya, b.forward(x, Mode::kEval)), 0.0);
  EXPECT_GT(max_rel_diff(ya, c.forward(x, Mode::kEval)), 0.0);
  EXPECT_THROW(a.forward(testing::gaussian({1, 1, 32, 32}, 2).cast<float>(), Mode::kEval),
               ShapeError);
}

TEST(Network, ReferenceLayoutProbabilitiesSumToOne) {
  Network<float> network(reference_netspec(4, 16, 10), 3);
  const auto x = testing::gaussian({2, 3, 32, 32}, 4).cast<float>();
  const auto p = network.predict(x);
  ASSERT_EQ(p.shape(), (Shape4{2, 10, 1, 1}));
  for (std::size_t b = 0; b < 2; ++b) {
    double s = 0.0;
    for (std::size_t k = 0; k < 10; ++k) {
      EXPECT_GE(p(b, k, 0, 0), 0.0f);
      s += p(b, k, 0, 0);
    }
    EXPECT_NEAR(s, 1.0, 1e-5);
  }
}

TEST(Network, StateRoundTripAndMismatch) {
  const NetSpec spec = tiny_spec(2);
  Network<double> a(spec, 1), b(spec, 2);
  const auto x = testing::gaussian({2, 2, 4, 4}, 5);
  a.forward(x, Mode::kTrain);  // moves running statistics
  b.load_state(a.state());
  EXPECT_EQ(max_rel_diff(a.forward(x, Mode::kEval), b.forward(x, Mode::kEval)), 0.0);
  Network<double> other(tiny_spec(3), 1);
  EXPECT_THROW(other.load_state(a.state()), SpecError);
  auto renamed = a.state();
  renamed[0].name = "nope";
  EXPECT_THROW(b.load_state(renamed), SpecError);
}

// Every trainable coordinate of a block against central differences.
double block_fd_error(BlockKind kind) {
  BlockSpec spec;
  spec.kind = kind;
  spec.in_channels = kind == BlockKind::kResidual ? 6 : 3;
  spec.bottleneck = 2;
  spec.out_channels = 6;
  spec.branch_sizes = {3, 5};
  Block<double> block(spec, "blk", 11);
  auto x = testing::gaussian({2, spec.in_channels, 5, 4}, 12);
  const auto g = testing::gaussian({2, 6, 5, 4}, 13);
  block.forward(x, Mode::kTrain);
  const auto gx = block.backward(g);
  auto loss = [&] { return inner_product(block.forward(x, Mode::kTrain), g); };

  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double num = central_difference(x.data()[i], 1e-5, loss);
    worst = std::max(worst, gradient_rel_error(gx.data()[i], num));
  }
  for (auto* p : block.parameters()) {
    if (!p->trainable) continue;
    const std::vector<double> analytic = p->grad;
    for (std::size_t i = 0; i < p->size(); ++i) {
      const double num = central_difference(p->value[i], 1e-5, loss);
      worst = std::max(worst, gradient_rel_error(analytic[i], num));
    }
  }
  return worst;
}

TEST(Block, PlainGradientsMatchFiniteDifferences) {
  EXPECT_LT(block_fd_error(BlockKind::kPlain), 1e-5);
}

TEST(Block, ResidualGradientsMatchFiniteDifferences) {
  EXPECT_LT(block_fd_error(BlockKind::kResidual), 1e-5);
}

TEST(Block, ZeroExpansionLeavesNormalizedSkip) {
  BlockSpec spec;
  spec.kind = BlockKind::kResidual;
  spec.in_channels = 6;
  spec.bottleneck = 2;
  spec.out_channels = 6;
  Block<double> block(spec, "blk", 3);
  std::fill(block.expansion().weight.value.begin(),
            block.expansion().weight.value.end(), 0.0);
  layers::BatchNorm<double> bn = block.norm();
  const auto x = testing::gaussian({3, 6, 4, 4}, 4);
  const auto expected =
      layers::leaky_relu_forward(layers::batchnorm_forward(x, bn, Mode::kTrain));
  EXPECT_LT(max_rel_diff(block.forward(x, Mode::kTrain), expected), 1e-14);
}

TEST(Block, RejectsInvalidSpecs) {
  BlockSpec spec;
  spec.in_channels = 4;
  spec.bottleneck = 4;
  spec.out_channels = 8;
  EXPECT_THROW(spec.validate(), SpecError);
  spec.bottleneck = 2;
  spec.kind = BlockKind::kResidual;
  EXPECT_THROW(spec.validate(), SpecError);
}

TEST(Network, TwoBlockParameterGradientSpotChecks) {
  const NetSpec spec = tiny_spec(2);
  Network<double> network(spec, 9);
  const auto x = testing::gaussian({3, 2, 4, 4}, 10);
  const std::vector<int> labels{0, 2, 1};
  auto loss = [&] {
    return layers::softmax_xent(network.forward(x, Mode::kTrain),
                                std::span<const int>(labels))
        .loss;
  };
  const auto r = layers::softmax_xent(network.forward(x, Mode::kTrain),
                                      std::span<const int>(labels));
  network.backward(r.grad_logits);
  std::mt19937_64 rng(1);
  std::size_t checked = 0;
  for (auto* p : network.trainable_parameters()) {
    const std::vector<double> analytic = p->grad;
    for (int s = 0; s < 3; ++s) {
      const std::size_t i = rng() % p->size();
      const double num = central_difference(p->value[i], 1e-5, loss);
      EXPECT_LT(gradient_rel_error(analytic[i], num), 1e-4) << p->name << "[" << i << "]";
      ++checked;
    }
  }
  EXPECT_GE(checked, 20u);
}

TEST(ParamCount, ReferenceExamples) {
  EXPECT_EQ(count_params_layer(LayerKind::kStandard, 64, 3, 128), 73728u);
  EXPECT_EQ(count_params_layer(LayerKind::kDepthwiseSeparable, 64, 3, 128), 8768u);
  for (std::uint64_t n : {3u, 5u, 7u, 9u})
    EXPECT_EQ(count_params_layer(LayerKind::kStftSeparable, 64, n, 128), 65536u);

  NetSpec bare;
  bare.in_channels = 128;
  EXPECT_EQ(count_params_network(bare).total, 1290u);

  // One plain block at c = f = 128, b = 8: 128*8 + 16*8*128 without batch norm.
  NetSpec one;
  one.in_channels = 128;
  one.height = one.width = 8;
  one.stages = {{1, 8, 128, false}};
  const auto report = count_params_network(one);
  std::uint64_t block = 0, summed = 0;
  for (const auto& e : report.entries) {
    summed += e.params;
    if (e.name == "stage1.block1") block = e.params;
  }
  EXPECT_EQ(block, 17408u + 2 * 128u);
  EXPECT_EQ(summed, report.total);
}

TEST(Block, ReferenceShape) {
  BlockSpec spec;
  spec.kind = BlockKind::kResidual;
  spec.in_channels = 128;
  spec.bottleneck = 8;
  spec.out_channels = 128;
  Block<float> block(spec, "blk", 1);
  const auto y = block.forward(testing::gaussian({1, 128, 8, 8}, 2).cast<float>(), Mode::kEval);
  EXPECT_EQ(y.shape(), (Shape4{1, 128, 8, 8}));
  EXPECT_THROW(block.forward(testing::gaussian({1, 64, 8, 8}, 2).cast<float>(), Mode::kEval),
               ShapeError);
}

TEST(Block, ZeroWeightsWithIdentityNormLeaveActivatedInput) {
  BlockSpec spec;
  spec.kind = BlockKind::kResidual;
  spec.in_channels = 6;
  spec.bottleneck = 2;
  spec.out_channels = 6;
  Block<double> block(spec, "blk", 3);
  for (auto* pc : {&block.bottleneck(), &block.expansion()})
    std::fill(pc->weight.value.begin(), pc->weight.value.end(), 0.0);
  auto& bn = block.norm();
  std::fill(bn.running_var.value.begin(), bn.running_var.value.end(), 1.0 - bn.epsilon);
  const auto x = testing::gaussian({2, 6, 4, 4}, 5);
  EXPECT_LT(max_rel_diff(block.forward(x, Mode::kEval), layers::leaky_relu_forward(x)), 1e-12);
}

TEST(Network, FullReferenceConfigurationProbabilities) {
  Network<float> network(reference_netspec(64, 128, 10), 1);
  const auto p = network.predict(testing::gaussian({2, 3, 32, 32}, 6).cast<float>());
  ASSERT_EQ(p.shape(), (Shape4{2, 10, 1, 1}));
  for (std::size_t b = 0; b < 2; ++b) {
    double s = 0.0;
    for (std::size_t k = 0; k < 10; ++k) s += p(b, k, 0, 0);
    EXPECT_NEAR(s, 1.0, 1e-6);
  }
}

TEST(Network, DeskConfigurationForwardBackward) {
  NetSpec spec;
  spec.classes = 2;
  spec.stages = {{2, 4, 32, true}, {2, 4, 32, false}};
  Network<float> network(spec, 2);
  const auto x = testing::gaussian({3, 3, 32, 32}, 7).cast<float>();
  const auto logits = network.forward(x, Mode::kTrain);
  EXPECT_EQ(logits.shape(), (Shape4{3, 2, 1, 1}));
  const std::vector<int> labels{0, 1, 1};
  const auto r = layers::softmax_xent(logits, std::span<const int>(labels));
  const auto gx = network.backward(r.grad_logits);
  EXPECT_EQ(gx.shape(), x.shape());
  for (auto* p : network.trainable_parameters()) EXPECT_EQ(p->grad.size(), p->size());
}

TEST(Network, SameSeedBitIdenticalInitialization) {
  const NetSpec spec = parse(kSmallConfig);
  Network<float> a(spec, 4), b(spec, 4);
  EXPECT_EQ(layers::encode_checkpoint(a.state()), layers::encode_checkpoint(b.state()));
}

}  // namespace
}  // namespace dwstft::net
