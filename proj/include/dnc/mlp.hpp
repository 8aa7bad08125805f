#pragma once

#include <cstddef>
#include <vector>

#include "dnc/linalg.hpp"
#include "dnc/rng.hpp"

namespace dnc {

enum class OutputActivation { Tanh, Identity };

// Feed-forward network with ReLU hidden layers. layer_sizes holds
// [input, hidden..., output]; zero hidden layers gives a shallow (affine)
// network.
struct MlpParams {
  std::vector<std::size_t> layer_sizes;
  std::vector<Mat64> weights;  // weights[l]: layer_sizes[l+1] x layer_sizes[l]
  std::vector<Vec64> biases;
  OutputActivation output_activation = OutputActivation::Identity;

  std::size_t n_layers() const { return weights.size(); }
  std::size_t input_dim() const { return layer_sizes.front(); }
  std::size_t output_dim() const { return layer_sizes.back(); }
};

// Weights drawn uniform in [-1/sqrt(fan_in), +1/sqrt(fan_in)], biases zero.
MlpParams make_mlp(const std::vector<std::size_t>& layer_sizes,
                   OutputActivation output_activation, Rng& rng);

// Builds [input, hidden, hidden, output] from a nodes-per-layer count;
// nodes == 0 means shallow.
std::vector<std::size_t> layer_sizes_from_nodes(std::size_t input, std::size_t nodes,
                                                std::size_t output);

struct MlpCache {
  Vec64 input;
  std::vector<Vec64> pre;   // pre-activations z_l per layer
  std::vector<Vec64> post;  // activations after each layer
};

Vec64 mlp_forward(const MlpParams& p, const Vec64& x, MlpCache* cache = nullptr);

struct MlpGrad {
  std::vector<Mat64> d_weights;
  std::vector<Vec64> d_biases;
};

// Backpropagates upstream = d(scalar objective)/d(output) through the cached
// forward pass; returns gradients shaped like the parameters.
MlpGrad mlp_grad(const MlpParams& p, const MlpCache& cache, const Vec64& upstream);

// p <- p - lr * grad. Throws on non-finite gradient entries.
void sgd_step(MlpParams& p, const MlpGrad& grad, double lr);

std::size_t parameter_count(const MlpParams& p);

}  // namespace dnc
