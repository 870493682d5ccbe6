#ifndef GFC_LAYERS_HPP
#define GFC_LAYERS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gfc/field.hpp"
#include "gfc/solver.hpp"

namespace gfc {

// Bias-free, activation-free per-pixel linear combination of channels.
class ChannelMixer {
 public:
  enum class Kind { kIdentity, kDiagonal, kFull };

  static ChannelMixer Identity() { return ChannelMixer(Kind::kIdentity, 0, 0, {}); }
  // One weight per channel.
  static ChannelMixer Diagonal(std::vector<double> weights);
  static ChannelMixer Diagonal(std::size_t channels, double weight) {
    return Diagonal(std::vector<double>(channels, weight));
  }
  // Row-major out_channels x in_channels matrix.
  static ChannelMixer Full(std::size_t out_channels, std::size_t in_channels, std::vector<double> weights);

  Kind kind() const noexcept { return kind_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t parameter_count() const noexcept { return weights_.size(); }

  // Channels produced from `in_channels` inputs; throws kChannelMismatch if
  // the mixer cannot consume that many.
  std::size_t OutputChannels(std::size_t in_channels) const;

  // Same kind and shape with different weights (used by gradient checks).
  ChannelMixer WithWeights(std::vector<double> weights) const;

  // Weight linking input channel `in` to output channel `out`.
  double Weight(std::size_t out, std::size_t in) const;

 private:
  ChannelMixer(Kind kind, std::size_t rows, std::size_t cols, std::vector<double> weights)
      : kind_(kind), rows_(rows), cols_(cols), weights_(std::move(weights)) {}

  Kind kind_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> weights_;
};

// Laplacian integration, gradient integration, gradient integration derivative.
enum class LayerKind { kLi, kGi, kGid };

// A layer is: select channels, mix them, then
//   LI:  solve every mixed channel as a Laplacian;
//   GI:  read consecutive groups (u, v[, w]) of mixed channels as a vector
//        field, take its divergence and solve, one potential per group;
//   GID: as GI, then return the gradient of each potential (same channel
//        count as the mixer output).
// Output channels are the layer results followed by the unselected input
// channels in their original order.
struct LayerSpec {
  LayerKind kind = LayerKind::kGid;
  ChannelMixer mixer = ChannelMixer::Identity();
  SolverConfig solver{kDefaultPad, ConstantPolicy::kMeanZero};
  // Input channels the layer consumes; std::nullopt selects all of them.
  std::optional<std::vector<std::size_t>> channel_subset;
};

// Layer with a unit diagonal mixer over `selected_channels` channels, the
// default trainable configuration (one weight per feature).
LayerSpec MakeLayerSpec(LayerKind kind, std::size_t selected_channels,
                        std::optional<std::vector<std::size_t>> channel_subset = std::nullopt);

std::size_t LayerOutputChannels(const LayerSpec& spec, std::size_t rank, std::size_t input_channels);
std::size_t ParameterCount(const LayerSpec& spec);

Field MixChannels(const Field& x, const ChannelMixer& mixer);

Field LayerForward(const Field& x, const LayerSpec& spec);
Field LiForward(const Field& x, const LayerSpec& spec);
Field GiForward(const Field& x, const LayerSpec& spec);
Field GidForward(const Field& x, const LayerSpec& spec);

struct LayerGradients {
  // Transpose of the layer applied to the output gradient.
  Field input;
  // d<grad_output, LayerForward(input)>/d(mixer weights); empty for identity.
  std::vector<double> weights;
};

// Backward pass of LayerForward at `input`.
LayerGradients LayerAdjoint(const Field& grad_output, const Field& input, const LayerSpec& spec);

}  // namespace gfc

#endif  // GFC_LAYERS_HPP
