#include "gfc/layers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gfc/error.hpp"
#include "plane_ops.hpp"
#include "plane_solver.hpp"

namespace gfc {

ChannelMixer ChannelMixer::Diagonal(std::vector<double> weights) {
  if (weights.empty()) throw Error(ErrorCode::kInvalidArgument, "diagonal mixer needs weights");
  for (double w : weights) {
    if (!std::isfinite(w)) throw Error(ErrorCode::kNonFinite, "mixer weight is not finite");
  }
  const std::size_t n = weights.size();
  return ChannelMixer(Kind::kDiagonal, n, n, std::move(weights));
}

ChannelMixer ChannelMixer::Full(std::size_t out_channels, std::size_t in_channels,
                                std::vector<double> weights) {
  if (out_channels == 0 || in_channels == 0 || weights.size() != out_channels * in_channels) {
    throw Error(ErrorCode::kInvalidArgument, "full mixer needs out_channels * in_channels weights");
  }
  for (double w : weights) {
    if (!std::isfinite(w)) throw Error(ErrorCode::kNonFinite, "mixer weight is not finite");
  }
  return ChannelMixer(Kind::kFull, out_channels, in_channels, std::move(weights));
}

std::size_t ChannelMixer::OutputChannels(std::size_t in_channels) const {
  if (kind_ == Kind::kIdentity) return in_channels;
  if (in_channels != cols_) {
    throw Error(ErrorCode::kChannelMismatch, "mixer expects " + std::to_string(cols_) +
                                                 " input channels, got " + std::to_string(in_channels));
  }
  return rows_;
}

ChannelMixer ChannelMixer::WithWeights(std::vector<double> weights) const {
  switch (kind_) {
    case Kind::kIdentity:
      if (!weights.empty()) throw Error(ErrorCode::kInvalidArgument, "identity mixer has no weights");
      return Identity();
    case Kind::kDiagonal:
      if (weights.size() != weights_.size()) {
        throw Error(ErrorCode::kInvalidArgument, "weight count changed");
      }
      return Diagonal(std::move(weights));
    case Kind::kFull:
      return Full(rows_, cols_, std::move(weights));
  }
  return Identity();
}

double ChannelMixer::Weight(std::size_t out, std::size_t in) const {
  switch (kind_) {
    case Kind::kIdentity: return out == in ? 1.0 : 0.0;
    case Kind::kDiagonal: return out == in ? weights_[out] : 0.0;
    case Kind::kFull: return weights_[out * cols_ + in];
  }
  return 0.0;
}

LayerSpec MakeLayerSpec(LayerKind kind, std::size_t selected_channels,
                        std::optional<std::vector<std::size_t>> channel_subset) {
  LayerSpec spec;
  spec.kind = kind;
  spec.mixer = ChannelMixer::Diagonal(selected_channels, 1.0);
  spec.channel_subset = std::move(channel_subset);
  return spec;
}

std::size_t ParameterCount(const LayerSpec& spec) { return spec.mixer.parameter_count(); }

namespace {

// Channel bookkeeping for one layer applied to inputs of a given geometry.
struct LayerPlan {
  std::vector<std::size_t> selected;
  std::vector<std::size_t> passthrough;
  std::size_t rank = 0;
  std::size_t mixed = 0;
  std::size_t layer_out = 0;
  std::size_t out_channels = 0;
};

LayerPlan PlanLayer(const LayerSpec& spec, std::size_t rank, std::size_t input_channels) {
  LayerPlan plan;
  plan.rank = rank;
  std::vector<bool> used(input_channels, false);
  if (spec.channel_subset) {
    if (spec.channel_subset->empty()) {
      throw Error(ErrorCode::kInvalidArgument, "channel subset is empty");
    }
    for (std::size_t c : *spec.channel_subset) {
      if (c >= input_channels || used[c]) {
        throw Error(ErrorCode::kInvalidArgument, "channel subset entry " + std::to_string(c) +
                                                     " is out of range or repeated");
      }
      used[c] = true;
      plan.selected.push_back(c);
    }
  } else {
    for (std::size_t c = 0; c < input_channels; ++c) {
      used[c] = true;
      plan.selected.push_back(c);
    }
  }
  for (std::size_t c = 0; c < input_channels; ++c) {
    if (!used[c]) plan.passthrough.push_back(c);
  }

  plan.mixed = spec.mixer.OutputChannels(plan.selected.size());
  if (spec.kind != LayerKind::kLi && plan.mixed % rank != 0) {
    throw Error(ErrorCode::kIndivisibleChannels,
                std::to_string(plan.mixed) + " mixed channels cannot be grouped into " +
                    std::to_string(rank) + "-component vector fields");
  }
  plan.layer_out = spec.kind == LayerKind::kGi ? plan.mixed / rank : plan.mixed;
  plan.out_channels = plan.layer_out + plan.passthrough.size();
  return plan;
}

using Planes = std::vector<std::vector<double>>;

Planes MakePlanes(std::size_t count, std::size_t n) { return Planes(count, std::vector<double>(n, 0.0)); }

void Mix(const ChannelMixer& mixer, const std::vector<std::span<const double>>& in, Planes& out) {
  for (std::size_t o = 0; o < out.size(); ++o) {
    std::fill(out[o].begin(), out[o].end(), 0.0);
    for (std::size_t i = 0; i < in.size(); ++i) {
      const double w = mixer.Weight(o, i);
      if (w == 0.0) continue;
      for (std::size_t p = 0; p < out[o].size(); ++p) out[o][p] += w * in[i][p];
    }
  }
}

// Runs the selected-channel part of the layer on one batch item.
void ForwardItem(const LayerSpec& spec, const LayerPlan& plan, const Shape& shape,
                 detail::PlaneSolver& solver, const Planes& mixed, Planes& out) {
  const std::size_t n = shape.size();
  std::vector<double> laplacian(n), potential(n);
  switch (spec.kind) {
    case LayerKind::kLi:
      for (std::size_t c = 0; c < plan.mixed; ++c) solver.Solve(mixed[c], out[c]);
      break;
    case LayerKind::kGi:
    case LayerKind::kGid:
      for (std::size_t g = 0; g < plan.mixed / plan.rank; ++g) {
        std::fill(laplacian.begin(), laplacian.end(), 0.0);
        for (std::size_t axis = 0; axis < plan.rank; ++axis) {
          detail::AddBackwardDiff(mixed[g * plan.rank + axis], shape, axis, laplacian);
        }
        if (spec.kind == LayerKind::kGi) {
          solver.Solve(laplacian, out[g]);
          continue;
        }
        solver.Solve(laplacian, potential);
        for (std::size_t axis = 0; axis < plan.rank; ++axis) {
          detail::ForwardDiff(potential, shape, axis, out[g * plan.rank + axis]);
        }
      }
      break;
  }
}

// Transpose of ForwardItem: from output gradients to mixed-channel gradients.
void AdjointItem(const LayerSpec& spec, const LayerPlan& plan, const Shape& shape,
                 detail::PlaneSolver& solver, const std::vector<std::span<const double>>& grad_out,
                 Planes& grad_mixed) {
  const std::size_t n = shape.size();
  std::vector<double> source(n), solved(n);
  switch (spec.kind) {
    case LayerKind::kLi:
      for (std::size_t c = 0; c < plan.mixed; ++c) solver.SolveAdjoint(grad_out[c], grad_mixed[c]);
      break;
    case LayerKind::kGi:
    case LayerKind::kGid:
      for (std::size_t g = 0; g < plan.mixed / plan.rank; ++g) {
        if (spec.kind == LayerKind::kGi) {
          solver.SolveAdjoint(grad_out[g], solved);
        } else {
          std::fill(source.begin(), source.end(), 0.0);
          for (std::size_t axis = 0; axis < plan.rank; ++axis) {
            detail::AddForwardDiffAdjoint(grad_out[g * plan.rank + axis], shape, axis, source);
          }
          solver.SolveAdjoint(source, solved);
        }
        for (std::size_t axis = 0; axis < plan.rank; ++axis) {
          detail::BackwardDiffAdjoint(solved, shape, axis, grad_mixed[g * plan.rank + axis]);
        }
      }
      break;
  }
}

void RequireKind(const LayerSpec& spec, LayerKind kind, const char* name) {
  if (spec.kind != kind) {
    throw Error(ErrorCode::kInvalidArgument, std::string(name) + " called with a different layer kind");
  }
}

}  // namespace

std::size_t LayerOutputChannels(const LayerSpec& spec, std::size_t rank, std::size_t input_channels) {
  return PlanLayer(spec, rank, input_channels).out_channels;
}

Field MixChannels(const Field& x, const ChannelMixer& mixer) {
  const std::size_t out_channels = mixer.OutputChannels(x.channels());
  if (mixer.kind() == ChannelMixer::Kind::kIdentity) return x;
  const std::size_t n = x.geometry().plane_size();
  Geometry g = x.geometry();
  g.channels = out_channels;
  std::vector<double> out;
  out.reserve(g.element_count());
  Planes mixed = MakePlanes(out_channels, n);
  for (std::size_t b = 0; b < x.batch(); ++b) {
    std::vector<std::span<const double>> in;
    for (std::size_t c = 0; c < x.channels(); ++c) in.push_back(x.plane(b, c));
    Mix(mixer, in, mixed);
    for (const auto& plane : mixed) out.insert(out.end(), plane.begin(), plane.end());
  }
  return Field::FromValues(g, std::move(out));
}

Field LayerForward(const Field& x, const LayerSpec& spec) {
  const LayerPlan plan = PlanLayer(spec, x.rank(), x.channels());
  const Shape& shape = x.shape();
  const std::size_t n = shape.size();
  detail::PlaneSolver solver(shape, spec.solver, x.precision(), DefaultKernelCache());

  Geometry g = x.geometry();
  g.channels = plan.out_channels;
  std::vector<double> out;
  out.reserve(g.element_count());
  Planes mixed = MakePlanes(plan.mixed, n);
  Planes layer_out = MakePlanes(plan.layer_out, n);
  for (std::size_t b = 0; b < x.batch(); ++b) {
    std::vector<std::span<const double>> selected;
    for (std::size_t c : plan.selected) selected.push_back(x.plane(b, c));
    Mix(spec.mixer, selected, mixed);
    ForwardItem(spec, plan, shape, solver, mixed, layer_out);
    for (const auto& plane : layer_out) out.insert(out.end(), plane.begin(), plane.end());
    for (std::size_t c : plan.passthrough) {
      const auto plane = x.plane(b, c);
      out.insert(out.end(), plane.begin(), plane.end());
    }
  }
  return Field::FromValues(g, std::move(out));
}

Field LiForward(const Field& x, const LayerSpec& spec) {
  RequireKind(spec, LayerKind::kLi, "LiForward");
  return LayerForward(x, spec);
}

Field GiForward(const Field& x, const LayerSpec& spec) {
  RequireKind(spec, LayerKind::kGi, "GiForward");
  return LayerForward(x, spec);
}

Field GidForward(const Field& x, const LayerSpec& spec) {
  RequireKind(spec, LayerKind::kGid, "GidForward");
  return LayerForward(x, spec);
}

LayerGradients LayerAdjoint(const Field& grad_output, const Field& input, const LayerSpec& spec) {
  const LayerPlan plan = PlanLayer(spec, input.rank(), input.channels());
  if (grad_output.shape() != input.shape() || grad_output.batch() != input.batch() ||
      grad_output.channels() != plan.out_channels) {
    throw Error(ErrorCode::kShapeMismatch, "output gradient does not match the layer output geometry");
  }
  const Shape& shape = input.shape();
  const std::size_t n = shape.size();
  detail::PlaneSolver solver(shape, spec.solver, input.precision(), DefaultKernelCache());

  std::vector<double> grad_in(input.size(), 0.0);
  std::vector<double> grad_w(spec.mixer.parameter_count(), 0.0);
  Planes grad_mixed = MakePlanes(plan.mixed, n);
  const bool diagonal = spec.mixer.kind() == ChannelMixer::Kind::kDiagonal;
  const std::size_t selected_count = plan.selected.size();

  for (std::size_t b = 0; b < input.batch(); ++b) {
    std::vector<std::span<const double>> grad_out;
    for (std::size_t c = 0; c < plan.layer_out; ++c) grad_out.push_back(grad_output.plane(b, c));
    AdjointItem(spec, plan, shape, solver, grad_out, grad_mixed);

    auto plane_of = [&](std::size_t c) {
      return std::span<double>(grad_in).subspan((b * input.channels() + c) * n, n);
    };
    for (std::size_t i = 0; i < selected_count; ++i) {
      auto target = plane_of(plan.selected[i]);
      const auto x = input.plane(b, plan.selected[i]);
      for (std::size_t o = 0; o < plan.mixed; ++o) {
        const double w = spec.mixer.Weight(o, i);
        if (w != 0.0) {
          for (std::size_t p = 0; p < n; ++p) target[p] += w * grad_mixed[o][p];
        }
        if (spec.mixer.kind() == ChannelMixer::Kind::kFull || (diagonal && o == i)) {
          double dot = 0.0;
          for (std::size_t p = 0; p < n; ++p) dot += grad_mixed[o][p] * x[p];
          grad_w[diagonal ? i : o * selected_count + i] += dot;
        }
      }
    }
    for (std::size_t j = 0; j < plan.passthrough.size(); ++j) {
      const auto src = grad_output.plane(b, plan.layer_out + j);
      std::copy(src.begin(), src.end(), plane_of(plan.passthrough[j]).begin());
    }
  }
  return LayerGradients{Field::FromValues(input.geometry(), std::move(grad_in)), std::move(grad_w)};
}

}  // namespace gfc
