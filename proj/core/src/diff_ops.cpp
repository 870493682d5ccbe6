#include "gfc/diff_ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gfc/error.hpp"
#include "plane_ops.hpp"

namespace gfc {
namespace {

std::span<double> PlaneOf(std::vector<double>& buf, std::size_t plane_index, std::size_t n) {
  return std::span<double>(buf).subspan(plane_index * n, n);
}

std::size_t PlaneCount(const Geometry& g) { return g.batch * g.channels; }

std::span<const double> FlatPlane(const Field& f, std::size_t plane_index) {
  return f.values().subspan(plane_index * f.geometry().plane_size(), f.geometry().plane_size());
}

// Forward difference of component `src` along `axis`, as a new buffer.
std::vector<double> Diff(const Field& src, std::size_t axis) {
  const std::size_t n = src.geometry().plane_size();
  std::vector<double> out(src.size());
  for (std::size_t p = 0; p < PlaneCount(src.geometry()); ++p) {
    detail::ForwardDiff(FlatPlane(src, p), src.shape(), axis, PlaneOf(out, p, n));
  }
  return out;
}

void RequireRank(const VectorField& v, std::size_t rank, const char* op) {
  if (v.size() != rank) {
    throw Error(ErrorCode::kShapeMismatch,
                std::string(op) + " needs a " + std::to_string(rank) + "-component field");
  }
}

}  // namespace

VectorField Gradient(const Field& f) {
  std::vector<Field> components;
  for (std::size_t axis = 0; axis < f.rank(); ++axis) {
    components.push_back(Field::FromValues(f.geometry(), Diff(f, axis)));
  }
  return VectorField(std::move(components));
}

Field Divergence(const VectorField& v) {
  const Geometry& g = v.geometry();
  const std::size_t n = g.plane_size();
  std::vector<double> out(g.element_count(), 0.0);
  for (std::size_t axis = 0; axis < v.size(); ++axis) {
    for (std::size_t p = 0; p < PlaneCount(g); ++p) {
      detail::AddBackwardDiff(FlatPlane(v[axis], p), g.shape, axis, PlaneOf(out, p, n));
    }
  }
  return Field::FromValues(g, std::move(out));
}

Field GradientAdjoint(const VectorField& grad) {
  const Geometry& g = grad.geometry();
  const std::size_t n = g.plane_size();
  std::vector<double> out(g.element_count(), 0.0);
  for (std::size_t axis = 0; axis < grad.size(); ++axis) {
    for (std::size_t p = 0; p < PlaneCount(g); ++p) {
      detail::AddForwardDiffAdjoint(FlatPlane(grad[axis], p), g.shape, axis, PlaneOf(out, p, n));
    }
  }
  return Field::FromValues(g, std::move(out));
}

VectorField DivergenceAdjoint(const Field& f) {
  const std::size_t n = f.geometry().plane_size();
  std::vector<Field> components;
  for (std::size_t axis = 0; axis < f.rank(); ++axis) {
    std::vector<double> out(f.size());
    for (std::size_t p = 0; p < PlaneCount(f.geometry()); ++p) {
      detail::BackwardDiffAdjoint(FlatPlane(f, p), f.shape(), axis, PlaneOf(out, p, n));
    }
    components.push_back(Field::FromValues(f.geometry(), std::move(out)));
  }
  return VectorField(std::move(components));
}

Field Curl2D(const VectorField& v) {
  RequireRank(v, 2, "curl2d");
  std::vector<double> dv_dx = Diff(v[1], 0);
  const std::vector<double> du_dy = Diff(v[0], 1);
  for (std::size_t i = 0; i < dv_dx.size(); ++i) dv_dx[i] -= du_dy[i];
  return Field::FromValues(v.geometry(), std::move(dv_dx));
}

VectorField Curl3D(const VectorField& v) {
  RequireRank(v, 3, "curl3d");
  // Component c is d(v[a])/d(axis b) - d(v[b])/d(axis a) for the cyclic (a, b).
  constexpr std::size_t kCyclic[3][2] = {{2, 1}, {0, 2}, {1, 0}};
  std::vector<Field> components;
  for (const auto& [a, b] : kCyclic) {
    std::vector<double> first = Diff(v[a], b);
    const std::vector<double> second = Diff(v[b], a);
    for (std::size_t i = 0; i < first.size(); ++i) first[i] -= second[i];
    components.push_back(Field::FromValues(v.geometry(), std::move(first)));
  }
  return VectorField(std::move(components));
}

double MaxInteriorAbs(const Field& f) {
  const Shape& shape = f.shape();
  const std::size_t n = shape.size();
  double worst = 0.0;
  for (std::size_t p = 0; p < PlaneCount(f.geometry()); ++p) {
    const auto plane = FlatPlane(f, p);
    for (std::size_t flat = 0; flat < n; ++flat) {
      bool interior = true;
      for (std::size_t axis = 0; axis < shape.rank() && interior; ++axis) {
        const std::size_t i = (flat / shape.stride(axis)) % shape[axis];
        interior = i > 0 && i + 1 < shape[axis];
      }
      if (interior) worst = std::max(worst, std::abs(plane[flat]));
    }
  }
  return worst;
}

}  // namespace gfc
