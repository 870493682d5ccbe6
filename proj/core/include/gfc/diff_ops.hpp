#ifndef GFC_DIFF_OPS_HPP
#define GFC_DIFF_OPS_HPP

#include "gfc/field.hpp"

namespace gfc {

// Forward differences along every axis, zero extension past the last index:
// component k is f[i + e_k] - f[i], and the last entry of a line is -f[last].
VectorField Gradient(const Field& f);

// Sum over axes of backward differences V_k[i] - V_k[i - e_k]. The edge
// before index 0 is closed by telescoping, V_k[-1] = -sum of the line, so that
// Divergence(Gradient(f)) == LaplacianStencil(f) for every f.
Field Divergence(const VectorField& v);

// Transposes, used for backpropagation.
Field GradientAdjoint(const VectorField& g);
VectorField DivergenceAdjoint(const Field& g);

// dv/dx - du/dy by forward differences; x is axis 0, y is axis 1.
Field Curl2D(const VectorField& v);

// (dw/dy - dv/dz, du/dz - dw/dx, dv/dx - du/dy) by forward differences.
VectorField Curl3D(const VectorField& v);

// Largest magnitude over points at least one cell away from every face.
double MaxInteriorAbs(const Field& f);

}  // namespace gfc

#endif  // GFC_DIFF_OPS_HPP
