#ifndef GFC_GFC_HPP
#define GFC_GFC_HPP

#include "gfc/array_api.hpp"
#include "gfc/clone.hpp"
#include "gfc/diff_ops.hpp"
#include "gfc/error.hpp"
#include "gfc/field.hpp"
#include "gfc/layers.hpp"
#include "gfc/solver.hpp"
#include "gfc/spectral_kernel.hpp"
#include "gfc/tensor_io.hpp"

#endif  // GFC_GFC_HPP
