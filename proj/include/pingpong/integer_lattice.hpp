#pragma once

// Unimodular reductions over Z: gcd row reduction, integral kernels of a
// linear form, basis completion and Hermite-style bases of sublattices.

#include <vector>

#include "pingpong/matrix.hpp"

namespace pingpong {

struct GcdReduction {
  ZMatrix transform;  // W, unimodular, W * a == g * e_0
  ZMatrix inverse;    // W^{-1}
  Integer gcd;        // g >= 0
};

GcdReduction gcd_reduce(const ZVector& a);

/// Z-basis of {x in Z^n : a . x = 0}.
std::vector<ZVector> integer_kernel(const ZVector& a);

/// Unimodular matrix whose first column is y. Requires content(y) == 1.
ZMatrix unimodular_with_first_column(const ZVector& y);

/// Z-basis (linearly independent) of the subgroup of Z^n generated by gens.
std::vector<ZVector> lattice_basis(const std::vector<ZVector>& gens, std::size_t dim);

/// y / content(y). Throws on the zero vector.
ZVector primitive_part(const ZVector& y);

}  // namespace pingpong
