#pragma once

#include <vector>

#include "pingpong/matrix.hpp"

namespace pingpong {

struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Inertia of a symmetric form by symmetric pivoted elimination (congruence
/// transformations only). Throws std::invalid_argument on non-symmetric input.
Signature signature(const QMatrix& gram);

/// Same count from Descartes' rule applied to det(xI - gram); exact because a
/// symmetric matrix has only real eigenvalues.
Signature signature_descartes(const QMatrix& gram);

/// Coefficients c_0..c_n of det(xI - m), c_n == 1 (Faddeev-LeVerrier).
std::vector<Rational> characteristic_polynomial(const QMatrix& m);

}  // namespace pingpong
