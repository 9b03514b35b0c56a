#pragma once

// Isometries fixing a cusp v. In a basis <v, w_1..w_n, u> with v^perp = <v, w>
// and (v, u) = 1 such an isometry has block form
//
//   [ 1  a^T  c ]
//   [ 0  A    b ]
//   [ 0  0    d ]
//
// with A an isometry of the negative definite lattice v^perp / Zv. A has finite
// order m, and g^m acts on the affine chart at v as translation by b(g^m).

#include <optional>
#include <string>
#include <vector>

#include "pingpong/lattice.hpp"

namespace pingpong {

struct StabilizerBasis {
  ZVector v;
  std::vector<ZVector> w;
  QVector u;
  ZMatrix gram_n;  // (w_i, w_j), negative definite

  std::size_t n() const { return w.size(); }
  /// Columns v, w_1..w_n, u.
  QMatrix matrix() const;
};

StabilizerBasis complete_isotropic_basis(const Lattice& lattice, const Cusp& cusp);

struct BlockForm {
  QVector a;
  ZMatrix A;
  QVector b;
  Rational c;
  Rational d;

  /// The (n+2)x(n+2) matrix in the stabilizer basis.
  QMatrix assemble() const;
};

/// Errors: "not in stabilizer" when g v != v; internal error when the zero
/// pattern or d == 1 fails (a basis bug).
BlockForm block_decompose(const Isometry& g, const StabilizerBasis& basis);

/// lcm of all k with phi(k) <= n; every finite order of an n x n integer
/// matrix divides it.
Integer order_bound(std::size_t n);

/// Minimal m >= 1 with A^m = I for an isometry A of a negative definite form.
/// Errors: precondition when A does not preserve gram_n, gram_n is not
/// negative definite, or A^B(n) != I.
unsigned long finite_order(const ZMatrix& A, const ZMatrix& gram_n);

enum class ExponentConvention { m, two_m };

struct TranslationPart {
  unsigned long order;    // m = order of A(g)
  unsigned long power;    // m or 2m, per convention
  ZMatrix powered;        // g^power
  QVector t;              // b-block of g^power
};

TranslationPart translation_part(const Lattice& lattice, const Isometry& g, const StabilizerBasis& basis,
                                 ExponentConvention convention = ExponentConvention::m);

struct TranslationGenerator {
  std::string word;
  QVector t;
};

struct TranslationLattice {
  std::vector<TranslationGenerator> generators;
  Integer denominator;            // D, all translations lie in (1/D) Z^n
  std::size_t rank = 0;           // dimension of the rational span
  std::vector<ZVector> basis;     // Z-basis of D * (generated subgroup)
  Rational lambda1;               // minimal non-zero sup-norm
  QVector shortest;               // a vector attaining lambda1
  ZVector shortest_coefficients;  // shortest = (1/D) sum e_k basis_k
};

/// Errors: "translation rank 0" when every translation vanishes. Without
/// compute_lambda, lambda1 stays 0 and no enumeration runs.
TranslationLattice translation_lattice(const std::vector<TranslationGenerator>& parts, bool compute_lambda = true);

struct ShortestVector {
  Integer norm;
  ZVector coefficients;  // over the given basis
  ZVector vector;
};

/// Exact minimum of ||B y||_inf over non-zero integer y, for linearly
/// independent integer columns B (Fincke-Pohst enumeration inside the l2 ball
/// that contains the current sup-norm ball).
ShortestVector shortest_sup_norm(const std::vector<ZVector>& basis);

/// Search-free lower bound on ||sum e_k t_k||_inf over non-zero integer e, for
/// linearly independent t_k: 1 / ||L||_inf for a left inverse L (L T = I).
struct SupNormLowerBound {
  Rational bound;
  QMatrix left_inverse;
};
SupNormLowerBound sup_norm_lower_bound(const std::vector<QVector>& translations);

}  // namespace pingpong
