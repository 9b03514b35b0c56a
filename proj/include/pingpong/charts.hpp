#pragma once

// The affine chart at a cusp: x in Q^n names the boundary ray through
// u + sum x_k w_k + alpha v, alpha = -(z, z)/2. The boundary sphere is the
// one-point compactification of the chart, the cusp being the added point.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pingpong/interval.hpp"
#include "pingpong/parabolic.hpp"
#include "pingpong/polynomial.hpp"

namespace pingpong {

class Chart {
 public:
  Chart(Lattice lattice, Cusp cusp);

  const Lattice& lattice() const { return lattice_; }
  const Cusp& cusp() const { return cusp_; }
  const StabilizerBasis& basis() const { return basis_; }
  std::size_t dim() const { return basis_.n(); }
  /// Rows of P^{-1} for P = [v w u]; row k + 1 reads the w_k coordinate.
  const QMatrix& coordinate_map() const { return pinv_; }

 private:
  Lattice lattice_;
  Cusp cusp_;
  StabilizerBasis basis_;
  QMatrix pinv_;
};

/// A boundary ray: (y, y) = 0 and (y, anchor) > 0.
struct SpherePoint {
  QVector y;
};

/// Errors: "not isotropic", "not on positive-cone boundary".
SpherePoint make_sphere_point(const Lattice& lattice, QVector y);

/// Empty optional means the point at infinity (the cusp itself).
using ChartPosition = std::optional<QVector>;

/// Exact lift of chart point x; the result satisfies (y, y) = 0 and (y, v) = 1.
SpherePoint to_boundary(const Chart& chart, const QVector& x);

/// Inverse of to_boundary on the sphere minus the cusp; the cusp ray gives
/// std::nullopt. Errors: "not on cone boundary" for non-isotropic y, for
/// (y, v) < 0, and for (y, v) = 0 with y not a multiple of v.
ChartPosition from_boundary(const Chart& chart, const SpherePoint& y);

/// Position of another cusp in this chart (nullopt for the chart's own cusp).
ChartPosition cusp_position(const Chart& chart, const Cusp& other);

/// U := { iota(x) : ||x||_inf >= radius } together with the cusp.
struct NeighborhoodSpec {
  std::size_t cusp_index;
  Rational radius;
};

struct TransportOptions {
  unsigned max_depth = 16;        // bisections along any root-to-leaf path
  Rational tolerance{1, 256};     // refine leaves overshooting the exact image hull by more
};

/// Bisection tree over one face of the (theta, r) parameter domain, preorder:
/// -1 is a leaf, d >= 0 splits dimension d at its midpoint.
struct FacePartition {
  std::size_t axis;  // theta_axis = +-1 on this face
  int side;          // +1 or -1
  std::vector<int> splits;
};

struct TransportEnclosure {
  Box box;                               // hull of all leaf enclosures
  std::vector<FacePartition> partition;  // pruned: each leaf alone lies in box
  std::size_t nodes_evaluated = 0;
};

struct Undecided {
  std::string reason;
};

using TransportResult = std::variant<TransportEnclosure, Undecided>;

/// Encloses, in the coordinates of `target`, the neighbourhood of `source`'s
/// cusp with the given radius. The source neighbourhood is parametrised by
/// rays r^2 u + r sum theta_k w_k + s(theta, r) v over theta on the faces of
/// the unit sup-ball and r in [0, r_max], r_max = 1 / radius.
/// Errors: precondition when both charts share the cusp.
TransportResult transport_enclosure(const Chart& target, const Chart& source, const Rational& radius,
                                    const TransportOptions& options = {});

/// Same with an explicit r range; r_max = 0 collapses the set to the cusp.
TransportResult transport_enclosure_rmax(const Chart& target, const Chart& source, const Rational& r_max,
                                         const TransportOptions& options = {});

/// Re-evaluates a stored partition without making any branching decision.
/// Returns the hull of leaf enclosures, or Undecided if some leaf no longer
/// separates (y, v_target) from 0.
std::variant<Box, Undecided> replay_transport(const Chart& target, const Chart& source, const Rational& radius,
                                              const std::vector<FacePartition>& partition);

/// Homogeneous parametrisation of the source neighbourhood on one face:
/// variables are the free thetas (in axis order) followed by r. Maps to the
/// target coordinates as numerator polynomials over the common denominator
/// (y, v_target). Exposed for soundness tests.
struct FaceMap {
  PolyMap numerators;
  Polynomial denominator;
  Box domain;
};
FaceMap face_map(const Chart& target, const Chart& source, std::size_t axis, int side, const Rational& r_max);

/// The ambient ray of the source neighbourhood at (theta, r).
QVector neighbourhood_ray(const Chart& source, const QVector& theta, const Rational& r);

}  // namespace pingpong
