#include "pingpong/lattice.hpp"

#include "pingpong/integer_lattice.hpp"
#include "pingpong/signature.hpp"

namespace pingpong {

Lattice::Lattice(ZMatrix gram, ZVector anchor)
    : gram_(std::move(gram)), qgram_(to_rational(gram_)), qgram_inv_(pingpong::inverse(qgram_)), anchor_(std::move(anchor)) {}

Lattice Lattice::validate(ZMatrix gram, ZVector anchor) {
  if (!gram.square() || gram.rows() == 0) throw invalid_input("gram matrix must be square and non-empty");
  if (!gram.is_symmetric()) throw invalid_input("gram matrix is not symmetric");
  if (anchor.size() != gram.rows())
    throw invalid_input("anchor has length " + std::to_string(anchor.size()) + ", expected " +
                        std::to_string(gram.rows()));
  Signature sig = signature(to_rational(gram));
  if (sig.zero != 0) throw invalid_input("gram matrix is degenerate");
  if (sig.positive != 1)
    throw invalid_input("not hyperbolic: signature (" + std::to_string(sig.positive) + ", " +
                        std::to_string(sig.negative) + ")");
  if (pairing(gram, anchor, anchor) <= 0) throw invalid_input("anchor not positive");
  return Lattice(std::move(gram), std::move(anchor));
}

Isometry Isometry::validate(const Lattice& lattice, ZMatrix m) {
  const std::size_t n = lattice.rank();
  if (m.rows() != n || m.cols() != n)
    throw invalid_input("isometry must be " + std::to_string(n) + "x" + std::to_string(n));
  ZMatrix lhs = m.transpose() * lattice.gram() * m;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (lhs(i, j) != lattice.gram()(i, j))
        throw invalid_input("not an isometry: (g^T G g)[" + std::to_string(i) + "][" + std::to_string(j) +
                            "] = " + lhs(i, j).get_str() + " but G[" + std::to_string(i) + "][" +
                            std::to_string(j) + "] = " + lattice.gram()(i, j).get_str());
  Integer det = determinant(m);
  if (det != 1 && det != -1) throw internal_error("isometry with determinant " + det.get_str());
  return Isometry(std::move(m));
}

Isometry Isometry::inverse(const Lattice& lattice) const {
  QMatrix inv = lattice.inverse_gram() * to_rational(m_.transpose()) * lattice.rational_gram();
  return Isometry(to_integer(inv));
}

QVector Isometry::apply(const QVector& x) const { return to_rational(m_) * x; }

Cusp make_cusp(const Lattice& lattice, const ZVector& v, std::string label) {
  if (v.size() != lattice.rank()) throw invalid_input("cusp vector has wrong length");
  if (content(v) == 0) throw invalid_input("cusp vector is zero");
  ZVector p = primitive_part(v);
  if (lattice.pair(p, p) != 0) throw invalid_input("not isotropic: (v, v) = " + lattice.pair(p, p).get_str());
  Integer s = lattice.pair(p, lattice.anchor());
  if (s == 0) throw invalid_input("not on positive-cone boundary");
  if (s < 0)
    for (auto& x : p) x = -x;
  return {std::move(p), std::move(label)};
}

}  // namespace pingpong
