#pragma once

#include <string>

#include "pingpong/engine.hpp"
#include "pingpong/io.hpp"

#ifndef PINGPONG_DATA_DIR
#define PINGPONG_DATA_DIR "data"
#endif

namespace fixture {

using namespace pingpong;

// NS(E x E) in the basis e1, e2, delta.
inline ZMatrix ee_gram() { return ZMatrix{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}; }
inline ZVector ee_anchor() { return {1, 1, 1}; }
inline Lattice ee_lattice() { return Lattice::validate(ee_gram(), ee_anchor()); }

// (x, y) -> (x, x + y) and (x, y) -> (x + y, y).
inline ZMatrix g_matrix() { return ZMatrix{{1, 0, 2}, {0, 0, -1}, {0, 1, 2}}; }
inline ZMatrix gp_matrix() { return ZMatrix{{0, 0, -1}, {0, 1, 2}, {1, 0, 2}}; }

inline Problem ee_problem() {
  Problem p;
  p.gram = ee_gram();
  p.anchor = ee_anchor();
  p.players.push_back({"g", ZVector{1, 0, 0}, {g_matrix()}});
  p.players.push_back({"g'", ZVector{0, 1, 0}, {gp_matrix()}});
  return p;
}

inline std::string data_path(const std::string& name) { return std::string(PINGPONG_DATA_DIR) + "/" + name; }

inline std::vector<Player> ee_players(bool lambda = true) {
  Lattice lat = ee_lattice();
  Problem p = ee_problem();
  return {build_player(lat, p.players[0], ExponentConvention::m, lambda),
          build_player(lat, p.players[1], ExponentConvention::m, lambda)};
}

// U + A2(-1): hyperbolic plane e, f plus a negative definite A2.
inline ZMatrix u_a2_gram() { return ZMatrix{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, -2, 1}, {0, 0, 1, -2}}; }
inline ZVector u_a2_anchor() { return {1, 1, 0, 0}; }

/// Eichler transvection x -> x + (x, e) a - (x, a) e - (a, a)/2 (x, e) e for
/// isotropic e and a orthogonal to e with (a, a) even; it fixes e.
inline ZMatrix eichler(const ZMatrix& gram, const ZVector& e, const ZVector& a) {
  const std::size_t n = gram.rows();
  ZMatrix m(n, n);
  Integer aa = dot(a, gram * a);
  for (std::size_t j = 0; j < n; ++j) {
    ZVector x(n);
    x[j] = 1;
    Integer xe = dot(x, gram * e), xa = dot(x, gram * a);
    for (std::size_t i = 0; i < n; ++i) m(i, j) = x[i] + xe * a[i] - xa * e[i] - aa / 2 * xe * e[i];
  }
  return m;
}

inline Problem u_a2_problem(bool three = false) {
  Problem p;
  p.gram = u_a2_gram();
  p.anchor = u_a2_anchor();
  const ZMatrix& G = p.gram;
  ZVector e{1, 0, 0, 0}, f{0, 1, 0, 0}, a1{0, 0, 1, 0}, a2{0, 0, 0, 1};
  p.players.push_back({"E", e, {eichler(G, e, a1), eichler(G, e, a2)}});
  p.players.push_back({"F", f, {eichler(G, f, a1), eichler(G, f, a2)}});
  if (three) {
    ZVector v{1, 1, 1, 0};
    p.players.push_back({"V", v, {eichler(G, v, ZVector{1, -1, 0, 0}), eichler(G, v, ZVector{0, 0, 1, 2})}});
  }
  return p;
}

}  // namespace fixture
