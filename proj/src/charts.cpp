#include "pingpong/charts.hpp"

#include <functional>

namespace pingpong {

Chart::Chart(Lattice lattice, Cusp cusp)
    : lattice_(std::move(lattice)), cusp_(std::move(cusp)), basis_(complete_isotropic_basis(lattice_, cusp_)),
      pinv_(inverse(basis_.matrix())) {}

SpherePoint make_sphere_point(const Lattice& lattice, QVector y) {
  if (y.size() != lattice.rank()) throw invalid_input("boundary point has wrong length");
  if (lattice.pair(y, y) != 0) throw invalid_input("not isotropic: (y, y) = " + to_string(lattice.pair(y, y)));
  if (lattice.pair(y, to_rational(lattice.anchor())) <= 0) throw invalid_input("not on positive-cone boundary");
  return {std::move(y)};
}

SpherePoint to_boundary(const Chart& chart, const QVector& x) {
  const auto& b = chart.basis();
  if (x.size() != b.n()) throw invalid_input("chart point has wrong dimension");
  QVector z = b.u;
  for (std::size_t k = 0; k < b.n(); ++k)
    for (std::size_t i = 0; i < z.size(); ++i) z[i] += x[k] * b.w[k][i];
  Rational alpha = -chart.lattice().pair(z, z) / 2;
  for (std::size_t i = 0; i < z.size(); ++i) z[i] += alpha * b.v[i];
  return {std::move(z)};
}

ChartPosition from_boundary(const Chart& chart, const SpherePoint& point) {
  const auto& lat = chart.lattice();
  const QVector& y = point.y;
  if (y.size() != lat.rank()) throw invalid_input("boundary point has wrong length");
  if (lat.pair(y, y) != 0) throw invalid_input("not on cone boundary: (y, y) != 0");
  const QVector v = to_rational(chart.cusp().v);
  Rational s = lat.pair(y, v);
  if (s < 0) throw invalid_input("not on cone boundary: (y, v) < 0");
  if (s == 0) {
    QMatrix pair_matrix = QMatrix::from_columns({y, v}, y.size());
    if (rank(pair_matrix) != 1) throw invalid_input("not on cone boundary: (y, v) = 0 but y is not a multiple of v");
    return std::nullopt;
  }
  QVector coords = chart.coordinate_map() * y;
  QVector x(chart.dim());
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = coords[k + 1] / s;
  return x;
}

ChartPosition cusp_position(const Chart& chart, const Cusp& other) {
  return from_boundary(chart, SpherePoint{to_rational(other.v)});
}

QVector neighbourhood_ray(const Chart& source, const QVector& theta, const Rational& r) {
  const auto& b = source.basis();
  const auto& lat = source.lattice();
  QVector tw(lat.rank());
  for (std::size_t k = 0; k < b.n(); ++k)
    for (std::size_t i = 0; i < tw.size(); ++i) tw[i] += theta[k] * b.w[k][i];
  Rational s = -(r * r * lat.pair(b.u, b.u) + 2 * r * lat.pair(b.u, tw) + lat.pair(tw, tw)) / 2;
  QVector y(lat.rank());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = r * r * b.u[i] + r * tw[i] + s * b.v[i];
  return y;
}

FaceMap face_map(const Chart& target, const Chart& source, std::size_t axis, int side, const Rational& r_max) {
  const auto& sb = source.basis();
  const auto& lat = source.lattice();
  const std::size_t n = sb.n();
  if (axis >= n) throw precondition("face axis out of range");
  const std::size_t arity = n;  // n - 1 free thetas plus r

  std::vector<Polynomial> theta(n);
  for (std::size_t l = 0, free = 0; l < n; ++l)
    theta[l] = l == axis ? Polynomial::constant(arity, side) : Polynomial::variable(arity, free++);
  const Polynomial r = Polynomial::variable(arity, n - 1);
  const Polynomial r2 = r * r;

  std::vector<QVector> wq;
  for (const auto& wk : sb.w) wq.push_back(to_rational(wk));
  const QVector vq = to_rational(sb.v);

  Polynomial quad(arity);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) quad = quad + Rational(sb.gram_n(k, l)) * (theta[k] * theta[l]);
  Polynomial linear(arity);
  for (std::size_t l = 0; l < n; ++l) linear = linear + lat.pair(sb.u, wq[l]) * theta[l];
  const Polynomial s = Rational(-1, 2) * (lat.pair(sb.u, sb.u) * r2 + Rational(2) * (r * linear) + quad);

  // Any linear functional f of y(theta, r) = r^2 u + r sum theta_l w_l + s v.
  auto functional = [&](const std::function<Rational(const QVector&)>& f) {
    Polynomial p = f(sb.u) * r2 + f(vq) * s;
    for (std::size_t l = 0; l < n; ++l) p = p + f(wq[l]) * (r * theta[l]);
    return p;
  };

  FaceMap fm;
  const QVector vt = to_rational(target.cusp().v);
  fm.denominator = functional([&](const QVector& x) { return lat.pair(x, vt); });
  const QMatrix& pinv = target.coordinate_map();
  for (std::size_t k = 0; k < target.dim(); ++k)
    fm.numerators.push_back(functional([&](const QVector& x) {
      Rational acc = 0;
      for (std::size_t i = 0; i < x.size(); ++i) acc += pinv(k + 1, i) * x[i];
      return acc;
    }));
  fm.domain.assign(n - 1, Interval(-1, 1));
  fm.domain.emplace_back(0, r_max);
  return fm;
}

namespace {

struct Node {
  Box domain;
  unsigned depth = 0;
  std::optional<Box> enclosure;
  int split = -1;
  std::size_t left = 0, right = 0;
};

std::optional<Box> enclose_face(const FaceMap& fm, const Box& domain) {
  Interval den = fm.denominator.enclose(domain);
  if (den.lo() <= 0) return std::nullopt;
  Box out;
  for (const auto& p : fm.numerators) out.push_back(p.enclose(domain) / den);
  return out;
}

std::pair<Box, Box> bisect(const Box& domain, std::size_t dim) {
  Box lo = domain, hi = domain;
  Rational mid = domain[dim].mid();
  lo[dim] = Interval(domain[dim].lo(), mid);
  hi[dim] = Interval(mid, domain[dim].hi());
  return {lo, hi};
}

int widest(const Box& domain) {
  int best = -1;
  Rational w = 0;
  for (std::size_t i = 0; i < domain.size(); ++i)
    if (domain[i].width() > w) {
      w = domain[i].width();
      best = static_cast<int>(i);
    }
  return best;
}

// Exact image of one parameter point, when (y, v_target) > 0 there.
std::optional<QVector> eval_face(const FaceMap& fm, const QVector& t) {
  Rational den = fm.denominator.evaluate(t);
  if (den <= 0) return std::nullopt;
  QVector x;
  for (const auto& p : fm.numerators) x.push_back(p.evaluate(t) / den);
  return x;
}

QVector midpoint(const Box& b) {
  QVector m;
  for (const auto& x : b) m.push_back(x.mid());
  return m;
}

void grow(std::optional<Box>& inner, const std::optional<QVector>& x) {
  if (!x) return;
  Box pt;
  for (const auto& c : *x) pt.emplace_back(c);
  inner = inner ? hull(*inner, pt) : pt;
}

// The enclosure overshoots the hull of known image points by at most tol.
bool settled(const Box& enclosure, const std::optional<Box>& inner, const Rational& tol) {
  if (!inner) return false;
  for (std::size_t k = 0; k < enclosure.size(); ++k)
    if (enclosure[k].lo() < (*inner)[k].lo() - tol || enclosure[k].hi() > (*inner)[k].hi() + tol) return false;
  return true;
}

void serialize(const std::vector<Node>& tree, std::size_t idx, const Box& hull_box, std::vector<int>& out) {
  const Node& node = tree[idx];
  if (node.split < 0 || (node.enclosure && contains(hull_box, *node.enclosure))) {
    out.push_back(-1);
    return;
  }
  out.push_back(node.split);
  serialize(tree, node.left, hull_box, out);
  serialize(tree, node.right, hull_box, out);
}

void check_distinct(const Chart& target, const Chart& source) {
  if (target.cusp().v == source.cusp().v) throw precondition("transport_enclosure: source and target share the cusp");
}

}  // namespace

TransportResult transport_enclosure_rmax(const Chart& target, const Chart& source, const Rational& r_max,
                                         const TransportOptions& options) {
  check_distinct(target, source);
  const std::size_t n = source.dim();
  if (r_max < 0) throw precondition("transport_enclosure: negative r range");
  TransportEnclosure result;
  if (n == 0 || r_max == 0) {
    // The set is the cusp alone.
    auto pos = cusp_position(target, source.cusp());
    if (!pos) return Undecided{"source cusp is the target cusp"};
    for (const auto& x : *pos) result.box.emplace_back(x);
    return result;
  }

  // Leaves are refined until they lie within tolerance of the hull of exactly
  // evaluated points, seeded with the corners of every face.
  std::vector<FaceMap> maps;
  std::optional<Box> inner;
  for (std::size_t axis = 0; axis < n; ++axis)
    for (int side : {1, -1}) {
      maps.push_back(face_map(target, source, axis, side, r_max));
      const Box& d = maps.back().domain;
      for (std::size_t mask = 0; mask < (std::size_t{1} << d.size()); ++mask) {
        QVector corner;
        for (std::size_t k = 0; k < d.size(); ++k) corner.push_back(mask >> k & 1 ? d[k].hi() : d[k].lo());
        grow(inner, eval_face(maps.back(), corner));
      }
    }

  std::vector<std::pair<FaceMap, std::vector<Node>>> faces;
  std::optional<Box> hull_box;
  for (auto& slot : maps) {
    FaceMap fm = std::move(slot);
    std::vector<Node> tree;
    tree.push_back(Node{fm.domain, 0, std::nullopt});
    std::vector<std::size_t> stack{0};
    while (!stack.empty()) {
      std::size_t idx = stack.back();
      stack.pop_back();
      tree[idx].enclosure = enclose_face(fm, tree[idx].domain);
      ++result.nodes_evaluated;
      grow(inner, eval_face(fm, midpoint(tree[idx].domain)));
      const bool refine = !tree[idx].enclosure || !settled(*tree[idx].enclosure, inner, options.tolerance);
      int dim = widest(tree[idx].domain);
      if (refine && tree[idx].depth < options.max_depth && dim >= 0) {
        auto [lo, hi] = bisect(tree[idx].domain, static_cast<std::size_t>(dim));
        unsigned depth = tree[idx].depth + 1;
        tree[idx].split = dim;
        tree[idx].left = tree.size();
        tree.push_back(Node{std::move(lo), depth, std::nullopt});
        tree[idx].right = tree.size();
        tree.push_back(Node{std::move(hi), depth, std::nullopt});
        stack.push_back(tree[idx].right);
        stack.push_back(tree[idx].left);
        continue;
      }
      if (!tree[idx].enclosure)
        return Undecided{"(y, v) not separated from 0 at depth " + std::to_string(options.max_depth) +
                         "; increase the radius or depth"};
      hull_box = hull_box ? hull(*hull_box, *tree[idx].enclosure) : *tree[idx].enclosure;
    }
    faces.emplace_back(std::move(fm), std::move(tree));
  }

  result.box = *hull_box;
  std::size_t f = 0;
  for (std::size_t axis = 0; axis < n; ++axis)
    for (int side : {1, -1}) {
      FacePartition part{axis, side, {}};
      serialize(faces[f].second, 0, result.box, part.splits);
      result.partition.push_back(std::move(part));
      ++f;
    }
  return result;
}

TransportResult transport_enclosure(const Chart& target, const Chart& source, const Rational& radius,
                                    const TransportOptions& options) {
  if (radius <= 0) throw precondition("neighbourhood radius must be positive");
  return transport_enclosure_rmax(target, source, 1 / radius, options);
}

std::variant<Box, Undecided> replay_transport(const Chart& target, const Chart& source, const Rational& radius,
                                              const std::vector<FacePartition>& partition) {
  check_distinct(target, source);
  if (radius <= 0) throw precondition("neighbourhood radius must be positive");
  const std::size_t n = source.dim();
  if (n == 0) {
    auto pos = cusp_position(target, source.cusp());
    Box b;
    for (const auto& x : *pos) b.emplace_back(x);
    return b;
  }
  if (partition.size() != 2 * n) return Undecided{"partition does not cover every face"};

  std::optional<Box> hull_box;
  std::size_t f = 0;
  for (std::size_t axis = 0; axis < n; ++axis)
    for (int side : {1, -1}) {
      const FacePartition& part = partition[f++];
      if (part.axis != axis || part.side != side) return Undecided{"partition faces out of order"};
      FaceMap fm = face_map(target, source, axis, side, 1 / radius);
      std::size_t pos = 0;
      std::optional<std::string> failure;
      std::function<void(const Box&)> walk = [&](const Box& domain) {
        if (failure) return;
        if (pos >= part.splits.size()) {
          failure = "partition ended early";
          return;
        }
        int split = part.splits[pos++];
        if (split < 0) {
          auto enc = enclose_face(fm, domain);
          if (!enc) {
            failure = "leaf does not separate (y, v) from 0";
            return;
          }
          hull_box = hull_box ? hull(*hull_box, *enc) : *enc;
          return;
        }
        if (static_cast<std::size_t>(split) >= domain.size()) {
          failure = "split dimension out of range";
          return;
        }
        auto [lo, hi] = bisect(domain, static_cast<std::size_t>(split));
        walk(lo);
        walk(hi);
      };
      walk(fm.domain);
      if (!failure && pos != part.splits.size()) failure = "trailing partition entries";
      if (failure) return Undecided{*failure};
    }
  return *hull_box;
}

}  // namespace pingpong
