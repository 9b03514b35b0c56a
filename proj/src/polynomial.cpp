#include "pingpong/polynomial.hpp"

#include <stdexcept>

namespace pingpong {

Polynomial Polynomial::constant(std::size_t arity, const Rational& c) {
  Polynomial p(arity);
  p.add_term(Exponents(arity, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t arity, std::size_t index) {
  if (index >= arity) throw std::out_of_range("polynomial variable index");
  Polynomial p(arity);
  Exponents e(arity, 0);
  e[index] = 1;
  p.add_term(e, 1);
  return p;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  if (e.size() != arity_) throw std::invalid_argument("monomial arity mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

unsigned Polynomial::degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) {
    unsigned s = 0;
    for (auto k : e) s += k;
    d = std::max(d, s);
  }
  return d;
}

Rational Polynomial::evaluate(const QVector& point) const {
  if (point.size() != arity_) throw std::invalid_argument("polynomial evaluated at point of wrong dimension");
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < arity_; ++i)
      for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
    sum += t;
  }
  return sum;
}

Interval Polynomial::enclose(const Box& domain) const {
  if (domain.size() != arity_) throw std::invalid_argument("polynomial enclosed over box of wrong dimension");
  Interval sum(0);
  for (const auto& [e, c] : terms_) {
    Interval t(c);
    for (std::size_t i = 0; i < arity_; ++i)
      if (e[i]) t = t * pow(domain[i], e[i]);
    sum = sum + t;
  }
  return sum;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  if (a.arity_ != b.arity_) throw std::invalid_argument("polynomial arity mismatch");
  Polynomial r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, c);
  return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + Rational(-1) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.arity_ != b.arity_) throw std::invalid_argument("polynomial arity mismatch");
  Polynomial r(a.arity_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Polynomial::Exponents e(a.arity_);
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Polynomial operator*(const Rational& c, const Polynomial& p) {
  Polynomial r(p.arity_);
  for (const auto& [e, x] : p.terms_) r.add_term(e, c * x);
  return r;
}

Box enclose_poly_map(const PolyMap& map, const Box& domain) {
  Box out;
  out.reserve(map.size());
  for (const auto& p : map) out.push_back(p.enclose(domain));
  return out;
}

QVector evaluate(const PolyMap& map, const QVector& point) {
  QVector out;
  out.reserve(map.size());
  for (const auto& p : map) out.push_back(p.evaluate(point));
  return out;
}

}  // namespace pingpong
