#include "mlspec/rational_poly.hpp"

#include "mlspec/errors.hpp"

#include <algorithm>

namespace mlspec {

RatPoly::RatPoly(std::vector<Rational> coeffs) : c(std::move(coeffs)) { trim(); }

RatPoly RatPoly::from_integers(const std::vector<Integer>& coeffs) {
  std::vector<Rational> q;
  q.reserve(coeffs.size());
  for (const auto& z : coeffs) q.emplace_back(z);
  return RatPoly(std::move(q));
}

void RatPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

Rational RatPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RatPoly RatPoly::derivative() const {
  if (c.size() <= 1) return {};
  std::vector<Rational> d(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<long>(i);
  return RatPoly(std::move(d));
}

RatPoly RatPoly::reciprocal() const {
  std::vector<Rational> r(c.rbegin(), c.rend());
  return RatPoly(std::move(r));
}

RatPoly RatPoly::monic() const {
  if (is_zero()) return {};
  return *this * (Rational(1) / leading());
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
  std::vector<Rational> r(std::max(a.c.size(), b.c.size()));
  for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
  return RatPoly(std::move(r));
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) { return a + b * Rational(-1); }

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> r(a.c.size() + b.c.size() - 1);
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
  return RatPoly(std::move(r));
}

RatPoly operator*(const RatPoly& a, const Rational& s) {
  std::vector<Rational> r = a.c;
  for (auto& x : r) x *= s;
  return RatPoly(std::move(r));
}

DivMod divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw Error("polynomial division by zero");
  RatPoly rem = a;
  if (rem.degree() < b.degree()) return {{}, rem};
  std::vector<Rational> q(static_cast<std::size_t>(rem.degree() - b.degree() + 1));
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    const auto shift = static_cast<std::size_t>(rem.degree() - b.degree());
    Rational factor = rem.leading() / b.leading();
    q[shift] = factor;
    for (std::size_t i = 0; i < b.c.size(); ++i) rem.c[i + shift] -= factor * b.c[i];
    rem.c.pop_back();
    rem.trim();
  }
  return {RatPoly(std::move(q)), rem};
}

RatPoly gcd(RatPoly a, RatPoly b) {
  while (!b.is_zero()) {
    RatPoly r = divmod(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

namespace {

int sign_changes(const std::vector<RatPoly>& chain, const Rational& x) {
  int changes = 0;
  int last = 0;
  for (const auto& p : chain) {
    Rational v = p(x);
    int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

int sturm_count(const RatPoly& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) throw Error("sturm_count on the zero polynomial");
  // Squarefree part, so that distinct roots are counted.
  RatPoly g = gcd(p, p.derivative());
  RatPoly q = g.degree() > 0 ? divmod(p, g).quotient : p;
  std::vector<RatPoly> chain{q, q.derivative()};
  while (!chain.back().is_zero()) {
    RatPoly r = divmod(chain[chain.size() - 2], chain.back()).remainder * Rational(-1);
    if (r.is_zero()) break;
    chain.push_back(std::move(r));
  }
  return sign_changes(chain, lo) - sign_changes(chain, hi);
}

std::vector<Rational> series_divide(const std::vector<Rational>& num, const std::vector<Rational>& den,
                                    std::size_t terms) {
  if (den.empty() || den[0] == 0) throw Error("series division needs a nonzero constant term");
  std::vector<Rational> out(terms);
  const Rational inv0 = Rational(1) / den[0];
  for (std::size_t n = 0; n < terms; ++n) {
    Rational acc = n < num.size() ? num[n] : Rational(0);
    const std::size_t upto = std::min(n, den.size() - 1);
    for (std::size_t j = 1; j <= upto; ++j) acc -= den[j] * out[n - j];
    out[n] = acc * inv0;
  }
  return out;
}

std::vector<Rational> series_multiply(const std::vector<Rational>& a, const std::vector<Rational>& b,
                                      std::size_t terms) {
  std::vector<Rational> out(terms);
  for (std::size_t i = 0; i < a.size() && i < terms; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < terms; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace mlspec
