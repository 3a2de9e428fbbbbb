// Dense polynomials and truncated power series over Q.
#pragma once

#include "mlspec/numeric.hpp"

#include <vector>

namespace mlspec {

/// Polynomial over Q, coefficients ascending; the zero polynomial is empty.
struct RatPoly {
  std::vector<Rational> c;

  RatPoly() = default;
  explicit RatPoly(std::vector<Rational> coeffs);
  static RatPoly from_integers(const std::vector<Integer>& coeffs);

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  const Rational& leading() const { return c.back(); }
  void trim();

  Rational operator()(const Rational& x) const;
  RatPoly derivative() const;
  /// Coefficients reversed: z^deg * p(1/z).
  RatPoly reciprocal() const;
  RatPoly monic() const;
};

RatPoly operator+(const RatPoly& a, const RatPoly& b);
RatPoly operator-(const RatPoly& a, const RatPoly& b);
RatPoly operator*(const RatPoly& a, const RatPoly& b);
RatPoly operator*(const RatPoly& a, const Rational& s);

struct DivMod {
  RatPoly quotient;
  RatPoly remainder;
};
DivMod divmod(const RatPoly& a, const RatPoly& b);
/// Monic gcd (zero if both inputs are zero).
RatPoly gcd(RatPoly a, RatPoly b);

/// Number of distinct real roots in the open interval (lo, hi); p must be
/// nonzero and must not vanish at either endpoint.
int sturm_count(const RatPoly& p, const Rational& lo, const Rational& hi);

/// First `terms` coefficients of the power series num/den (den(0) != 0).
std::vector<Rational> series_divide(const std::vector<Rational>& num, const std::vector<Rational>& den,
                                    std::size_t terms);
/// Truncated product of two power series.
std::vector<Rational> series_multiply(const std::vector<Rational>& a, const std::vector<Rational>& b,
                                      std::size_t terms);

}  // namespace mlspec
