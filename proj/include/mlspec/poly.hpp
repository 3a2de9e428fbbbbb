// Exact integer polynomials, the standing-assumption checks, and f = P^(k+1).
#pragma once

#include "mlspec/numeric.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mlspec {

struct RootClassification;

/// Integer polynomial a_0 + a_1 X + ... + a_d X^d, coefficients ascending.
///
/// Constructed values always have a_d >= 1 and no trailing zero coefficients.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  /// Trims high zero coefficients and flips the sign so that a_d >= 1.
  explicit IntPolynomial(std::vector<Integer> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Integer>& coeffs() const { return coeffs_; }
  const Integer& operator[](std::size_t i) const { return coeffs_[i]; }
  const Integer& leading() const { return coeffs_.back(); }
  const Integer& constant() const { return coeffs_.front(); }
  bool monic() const { return leading() == 1; }

  Rational operator()(const Rational& x) const;
  Complex operator()(const Complex& z) const;
  /// Value and first derivative at z (Horner).
  std::pair<Complex, Complex> eval_with_derivative(const Complex& z) const;

  IntPolynomial derivative() const;
  Integer content() const;

  /// Sparse monomial form, e.g. "X^2-20X+82".
  std::string to_string() const;

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

 private:
  std::vector<Integer> coeffs_;
};

/// Exact product of two integer coefficient lists (ascending).
std::vector<Integer> multiply(const std::vector<Integer>& a, const std::vector<Integer>& b);

/// f = P^(k+1) together with the bounds used by the symbolic coding.
struct RecurrenceSpec {
  IntPolynomial base;
  int k = 0;
  std::vector<Integer> A;  // A_0..A_D
  int D = 0;
  bool monic = false;
  Integer A_max;  // max |A_j|
  Rational B;     // (|A_0| + ... + |A_D|) / 2

  Integer abs_coefficient_sum() const;
};

struct ValidationReport {
  bool content_ok = false;
  bool a0_nonzero = false;
  bool squarefree = false;
  bool has_expanding_root = false;
  bool monic = false;
  std::vector<std::string> notes;

  /// All three standing assumptions hold.
  bool usable() const { return content_ok && a0_nonzero && squarefree && has_expanding_root; }
};

inline constexpr int kDefaultMaxK = 8;

/// Accepts "c0,c1,...,cd" (ascending) or a sum of terms [+-]c?X(^e)?.
/// Throws ParseError on malformed text, the zero polynomial, constants, or a_0 = 0.
IntPolynomial parse_polynomial(std::string_view text);

ValidationReport validate_assumptions(const IntPolynomial& P,
                                      const RootClassification* root_hint = nullptr);

RecurrenceSpec power_to_f(const IntPolynomial& P, int k, int max_k = kDefaultMaxK);

/// Degree of gcd(P(z), z^d P(1/z)) over Q. Zero certifies that no root lies on
/// the unit circle.
int unit_circle_factor_test(const IntPolynomial& P);

/// Exact number of roots of P on the unit circle, counted through the
/// reciprocal gcd and a Sturm count on its trace polynomial.
int unit_circle_root_count(const IntPolynomial& P);

/// Rational roots of P found by the rational-root test, when the divisor
/// search stays within `divisor_limit`; std::nullopt if it was skipped.
std::optional<std::vector<Rational>> rational_roots(const IntPolynomial& P,
                                                    const Integer& divisor_limit = Integer(1000000));

}  // namespace mlspec
