// Arbitrary-precision scalar types shared by every module.
#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <string>

namespace mlspec {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>, boost::multiprecision::et_off>;

/// Number of guard digits carried on top of a requested output precision.
inline constexpr unsigned kGuardDigits = 20;

/// RAII scope that sets the thread-default MPFR precision (decimal digits).
class WorkingPrecision {
 public:
  explicit WorkingPrecision(unsigned digits10);
  ~WorkingPrecision();
  WorkingPrecision(const WorkingPrecision&) = delete;
  WorkingPrecision& operator=(const WorkingPrecision&) = delete;

  static unsigned current();

 private:
  unsigned saved_;
};

/// 10^(-digits) at the current working precision.
Real ten_to_minus(long digits);
/// Relative error assumed for a single rounded value at the current precision.
Real unit_roundoff();

Real to_real(const Rational& q);
Real to_real(const Integer& z);
Real infinity();
bool is_infinite(const Real& x);

/// Decimal string with `digits` significant digits (scientific notation).
std::string to_decimal(const Real& x, unsigned digits);
std::string to_decimal(const Integer& z);
std::string to_decimal(const Rational& q);

/// Nearest integer with ties rounded up, i.e. floor(x + 1/2).
Integer round_half_up(const Real& x);

struct Complex {
  Real re;
  Real im;

  Complex() : re(0), im(0) {}
  Complex(Real r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
  Complex operator-() const { return {-re, -im}; }

  bool is_real() const { return im == 0; }
};

Complex operator+(Complex a, const Complex& b);
Complex operator-(Complex a, const Complex& b);
Complex operator*(Complex a, const Complex& b);
Complex operator/(Complex a, const Complex& b);
Complex operator*(Complex a, const Real& s);
Complex operator/(Complex a, const Real& s);

Complex conj(const Complex& z);
Real abs(const Complex& z);
Real norm(const Complex& z);
Complex inverse(const Complex& z);
/// z^n for any integer n (n < 0 requires z != 0).
Complex pow(const Complex& z, long n);

/// Closed real interval [lo, hi].
struct Enclosure {
  Real lo;
  Real hi;

  static Enclosure around(const Real& mid, const Real& radius) { return {mid - radius, mid + radius}; }
  Real mid() const { return (lo + hi) / 2; }
  Real width() const { return hi - lo; }
  bool contains(const Real& x) const { return lo <= x && x <= hi; }
  bool disjoint_below(const Enclosure& o) const { return hi < o.lo; }
  Enclosure abs() const;
  Enclosure scaled(const Real& s) const;
};

}  // namespace mlspec
