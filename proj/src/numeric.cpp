#include "mlspec/numeric.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace mlspec {

WorkingPrecision::WorkingPrecision(unsigned digits10) : saved_(Real::default_precision()) {
  Real::default_precision(digits10);
}

WorkingPrecision::~WorkingPrecision() { Real::default_precision(saved_); }

unsigned WorkingPrecision::current() { return Real::default_precision(); }

Real ten_to_minus(long digits) { return boost::multiprecision::pow(Real(10), Real(-digits)); }

Real unit_roundoff() { return ten_to_minus(static_cast<long>(Real::default_precision()) - 2); }

Real to_real(const Rational& q) {
  return Real(to_real(numerator(q)) / to_real(denominator(q)));
}

Real to_real(const Integer& z) {
  Real r;
  mpfr_set_z(r.backend().data(), z.backend().data(), MPFR_RNDN);
  return r;
}

Real infinity() { return std::numeric_limits<Real>::infinity(); }

bool is_infinite(const Real& x) { return boost::multiprecision::isinf(x); }

std::string to_decimal(const Real& x, unsigned digits) {
  if (boost::multiprecision::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (boost::multiprecision::isnan(x)) return "nan";
  if (x == 0) return "0";
  return x.str(static_cast<std::streamsize>(digits), std::ios_base::scientific);
}

std::string to_decimal(const Integer& z) { return z.str(); }

std::string to_decimal(const Rational& q) { return q.str(); }

Integer round_half_up(const Real& x) {
  Integer out;
  mpfr_get_z(out.backend().data(), Real(x + Real(0.5)).backend().data(), MPFR_RNDD);
  return out;
}

Complex& Complex::operator+=(const Complex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

Complex& Complex::operator-=(const Complex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

Complex& Complex::operator*=(const Complex& o) {
  Real r = re * o.re - im * o.im;
  im = re * o.im + im * o.re;
  re = std::move(r);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  if (o.im == 0) {
    re /= o.re;
    im /= o.re;
    return *this;
  }
  Real den = o.re * o.re + o.im * o.im;
  Real r = (re * o.re + im * o.im) / den;
  im = (im * o.re - re * o.im) / den;
  re = std::move(r);
  return *this;
}

Complex operator+(Complex a, const Complex& b) { return a += b; }
Complex operator-(Complex a, const Complex& b) { return a -= b; }
Complex operator*(Complex a, const Complex& b) { return a *= b; }
Complex operator/(Complex a, const Complex& b) { return a /= b; }

Complex operator*(Complex a, const Real& s) {
  a.re *= s;
  a.im *= s;
  return a;
}

Complex operator/(Complex a, const Real& s) {
  a.re /= s;
  a.im /= s;
  return a;
}

Complex conj(const Complex& z) { return {z.re, -z.im}; }

Real abs(const Complex& z) {
  if (z.im == 0) return boost::multiprecision::abs(z.re);
  return sqrt(z.re * z.re + z.im * z.im);
}

Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }

Complex inverse(const Complex& z) { return Complex(Real(1)) / z; }

Complex pow(const Complex& z, long n) {
  if (n < 0) return pow(inverse(z), -n);
  Complex result(Real(1));
  Complex base = z;
  auto e = static_cast<unsigned long>(n);
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

Enclosure Enclosure::abs() const {
  if (lo >= 0) return *this;
  if (hi <= 0) return {-hi, -lo};
  return {Real(0), std::max(Real(-lo), hi)};
}

Enclosure Enclosure::scaled(const Real& s) const {
  if (s >= 0) return {lo * s, hi * s};
  return {hi * s, lo * s};
}

}  // namespace mlspec
