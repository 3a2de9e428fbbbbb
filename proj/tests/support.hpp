// Shared fixtures and independent oracles for the test suites.
#pragma once

#include "mlspec/numeric.hpp"
#include "mlspec/poly.hpp"
#include "mlspec/rho.hpp"
#include "mlspec/roots.hpp"

#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace mlspec::testing {

inline constexpr const char* kCubic = "X^3+2X^2+6X-2";
inline constexpr const char* kQuadratic = "X^2-20X+82";

struct Fixture {
  IntPolynomial P;
  RecurrenceSpec spec;
  RootClassification cls;
};

inline Fixture load(const std::string& text, int k = 0, unsigned precision = 60) {
  Fixture f;
  f.P = parse_polynomial(text);
  f.spec = power_to_f(f.P, k);
  f.cls = analyze_roots(f.P, precision, k);
  return f;
}

/// rho_n = -(1/M) sum_j z_j^n / f(z_j) on |z| = 1 (trapezoid rule, double precision).
inline double rho_quadrature(const std::vector<Integer>& A, long n, int M = 4096) {
  const double pi = std::acos(-1.0);
  std::complex<double> acc = 0;
  for (int j = 0; j < M; ++j) {
    const std::complex<double> z = std::polar(1.0, 2 * pi * j / M);
    std::complex<double> f = 0;
    for (std::size_t i = A.size(); i-- > 0;) f = f * z + A[i].convert_to<double>();
    acc += std::pow(z, static_cast<double>(n)) / f;
  }
  return -(acc / static_cast<double>(M)).real();
}

inline Real real_of(const char* text) { return Real(text); }

}  // namespace mlspec::testing
