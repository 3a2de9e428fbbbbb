// The intertwining coefficients rho_n = -(1/2 pi i) \oint_{|z|=1+0} z^(n-1)/f(z) dz.
#pragma once

#include "mlspec/numeric.hpp"
#include "mlspec/poly.hpp"
#include "mlspec/roots.hpp"

#include <vector>

namespace mlspec {

/// Taylor coefficients of g(center + t), g(z) = (z - center)^(k+1) / f(z),
/// for t^0 .. t^k.
struct ResidueJet {
  Complex center;
  int order = 1;  // k + 1
  std::vector<Complex> coeffs;
};

ResidueJet residue_jet(const RecurrenceSpec& spec, const Complex& alpha);

/// Res(z^(n-1)/f(z), alpha) = alpha^n * sum_l c[l] n^l.
struct ResiduePolynomial {
  Complex alpha;
  std::vector<Complex> c;
  /// sum_l |c[l]|, so |residue| <= abs_coeff_sum * (1+|n|)^k * |alpha|^n.
  Real abs_coeff_sum;

  Complex operator()(long n) const;
};

ResiduePolynomial residue_polynomial(const RecurrenceSpec& spec, const Complex& alpha);

/// Residue of z^(n-1)/f(z) at root j of the classification, by jet product.
Complex residue_at_root(const RecurrenceSpec& spec, const RootClassification& cls, std::size_t j, long n);

/// Residue polynomials for every root, in classification order.
std::vector<ResiduePolynomial> residue_polynomials(const RecurrenceSpec& spec, const RootClassification& cls);

struct RhoPoint {
  Real value;
  Real error;
};

/// rho_n from the residues at the roots. Uses minus the non-expanding sum for
/// n >= 1 and the expanding sum for n <= D-1; both are compared on the overlap.
Real rho_value(const RecurrenceSpec& spec, const RootClassification& cls, long n);

/// rho_n = -(1/a_0) H_d^(-n)(1/alpha_1, ..., 1/alpha_d) for expansive P, k = 0, n <= 0.
Real rho_expansive(const IntPolynomial& P, long n, const RootClassification& cls);

/// Bound of the form |rho_n| <= constant * (1+|n|)^poly_order * rate^|n|
/// beyond one edge of a table window.
struct TailBound {
  bool zero = false;
  Real rate;
  Real constant;
  int poly_order = 0;
  /// Bound on sum |rho_n| over all n beyond the edge.
  Real sum;

  Real bound_at(long n) const;
};

/// sum_{m > M} C (1+m)^k q^m for 0 <= q < 1.
Real polygeometric_tail(const Real& C, const Real& q, int k, long M);

/// Values of rho_n on [n_min, n_max] with tail bounds on both sides.
///
/// `right_tail` covers n < n_min (the rho_{-n} direction), `left_tail` covers n > n_max.
struct RhoTable {
  RecurrenceSpec spec;
  long n_min = 0;
  long n_max = 0;
  std::vector<Real> values;
  std::vector<Real> errors;
  TailBound right_tail;
  TailBound left_tail;
  Enclosure abs_sum;
  std::vector<ResiduePolynomial> expanding;
  std::vector<ResiduePolynomial> non_expanding;
  unsigned precision = 0;

  bool covers(long n) const { return n >= n_min && n <= n_max; }
  const Real& at(long n) const;
  Real error_at(long n) const;
  /// rho_n for any n; outside the window it is recomputed from the residues.
  RhoPoint evaluate(long n) const;
  /// Largest stored error estimate.
  Real max_error() const;
};

RhoTable build_rho_table(const RecurrenceSpec& spec, const RootClassification& cls, long n_min, long n_max);

/// max over n in [lo, hi] of |sum_j -A_j rho_{j+n} - [n = 0]|.
Real convolution_identity_defect(const RhoTable& table, long lo, long hi);

struct ResidueAtInfinity {
  Integer value;
  /// rho_n minus the expanding residues, computed numerically.
  Real numeric;
  bool ok = false;
};

/// Residue of z^(n-1)/f(z) at infinity from the integer series
/// 1/(1 + A_{D-1} X + ... + A_0 X^D), compared against rho_n - sum of expanding residues.
ResidueAtInfinity residue_at_infinity_integrality(const RecurrenceSpec& spec, const RootClassification& cls, long n);

}  // namespace mlspec
