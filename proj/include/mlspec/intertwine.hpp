// Orbits x_n(g), their symbolic codes s_m, and the inverse map through rho.
#pragma once

#include "mlspec/numeric.hpp"
#include "mlspec/poly.hpp"
#include "mlspec/rho.hpp"
#include "mlspec/roots.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mlspec {

/// Weights g_1..g_p (polynomials of degree <= k) attached to the expanding
/// roots in classification order. x_n(g) = sum_i g_i(n) alpha_i^n.
struct XiElement {
  int k = 0;
  std::vector<std::vector<Complex>> g;
  /// Exact (re, im) coefficients when the element was built from rationals.
  std::optional<std::vector<std::vector<std::pair<Rational, Rational>>>> exact;

  std::size_t p() const { return g.size(); }
  static XiElement zero(std::size_t p, int k);
  /// Builds from exact coefficients; the conjugate block is filled in from
  /// the upper-half-plane block, and real roots keep only the real part.
  static XiElement from_rationals(const RootClassification& cls, int k,
                                  const std::vector<std::vector<std::pair<Rational, Rational>>>& coeffs);
  /// Re-evaluates exact coefficients at the current working precision.
  void refresh();
  /// x_0 = sum_i g_i(0) when known exactly.
  std::optional<Rational> x0_exact() const;
  /// Degree bound and the conjugate pairing hold to within `tol`.
  bool in_xi(const RootClassification& cls, const Real& tol) const;
};

/// Seeded element with coefficients in [-magnitude, magnitude] (dyadic rationals).
XiElement random_xi(const RootClassification& cls, int k, std::uint64_t seed, double magnitude = 1.0);

/// Witness with x_0 = -1/2: (-1/2, 0, ...) when alpha_1 is real,
/// otherwise -1/4 on alpha_1 and on its conjugate.
XiElement half_witness(const RootClassification& cls);

struct OrbitValues {
  long n_lo = 0;
  long n_hi = 0;
  std::vector<Real> x;
  std::vector<Real> error;
  unsigned digits = 0;
};

/// x_n(g) for n in [n_lo, n_hi] at enough digits for `precision` correct
/// digits after the integer part.
OrbitValues orbit_values(const IntPolynomial& P, const RootClassification& cls, XiElement g, long n_lo, long n_hi,
                         unsigned precision);

struct OrbitSample {
  long n_lo = 0;
  long n_hi = 0;
  std::vector<Real> x;
  std::vector<Integer> u;
  std::vector<Real> eps;
  std::vector<Real> error;
  /// s_m for m in [n_lo, n_hi - D].
  std::vector<Integer> s;
  /// Smallest distance of any x_n to Z + 1/2, exact half-integers excluded.
  Real rounding_margin;
  Real recurrence_defect;
  unsigned digits = 0;

  const Real& x_at(long n) const { return x[static_cast<std::size_t>(n - n_lo)]; }
  const Integer& u_at(long n) const { return u[static_cast<std::size_t>(n - n_lo)]; }
  const Real& eps_at(long n) const { return eps[static_cast<std::size_t>(n - n_lo)]; }
  const Integer& s_at(long m) const { return s[static_cast<std::size_t>(m - n_lo)]; }
  long s_hi() const { return n_lo + static_cast<long>(s.size()) - 1; }
};

/// x_n = u_n + eps_n with eps_n in [-1/2, 1/2) and s_m = sum_j A_j u_{m+j}.
/// Throws PrecisionError when some x_n cannot be separated from Z + 1/2.
OrbitSample orbit_sample(const RecurrenceSpec& spec, const RootClassification& cls, const XiElement& g, long n_lo,
                         long n_hi, unsigned precision);

enum class TailKind { zero, periodic, bounded };

/// Integer sequence vanishing left of `start`: head values, then a tail that is
/// zero, periodic, or only known to satisfy |t| <= bound.
struct OmegaSequence {
  long start = 0;
  std::vector<Integer> head;
  TailKind tail = TailKind::zero;
  std::vector<Integer> period;
  Integer bound = 0;

  long head_end() const { return start + static_cast<long>(head.size()); }
  /// t_m; throws for indices in a bounded tail.
  Integer at(long m) const;
  Integer max_abs() const;
  /// Literal form `0^inf [t_M ... t_-1 | t_0 ...] (period: ...)` or `(bounded: B)`.
  std::string to_string() const;
  static OmegaSequence parse(std::string_view text);
  static OmegaSequence delta(long m, const Integer& value = Integer(1));
  /// Drops leading and trailing zeros of the head (zero tail only trims the right).
  void normalize();
};

/// Symbols of an orbit: s_m on the sampled window with a bounded tail beyond.
struct Encoding {
  OmegaSequence s;
  /// Index below which s_m = 0 is certified.
  long support_start = 0;
  OrbitSample orbit;
};

/// Codes g on [support_start, n_hi - D]. The left edge is found from the
/// decay of x_n as n -> -infinity.
Encoding encode(const RecurrenceSpec& spec, const RootClassification& cls, const XiElement& g, long n_hi,
                unsigned precision);

struct EpsilonValue {
  Real value;
  Real error_bound;
};

/// eps_m = sum_i rho_{m-i} s_i with the infinite parts closed or bounded by the table tails.
EpsilonValue reconstruct_epsilon(const RhoTable& table, const OmegaSequence& s, long m);

/// Bound on sum_{n <= N} |rho_n| from the table and its tails.
Real abs_sum_below(const RhoTable& table, long N);

struct DecodeResult {
  XiElement h;
  long window_lo = 0;
  long window_hi = 0;
  /// max over the window of the distance from x_m(h) - (B_f t)_m to Z.
  Real max_defect;
  bool verified = false;
};

/// Builds h with eps(x_m(h)) = (B_f t)_m mod Z for a finitely supported t.
DecodeResult decode_omega0(const RecurrenceSpec& spec, const RootClassification& cls, const RhoTable& table,
                           const OmegaSequence& t, unsigned precision, const Real& tolerance);

struct MatrixDefects {
  Real ab;
  Real ba;
};

/// Deviation of A_f B_f and B_f A_f from the identity on rows and columns [lo, hi].
MatrixDefects matrix_identity_window_defect(const RhoTable& table, long lo, long hi);

struct VandermondeCheck {
  Real det_modulus;
  Real error_bound;
  bool ok = false;
};

/// |det W| for the (k+1)d square matrix with blocks (m^n alpha_l^m).
VandermondeCheck vandermonde_nonvanishing(const RootClassification& cls, int k);

}  // namespace mlspec
