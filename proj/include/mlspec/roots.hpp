// Certified arbitrary-precision roots and the expanding/contracting partition.
#pragma once

#include "mlspec/numeric.hpp"
#include "mlspec/poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mlspec {

enum class RootClass { expanding, contracting, unit_ambiguous };

const char* to_string(RootClass c);

struct RootRecord {
  Complex value;
  Real modulus;
  /// Radius of a disk around `value` certified to contain exactly this root.
  Real error_bound;
  int multiplicity_in_f = 1;
  RootClass klass = RootClass::expanding;
  std::optional<std::size_t> conj_partner;
};

/// Roots of P ordered as: expanding reals, expanding upper-half-plane roots,
/// their conjugates (same order), then the non-expanding roots in the same
/// real / upper / conjugate layout.
struct RootClassification {
  std::vector<RootRecord> roots;
  int p = 0;
  int r1 = 0;
  int r2 = 0;
  int r1p = 0;
  int r2p = 0;
  Real beta1;  // min |alpha_i| over expanding roots
  Real beta2;  // min |alpha_i|^-1 over non-expanding roots; +inf when p = d
  Real beta;
  Real beta_tilde;
  bool hyperbolic = false;
  bool expansive = false;
  bool beta1_unique = false;
  bool beta2_unique = false;
  /// Decimal digits the roots were certified to.
  unsigned precision = 0;
  std::vector<std::string> notes;

  int d() const { return static_cast<int>(roots.size()); }
  /// Working digits at which the stored values were computed.
  unsigned working_digits() const { return precision + kGuardDigits; }
  std::vector<Complex> values() const;
  Real max_error() const;
};

/// All d roots of a squarefree P by Aberth-Ehrlich iteration at
/// precision + guard digits, each certified by a disjoint inclusion disk.
/// Precision is escalated (up to 4x) until the disks separate.
std::vector<RootRecord> find_roots(const IntPolynomial& P, unsigned precision, int k = 0);

/// Partitions certified roots by modulus. When exact_unit_degree is 0 every
/// root is decided; otherwise roots within `tolerance` of the unit circle are
/// resolved with exact_unit_count when supplied and rejected otherwise.
RootClassification classify_roots(std::vector<RootRecord> roots, const Real& tolerance, int exact_unit_degree,
                                  std::optional<int> exact_unit_count = std::nullopt, unsigned precision = 0);

/// find_roots + classify_roots with both exact unit-circle screens.
RootClassification analyze_roots(const IntPolynomial& P, unsigned precision, int k = 0);

/// Same classification at no less than `precision` digits (recomputes the
/// roots when the stored ones are coarser).
RootClassification ensure_precision(const IntPolynomial& P, const RootClassification& cls, unsigned precision);

}  // namespace mlspec
