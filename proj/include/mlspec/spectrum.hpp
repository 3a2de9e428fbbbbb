// Discrete spectrum values, substitution codings, and the condition checkers.
#pragma once

#include "mlspec/numeric.hpp"
#include "mlspec/poly.hpp"
#include "mlspec/rho.hpp"
#include "mlspec/roots.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mlspec {

inline constexpr int kMaxSeriesOrder = 20000;
inline constexpr int kMaxSubstitutionIndex = 24;
/// Digits discrete_spectrum may climb to when separating e_k from e.
inline constexpr unsigned kMaxSeparationDigits = 1024;

enum class SeriesKind { E, E_k };

/// Exact truncated power series c_0 + c_1 X + ... + c_N X^N.
struct SeriesQ {
  SeriesKind kind = SeriesKind::E;
  int k = 0;
  std::vector<Rational> c;

  int order() const { return static_cast<int>(c.size()) - 1; }
  std::string label() const;
};

/// E(X) = (1 - (1-X) prod_{m>=0} (1-X^(2^m))) / (2X) to order N.
SeriesQ e_series(int N);
/// E^(k)(X) = (1 + X^(2^k) - (1-X) prod_{m<k} (1-X^(2^m))) / (2X (1 + X^(2^k))) to order N.
SeriesQ e_k_series(int k, int N);

/// A_0 = 1, A_n = iota(A_{n-1}) with iota(0) = 1, iota(1) = 100.
std::string substitution_word(int n);
/// First L letters of omega = lim A_n.
std::string omega_prefix(std::size_t L);

/// Symbols in {1, 0, -1}: a finite prefix followed by a periodic tail, or by
/// an unspecified tail of symbols bounded by 1 when `period` is empty.
struct CodedSequence {
  std::vector<int> prefix;
  std::vector<int> period;

  bool periodic() const { return !period.empty(); }
  /// Symbol j; throws beyond the prefix of a non-periodic code.
  int at(std::size_t j) const;
  /// Symbols written 1, 0, 1̄.
  std::string to_string(std::size_t count) const;
};

/// Phi(t_0 t_1 ...) = 1 0^t_0 -1 0^t_1 1 0^t_2 ... for the periodic word w^inf.
CodedSequence phi_periodic(const std::string& w);
/// Phi applied to a finite prefix; the result is exact on its whole length.
CodedSequence phi_prefix(const std::string& word);
/// Phi(omega) known to at least `length` symbols.
CodedSequence phi_omega(std::size_t length);
/// Code whose mu-pairing gives e_k: Phi(A_{k-1}^inf), with A_{-1} = 0.
CodedSequence phi_for_e_k(int k);

struct MuWeights {
  std::vector<Real> mu;
  std::vector<Real> error;
  /// |mu_j| <= constant (1+j)^(d-1) rate^j for every j.
  Real rate;
  Real constant;
  int poly_order = 0;
  bool negative_case = false;
  /// 0 < mu_{j+1} <= mu_j / 2 (or the mirrored negative chain) on the window.
  bool window_monotone = false;
  std::optional<std::size_t> failing_j;
  /// The chain cannot be decided at some j because of the enclosures.
  bool undecided = false;

  /// Bound on sum_{j >= N} |mu_j|.
  Real tail_sum(std::size_t N) const;
};

/// mu_j = -a_0^{-1} H_d^(j)(1/alpha_1, ..., 1/alpha_d), j = 0..N.
MuWeights mu_weights(const IntPolynomial& P, const RootClassification& cls, std::size_t N);

/// (t)_mu = sum_j mu_j t_j over the available weights plus the tail bound.
Enclosure evaluate_mu_pairing(const CodedSequence& code, const MuWeights& mu);

struct EValues {
  Enclosure e;
  std::vector<Enclosure> e_k;
  int order = 0;
};

/// e = |a_0|^{-1} sum_n c_n H_d^(n)(1/alpha) and likewise e_0..e_K from E^(k).
EValues evaluate_E(const IntPolynomial& P, const RootClassification& cls, int K, int order = 0);

enum class Tri { no, yes, undecided };
const char* to_string(Tri t);

struct ConditionFlag {
  Tri value = Tri::undecided;
  /// Threshold minus the certified value (positive when the condition holds).
  Real margin;
  Enclosure quantity;
  std::string note;
};

struct ConditionReport {
  /// 0 < mu_{j+1} <= mu_j / 2 for all j (or the mirrored negative chain).
  ConditionFlag mu_chain;
  /// sum 1/alpha_i <= 1/2 for monic P with real roots > 1.
  ConditionFlag reciprocal_sum;
  /// ceil((beta - 1)/2) sum |rho_n| < 1/2.
  ConditionFlag weighted_sum;
  /// Same with beta_tilde in place of beta.
  ConditionFlag weighted_sum_tilde;
  /// ceil((beta - 1)/2) sum_i 1/(a_d ||alpha_i| - 1| prod_{j != i} |alpha_i - alpha_j|) < 1/2.
  ConditionFlag residue_bound;
  std::vector<std::string> applicable_theorems;
};

ConditionReport check_conditions(const IntPolynomial& P, const RootClassification& cls, const RhoTable& table);

enum class SubsumSide { left, right };

struct SubsumCheck {
  bool holds = false;
  std::optional<long> first_violation;
  long checked_to = 0;
  /// lim r_{n+1}/r_n > 1/(2A+1), from the dominant root on that side.
  bool ratio_hypothesis = false;
  Real ratio_limit;
  std::string note;
};

/// Kakeya-type test r_n <= 2A sum_{m>n} r_m for n >= start, where
/// r_n = |rho_{-n}| (left) or |rho_n| (right).
SubsumCheck subsum_interval_check(const RhoTable& table, const RootClassification& cls, long A, SubsumSide side,
                                  long start);

struct PeriodicLimsup {
  /// max over one period of the distance of (B_f s)_n to Z: the spectrum value of the decoded orbit.
  Enclosure value;
  /// max over one period of |(B_f s)_n|.
  Enclosure max_abs;
  long argmax = 0;
};

/// Limit values of sum_m rho_{n-m} s_m for a bi-infinite periodic s with
/// period w (positions 0..L-1); k = 0 only.
PeriodicLimsup periodic_limsup(const RhoTable& table, const std::vector<Integer>& period);

struct RealizeResult {
  PeriodicLimsup limsup;
  std::vector<Integer> period;
  long R = 0;
  long a = 0;
  long b = 0;
};

/// Limsup for s = 0^inf (t_{-R} ... t_R 0^a 1 0^b)^inf, where t is the coding
/// of the witness with x_0 = -1/2.
RealizeResult realize_near_half(const RecurrenceSpec& spec, const RootClassification& cls, const RhoTable& table,
                                long R, long a, long b, unsigned precision);

struct SpectrumReport {
  Enclosure e;
  std::vector<Enclosure> e_k;
  std::vector<Real> mu;
  ConditionReport conditions;
  std::vector<std::string> applicable_theorems;
  /// |e - |(Phi(omega))_mu|| and |e_k - |(Phi(A_{k-1}^inf))_mu||.
  Real coding_defect_e;
  std::vector<Real> coding_defect_e_k;
  int order = 0;
  /// Digits the values were certified at (raised until the e_k separate).
  unsigned precision = 0;
};

/// Full report for monic expansive P; throws HypothesisError naming the
/// failed hypothesis, UndecidedError when it cannot be certified.
/// Precision is raised until e_0 < ... < e_K < e are pairwise disjoint.
SpectrumReport discrete_spectrum(const IntPolynomial& P, int K, unsigned precision);

}  // namespace mlspec
