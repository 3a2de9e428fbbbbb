#include "mlspec/rho.hpp"

#include "mlspec/errors.hpp"
#include "mlspec/homsym.hpp"

#include <algorithm>

namespace mlspec {

namespace {

// Coefficients of P(alpha + t) in t.
std::vector<Complex> taylor_shift(const IntPolynomial& P, const Complex& alpha) {
  std::vector<Complex> b;
  for (const auto& a : P.coeffs()) b.emplace_back(to_real(a));
  const std::size_t n = b.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j > i; --j) b[j - 1] += alpha * b[j];
  return b;
}

std::vector<Complex> series_mul(const std::vector<Complex>& a, const std::vector<Complex>& b, std::size_t terms) {
  std::vector<Complex> out(terms);
  for (std::size_t i = 0; i < std::min(terms, a.size()); ++i)
    for (std::size_t j = 0; j < b.size() && i + j < terms; ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<Complex> series_inverse(const std::vector<Complex>& a, std::size_t terms) {
  std::vector<Complex> out(terms);
  const Complex inv0 = inverse(a[0]);
  for (std::size_t m = 0; m < terms; ++m) {
    Complex acc = m == 0 ? Complex(Real(1)) : Complex();
    for (std::size_t i = 1; i <= m && i < a.size(); ++i) acc -= a[i] * out[m - i];
    out[m] = acc * inv0;
  }
  return out;
}

// Coefficients in n of binom(n-1, i) = (n-1)(n-2)...(n-i)/i!.
std::vector<Rational> shifted_binomial(int i) {
  std::vector<Rational> p{Rational(1)};
  for (int j = 1; j <= i; ++j) {
    std::vector<Rational> next(p.size() + 1, Rational(0));
    for (std::size_t e = 0; e < p.size(); ++e) {
      next[e + 1] += p[e];
      next[e] -= p[e] * j;
    }
    p = std::move(next);
  }
  Integer fact = 1;
  for (int j = 2; j <= i; ++j) fact *= j;
  for (auto& c : p) c /= Rational(fact);
  return p;
}

Real ipow(const Real& x, int e) {
  Real r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

struct ResidueSums {
  Complex expanding;
  Complex non_expanding;
  Real expanding_abs;
  Real non_expanding_abs;
};

ResidueSums sum_residues(const std::vector<ResiduePolynomial>& exp, const std::vector<ResiduePolynomial>& other,
                         long n) {
  ResidueSums s;
  s.expanding_abs = 0;
  s.non_expanding_abs = 0;
  for (const auto& r : exp) {
    Complex v = r(n);
    s.expanding_abs += abs(v);
    s.expanding += v;
  }
  for (const auto& r : other) {
    Complex v = r(n);
    s.non_expanding_abs += abs(v);
    s.non_expanding += v;
  }
  return s;
}

// First-order relative error of a residue evaluated at n from the certified
// root radii and the working roundoff.
Real relative_error(const RootClassification& cls, long n, int k) {
  Real eta = 0;
  for (std::size_t i = 0; i < cls.roots.size(); ++i) {
    Real sep = cls.roots[i].modulus;
    for (std::size_t j = 0; j < cls.roots.size(); ++j)
      if (j != i) sep = std::min(sep, abs(cls.roots[i].value - cls.roots[j].value));
    eta = std::max(eta, Real(cls.roots[i].error_bound / sep));
  }
  const long an = n < 0 ? -n : n;
  const Real scale = Real(an + 4 * (k + 1) * cls.d() + 16);
  return (unit_roundoff() + eta) * scale;
}

void require_supported(const RootClassification& cls) {
  if (!cls.hyperbolic)
    throw HypothesisError("rho_n needs a hyperbolic polynomial (a root lies on the unit circle)");
}

void split(const std::vector<ResiduePolynomial>& all, const RootClassification& cls,
           std::vector<ResiduePolynomial>& exp, std::vector<ResiduePolynomial>& other) {
  for (std::size_t j = 0; j < all.size(); ++j) (static_cast<int>(j) < cls.p ? exp : other).push_back(all[j]);
}

RhoPoint rho_point(const RecurrenceSpec& spec, const RootClassification& cls,
                   const std::vector<ResiduePolynomial>& exp, const std::vector<ResiduePolynomial>& other, long n,
                   bool& overlap_ok) {
  ResidueSums s = sum_residues(exp, other, n);
  const Real rel = relative_error(cls, n, spec.k);
  overlap_ok = true;
  RhoPoint out;
  Complex v;
  Real mag;
  if (n >= 1 && n <= spec.D - 1) {
    Complex a = -s.non_expanding;
    Complex b = s.expanding;
    Real scale = std::max(Real(1), std::max(s.expanding_abs, s.non_expanding_abs));
    Real tol = std::max(ten_to_minus(static_cast<long>(cls.precision / 2)) * scale,
                        Real(8 * rel * (s.expanding_abs + s.non_expanding_abs)));
    if (abs(a - b) > tol) overlap_ok = false;
    v = b;
    mag = s.expanding_abs;
  } else if (n >= 1) {
    v = -s.non_expanding;
    mag = s.non_expanding_abs;
  } else {
    v = s.expanding;
    mag = s.expanding_abs;
  }
  out.error = rel * mag;
  if (abs(v.im) > std::max(Real(4 * out.error), Real(ten_to_minus(static_cast<long>(cls.precision / 2)) * mag)))
    throw PrecisionError("rho_" + std::to_string(n) + " has a non-negligible imaginary part");
  out.value = v.re;
  return out;
}

}  // namespace

Complex ResiduePolynomial::operator()(long n) const {
  Complex poly;
  Real nn(n);
  for (std::size_t l = c.size(); l-- > 0;) poly = poly * nn + c[l];
  return poly * pow(alpha, n);
}

ResidueJet residue_jet(const RecurrenceSpec& spec, const Complex& alpha) {
  const auto order = static_cast<std::size_t>(spec.k + 1);
  std::vector<Complex> shift = taylor_shift(spec.base, alpha);
  // P(alpha + t) = t Q(t)
  std::vector<Complex> q(order);
  for (std::size_t i = 0; i < order; ++i)
    if (i + 1 < shift.size()) q[i] = shift[i + 1];
  const Real qabs = abs(q[0]);
  if (qabs == 0 || qabs <= unit_roundoff() * Real(1000) * abs(shift.back()))
    throw PrecisionError("residue jet: P'(alpha) is indistinguishable from 0");
  std::vector<Complex> h{Complex(Real(1))};
  for (int e = 0; e <= spec.k; ++e) h = series_mul(h, q, order);
  ResidueJet jet;
  jet.center = alpha;
  jet.order = spec.k + 1;
  jet.coeffs = series_inverse(h, order);
  return jet;
}

ResiduePolynomial residue_polynomial(const RecurrenceSpec& spec, const Complex& alpha) {
  ResidueJet jet = residue_jet(spec, alpha);
  const int k = spec.k;
  ResiduePolynomial out;
  out.alpha = alpha;
  out.c.assign(static_cast<std::size_t>(k + 1), Complex());
  const Complex inv = inverse(alpha);
  Complex inv_pow = inv;  // alpha^(-1-i)
  for (int i = 0; i <= k; ++i) {
    std::vector<Rational> b = shifted_binomial(i);
    Complex w = inv_pow * jet.coeffs[static_cast<std::size_t>(k - i)];
    for (std::size_t l = 0; l < b.size(); ++l) out.c[l] += w * to_real(b[l]);
    inv_pow *= inv;
  }
  out.abs_coeff_sum = 0;
  for (const auto& c : out.c) out.abs_coeff_sum += abs(c);
  return out;
}

Complex residue_at_root(const RecurrenceSpec& spec, const RootClassification& cls, std::size_t j, long n) {
  WorkingPrecision guard(cls.working_digits());
  const Complex& alpha = cls.roots.at(j).value;
  ResidueJet jet = residue_jet(spec, alpha);
  // Jet of z^(n-1) at alpha: binom(n-1, i) alpha^(n-1-i).
  const auto order = static_cast<std::size_t>(spec.k + 1);
  std::vector<Complex> zj(order);
  Complex base = pow(alpha, n - 1);
  const Complex inv = inverse(alpha);
  Real binom = 1;
  for (std::size_t i = 0; i < order; ++i) {
    zj[i] = base * binom;
    binom = binom * Real(n - 1 - static_cast<long>(i)) / Real(static_cast<long>(i) + 1);
    base *= inv;
  }
  return series_mul(zj, jet.coeffs, order)[order - 1];
}

std::vector<ResiduePolynomial> residue_polynomials(const RecurrenceSpec& spec, const RootClassification& cls) {
  WorkingPrecision guard(cls.working_digits());
  std::vector<ResiduePolynomial> out;
  out.reserve(cls.roots.size());
  for (const auto& r : cls.roots) out.push_back(residue_polynomial(spec, r.value));
  return out;
}

Real rho_value(const RecurrenceSpec& spec, const RootClassification& cls, long n) {
  require_supported(cls);
  RootClassification current = cls;
  for (int attempt = 0; attempt < 2; ++attempt) {
    WorkingPrecision guard(current.working_digits());
    std::vector<ResiduePolynomial> exp, other;
    split(residue_polynomials(spec, current), current, exp, other);
    bool ok = true;
    RhoPoint p = rho_point(spec, current, exp, other, n, ok);
    if (ok) return p.value;
    current = ensure_precision(spec.base, current, current.precision * 2);
  }
  throw Error("rho_" + std::to_string(n) + ": residue sums at expanding and non-expanding roots disagree");
}

Real rho_expansive(const IntPolynomial& P, long n, const RootClassification& cls) {
  if (!cls.expansive) throw HypothesisError("rho_expansive needs an expansive polynomial");
  if (n > 0) throw Error("rho_expansive is defined for n <= 0");
  if (!cls.roots.empty() && cls.roots.front().multiplicity_in_f != 1)
    throw HypothesisError("rho_expansive applies to k = 0");
  WorkingPrecision guard(cls.working_digits());
  std::vector<Complex> inv;
  for (const auto& r : cls.roots) inv.push_back(inverse(r.value));
  Complex h = hom_sym_sequence(inv, static_cast<std::size_t>(-n)).back();
  return Real(-h.re / to_real(P.constant()));
}

Real TailBound::bound_at(long n) const {
  if (zero) return 0;
  const long an = n < 0 ? -n : n;
  return constant * ipow(Real(1 + an), poly_order) * pow(rate, Real(an));
}

Real polygeometric_tail(const Real& C, const Real& q, int k, long M) {
  if (C == 0) return 0;
  if (q >= 1) return infinity();
  Real acc = 0;
  long m = M + 1;
  Real term = C * ipow(Real(1 + m), k) * pow(q, Real(m));
  for (long steps = 0; steps < 10000000; ++steps, ++m) {
    Real ratio = ipow(Real(m + 2) / Real(m + 1), k) * q;
    if (ratio < 1) return acc + term / (1 - ratio);
    acc += term;
    term *= ratio;
  }
  throw PrecisionError("tail bound did not reach its geometric regime");
}

const Real& RhoTable::at(long n) const {
  if (!covers(n)) throw Error("rho table does not cover n = " + std::to_string(n));
  return values[static_cast<std::size_t>(n - n_min)];
}

Real RhoTable::error_at(long n) const {
  if (covers(n)) return errors[static_cast<std::size_t>(n - n_min)];
  return n < n_min ? right_tail.bound_at(n) * unit_roundoff() : left_tail.bound_at(n) * unit_roundoff();
}

RhoPoint RhoTable::evaluate(long n) const {
  if (covers(n)) return {at(n), error_at(n)};
  if (n > n_max && left_tail.zero) return {Real(0), Real(0)};
  WorkingPrecision guard(precision + kGuardDigits);
  Complex v;
  Real mag = 0;
  for (const auto& r : n >= 1 ? non_expanding : expanding) {
    Complex t = r(n);
    mag += abs(t);
    v += t;
  }
  if (n >= 1) v = -v;
  const long an = n < 0 ? -n : n;
  return {v.re, Real(mag * unit_roundoff() * Real(an + 64))};
}

Real RhoTable::max_error() const {
  Real m = 0;
  for (const auto& e : errors) m = std::max(m, e);
  return m;
}

RhoTable build_rho_table(const RecurrenceSpec& spec, const RootClassification& cls, long n_min, long n_max) {
  require_supported(cls);
  if (n_min > 0 || n_max < 0 || n_min > n_max)
    throw Error("rho table window must satisfy n_min <= 0 <= n_max");
  RootClassification current = cls;
  for (int attempt = 0; attempt < 2; ++attempt) {
    WorkingPrecision guard(current.working_digits());
    RhoTable t;
    t.spec = spec;
    t.n_min = n_min;
    t.n_max = n_max;
    t.precision = current.precision;
    split(residue_polynomials(spec, current), current, t.expanding, t.non_expanding);
    bool all_ok = true;
    Real partial = 0;
    Real err_sum = 0;
    for (long n = n_min; n <= n_max && all_ok; ++n) {
      bool ok = true;
      RhoPoint p = rho_point(spec, current, t.expanding, t.non_expanding, n, ok);
      all_ok = ok;
      partial += abs(p.value);
      err_sum += p.error;
      t.values.push_back(std::move(p.value));
      t.errors.push_back(std::move(p.error));
    }
    if (!all_ok) {
      current = ensure_precision(spec.base, current, current.precision * 2);
      continue;
    }

    auto make_tail = [&](const std::vector<ResiduePolynomial>& block, long edge) {
      TailBound tb;
      if (block.empty()) {
        tb.zero = true;
        tb.rate = 0;
        tb.constant = 0;
        tb.sum = 0;
        return tb;
      }
      tb.poly_order = spec.k;
      tb.rate = 0;
      tb.constant = 0;
      tb.sum = 0;
      for (const auto& r : block) {
        Real m = abs(r.alpha);
        Real q = m > 1 ? Real(1 / m) : m;
        // Cover the rounding of the residue coefficients.
        Real C = r.abs_coeff_sum * (1 + relative_error(current, 0, spec.k));
        tb.rate = std::max(tb.rate, q);
        tb.constant += C;
        tb.sum += polygeometric_tail(C, q, spec.k, edge);
      }
      return tb;
    };
    t.right_tail = make_tail(t.expanding, -n_min);
    t.left_tail = make_tail(t.non_expanding, n_max);
    const Real tails = t.right_tail.sum + t.left_tail.sum;
    t.abs_sum = {Real(partial - err_sum), Real(partial + err_sum + tails)};
    if (t.abs_sum.lo < 0) t.abs_sum.lo = 0;
    return t;
  }
  throw Error("rho table: residue sums disagree on the overlap window after precision escalation");
}

Real convolution_identity_defect(const RhoTable& table, long lo, long hi) {
  const auto& A = table.spec.A;
  const long D = table.spec.D;
  if (!table.covers(lo) || !table.covers(hi + D))
    throw Error("convolution_identity_defect: table does not cover [lo, hi + D]");
  WorkingPrecision guard(table.precision + kGuardDigits);
  Real worst = 0;
  for (long n = lo; n <= hi; ++n) {
    Real acc = n == 0 ? Real(-1) : Real(0);
    for (long j = 0; j <= D; ++j) acc -= to_real(A[static_cast<std::size_t>(j)]) * table.at(j + n);
    worst = std::max(worst, Real(abs(acc)));
  }
  return worst;
}

ResidueAtInfinity residue_at_infinity_integrality(const RecurrenceSpec& spec, const RootClassification& cls, long n) {
  if (!spec.monic) throw HypothesisError("residue at infinity is integral only for monic P");
  require_supported(cls);
  ResidueAtInfinity out;
  out.value = 0;
  if (n >= spec.D) {
    const long target = n - spec.D;
    std::vector<Integer> c(static_cast<std::size_t>(target + 1), Integer(0));
    c[0] = 1;
    for (long m = 1; m <= target; ++m) {
      Integer acc = 0;
      for (long i = 1; i <= std::min<long>(m, spec.D); ++i)
        acc -= spec.A[static_cast<std::size_t>(spec.D - i)] * c[static_cast<std::size_t>(m - i)];
      c[static_cast<std::size_t>(m)] = acc;
    }
    out.value = -c[static_cast<std::size_t>(target)];
  }
  unsigned grow = cls.precision;
  {
    WorkingPrecision g(cls.working_digits());
    Real top = 1;
    for (const auto& r : cls.roots) top = std::max(top, r.modulus);
    const long an = n < 0 ? -n : n;
    grow += static_cast<unsigned>(ceil(Real(an) * log10(top)).convert_to<long>()) + 5;
  }
  RootClassification fine = ensure_precision(spec.base, cls, grow);
  WorkingPrecision guard(fine.working_digits());
  std::vector<ResiduePolynomial> exp, other;
  split(residue_polynomials(spec, fine), fine, exp, other);
  ResidueSums s = sum_residues(exp, other, n);
  // rho_n - sum_exp is minus all finite residues for n >= 1 and vanishes for n <= 0.
  Complex total = n >= 1 ? Complex(-(s.expanding + s.non_expanding)) : Complex();
  out.numeric = total.re;
  out.ok = abs(total - Complex(to_real(out.value))) <= ten_to_minus(static_cast<long>(cls.precision / 2));
  return out;
}

}  // namespace mlspec
