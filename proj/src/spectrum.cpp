#include "mlspec/spectrum.hpp"

#include "mlspec/errors.hpp"
#include "mlspec/homsym.hpp"
#include "mlspec/intertwine.hpp"
#include "mlspec/rational_poly.hpp"

#include <algorithm>
#include <cmath>

namespace mlspec {

namespace {

void check_order(int N) {
  if (N < 1) throw Error("series order must be at least 1");
  if (N > kMaxSeriesOrder) throw ResourceLimitError("series order exceeds " + std::to_string(kMaxSeriesOrder));
}

// prod_{m : 2^m <= limit, m < count} (1 - X^(2^m)), truncated to `terms` coefficients.
std::vector<Rational> binary_product(std::size_t terms, int count) {
  std::vector<Rational> p(terms, Rational(0));
  p[0] = 1;
  for (int m = 0; m < count; ++m) {
    const std::size_t step = std::size_t(1) << m;
    if (step >= terms) break;
    for (std::size_t i = terms; i-- > step;) p[i] -= p[i - step];
  }
  return p;
}

std::vector<Rational> times_one_minus_x(const std::vector<Rational>& p) {
  std::vector<Rational> out(p);
  for (std::size_t i = 1; i < p.size(); ++i) out[i] -= p[i - 1];
  return out;
}

std::vector<int> to_symbols(const SeriesQ& s) {
  std::vector<int> out;
  for (const auto& c : s.c) {
    if (c == 1) out.push_back(1);
    else if (c == 0) out.push_back(0);
    else if (c == -1) out.push_back(-1);
    else throw Error(s.label() + " has a coefficient outside {1, 0, -1}");
  }
  return out;
}

void append_phi(const std::string& w, int& sign, std::vector<int>& out) {
  for (char ch : w) {
    out.push_back(sign);
    sign = -sign;
    for (int z = 0; z < (ch == '1' ? 1 : 0); ++z) out.push_back(0);
  }
}

int sign_of(const Integer& z) { return z < 0 ? -1 : 1; }

std::optional<std::vector<Rational>> all_rational_roots(const IntPolynomial& P) {
  auto roots = rational_roots(P);
  if (!roots || static_cast<int>(roots->size()) != P.degree()) return std::nullopt;
  return roots;
}

Tri compare_below(const Enclosure& x, const Real& threshold, bool strict) {
  if (strict ? x.hi < threshold : x.hi <= threshold) return Tri::yes;
  if (strict ? x.lo >= threshold : x.lo > threshold) return Tri::no;
  return Tri::undecided;
}

// Ceiling of (beta - 1)/2 over an enclosure of beta; nullopt if it straddles an integer.
std::optional<Integer> ceil_half_minus_one(const Enclosure& beta) {
  Real lo = ceil(Real((beta.lo - 1) / 2));
  Real hi = ceil(Real((beta.hi - 1) / 2));
  if (lo != hi) return std::nullopt;
  return round_half_up(lo);
}

Real beta_error(const RootClassification& cls, const Real& beta) {
  return 2 * cls.max_error() * (1 + beta * beta) + unit_roundoff() * beta;
}

}  // namespace

std::string SeriesQ::label() const { return kind == SeriesKind::E ? std::string("E") : "E^(" + std::to_string(k) + ")"; }

SeriesQ e_series(int N) {
  check_order(N);
  const std::size_t terms = static_cast<std::size_t>(N) + 2;
  std::vector<Rational> num = times_one_minus_x(binary_product(terms, 64));
  for (auto& c : num) c = -c;
  num[0] += 1;
  SeriesQ s;
  s.kind = SeriesKind::E;
  for (std::size_t n = 0; n <= static_cast<std::size_t>(N); ++n) s.c.push_back(num[n + 1] / 2);
  return s;
}

SeriesQ e_k_series(int k, int N) {
  check_order(N);
  if (k < 0) throw Error("E^(k) needs k >= 0");
  if (k > 62) throw ResourceLimitError("E^(k) index too large");
  const std::size_t terms = static_cast<std::size_t>(N) + 2;
  const std::size_t step = std::size_t(1) << k;
  std::vector<Rational> num = times_one_minus_x(binary_product(terms, k));
  for (auto& c : num) c = -c;
  num[0] += 1;
  if (step < terms) num[step] += 1;
  // num has no constant term; divide by X, then by 2 (1 + X^(2^k)).
  std::vector<Rational> shifted(num.begin() + 1, num.end());
  std::vector<Rational> den(std::min(step, terms) + 1, Rational(0));
  den[0] = 2;
  if (step < den.size()) den[step] += 2;
  SeriesQ s;
  s.kind = SeriesKind::E_k;
  s.k = k;
  s.c = series_divide(shifted, den, static_cast<std::size_t>(N) + 1);
  return s;
}

std::string substitution_word(int n) {
  if (n < 0) throw Error("substitution index must be non-negative");
  if (n > kMaxSubstitutionIndex) throw ResourceLimitError("substitution index exceeds " + std::to_string(kMaxSubstitutionIndex));
  std::string w = "1";
  for (int i = 0; i < n; ++i) {
    std::string next;
    next.reserve(w.size() * 3);
    for (char ch : w) next += ch == '0' ? "1" : "100";
    w = std::move(next);
  }
  return w;
}

std::string omega_prefix(std::size_t L) {
  for (int n = 0; n <= kMaxSubstitutionIndex; ++n) {
    std::string w = substitution_word(n);
    if (w.size() >= L) return w.substr(0, L);
  }
  throw ResourceLimitError("omega prefix longer than the largest substitution word");
}

int CodedSequence::at(std::size_t j) const {
  if (j < prefix.size()) return prefix[j];
  if (period.empty()) throw Error("coded sequence is only known on its prefix");
  return period[(j - prefix.size()) % period.size()];
}

std::string CodedSequence::to_string(std::size_t count) const {
  std::string out;
  for (std::size_t j = 0; j < count; ++j) {
    if (!periodic() && j >= prefix.size()) {
      out += "...";
      break;
    }
    int s = at(j);
    out += s == 1 ? "1" : s == 0 ? "0" : "1̄";
  }
  return out;
}

CodedSequence phi_periodic(const std::string& w) {
  if (w.empty()) throw Error("periodic word must be non-empty");
  CodedSequence c;
  int sign = 1;
  append_phi(w, sign, c.period);
  if (w.size() % 2 == 1) append_phi(w, sign, c.period);
  return c;
}

CodedSequence phi_prefix(const std::string& word) {
  CodedSequence c;
  int sign = 1;
  append_phi(word, sign, c.prefix);
  return c;
}

CodedSequence phi_omega(std::size_t length) {
  CodedSequence c = phi_prefix(omega_prefix(length));
  c.prefix.resize(length);
  return c;
}

CodedSequence phi_for_e_k(int k) { return phi_periodic(k == 0 ? std::string("0") : substitution_word(k - 1)); }

Real MuWeights::tail_sum(std::size_t N) const {
  return polygeometric_tail(constant, rate, poly_order, static_cast<long>(N) - 1);
}

MuWeights mu_weights(const IntPolynomial& P, const RootClassification& cls, std::size_t N) {
  if (!cls.expansive) throw HypothesisError("mu weights need an expansive polynomial");
  if (!P.monic()) throw HypothesisError("mu weights need a monic polynomial");
  WorkingPrecision guard(cls.working_digits());
  const int d = cls.d();
  const Integer a0 = P.constant();
  const Real abs_a0 = to_real(Integer(abs(a0)));
  MuWeights out;
  out.poly_order = d - 1;
  out.constant = 1 / abs_a0;

  std::vector<Complex> inv;
  std::vector<Real> inv_abs, inv_abs_up;
  out.rate = 0;
  for (const auto& r : cls.roots) {
    inv.push_back(inverse(r.value));
    const Real e = r.error_bound;
    const Real m = abs(inv.back());
    const Real eta = e / (r.modulus * (r.modulus - e)) + unit_roundoff() * m;
    inv_abs.push_back(m);
    inv_abs_up.push_back(m + eta);
    out.rate = std::max(out.rate, Real(m + eta));
  }
  if (out.rate >= 1) throw PrecisionError("mu weights: root enclosures reach the unit circle");
  const std::vector<Complex> h = hom_sym_sequence(inv, N);
  const std::vector<Real> h_abs = hom_sym_sequence(inv_abs, N);
  const std::vector<Real> h_up = hom_sym_sequence(inv_abs_up, N);
  for (std::size_t j = 0; j <= N; ++j) {
    out.mu.push_back(-h[j].re / to_real(a0));
    Real err = (h_up[j] - h_abs[j]) + unit_roundoff() * h_up[j] * Real(static_cast<long>(j) + 4 * d);
    out.error.push_back(err / abs_a0);
  }

  std::optional<std::vector<Rational>> exact = all_rational_roots(P);
  std::vector<Rational> mu_q;
  if (exact) {
    std::vector<Rational> xs;
    for (const auto& r : *exact) xs.push_back(1 / r);
    std::vector<Rational> hq = hom_sym_sequence(xs, N);
    for (auto& v : hq) mu_q.push_back(-v / Rational(a0));
    for (std::size_t j = 0; j <= N; ++j) {
      out.mu[j] = to_real(mu_q[j]);
      out.error[j] = 0;
    }
  }

  out.negative_case = out.mu[0] < 0;
  const int s = out.negative_case ? -1 : 1;
  out.window_monotone = true;
  for (std::size_t j = 0; j < N; ++j) {
    Tri ok;
    if (exact) {
      const Rational a = mu_q[j] * s, b = mu_q[j + 1] * s;
      ok = (b > 0 && 2 * b <= a) ? Tri::yes : Tri::no;
    } else {
      const Real a = out.mu[j] * s, b = out.mu[j + 1] * s;
      const Real ea = out.error[j], eb = out.error[j + 1];
      if (b - eb > 0 && 2 * (b + eb) <= a - ea) ok = Tri::yes;
      else if (b + eb <= 0 || 2 * (b - eb) > a + ea) ok = Tri::no;
      else ok = Tri::undecided;
    }
    if (ok != Tri::yes) {
      out.window_monotone = false;
      out.undecided = ok == Tri::undecided;
      out.failing_j = j;
      break;
    }
  }
  return out;
}

Enclosure evaluate_mu_pairing(const CodedSequence& code, const MuWeights& mu) {
  std::size_t J = mu.mu.size();
  if (!code.periodic()) J = std::min(J, code.prefix.size());
  Real sum = 0, err = 0;
  for (std::size_t j = 0; j < J; ++j) {
    const int t = code.at(j);
    if (t == 0) continue;
    sum += t * mu.mu[j];
    err += mu.error[j];
  }
  err += mu.tail_sum(J) + unit_roundoff() * Real(static_cast<long>(J) + 1) * mu.constant;
  return Enclosure::around(sum, err);
}

EValues evaluate_E(const IntPolynomial& P, const RootClassification& cls, int K, int order) {
  if (!cls.expansive) throw HypothesisError("e values need an expansive polynomial");
  if (K < 0) throw Error("K must be non-negative");
  WorkingPrecision guard(cls.working_digits());
  if (order <= 0) {
    Real q = 0;
    for (const auto& r : cls.roots) q = std::max(q, Real(1 / (r.modulus - r.error_bound)));
    const double digits = static_cast<double>(cls.precision + 10);
    const double per_term = -log10(q).convert_to<double>();
    order = static_cast<int>(std::ceil(digits / per_term)) + 12 * cls.d() + 16;
  }
  check_order(order);
  MuWeights mu = mu_weights(P, cls, static_cast<std::size_t>(order));
  const int flip = -sign_of(P.constant());  // H/|a0| = flip * mu
  auto value = [&](const SeriesQ& s) {
    CodedSequence code;
    code.prefix = to_symbols(s);
    return evaluate_mu_pairing(code, mu).scaled(Real(flip));
  };
  EValues out;
  out.order = order;
  out.e = value(e_series(order));
  for (int k = 0; k <= K; ++k) out.e_k.push_back(value(e_k_series(k, order)));
  return out;
}

const char* to_string(Tri t) {
  switch (t) {
    case Tri::no:
      return "false";
    case Tri::yes:
      return "true";
    case Tri::undecided:
      return "undecided";
  }
  return "undecided";
}

ConditionReport check_conditions(const IntPolynomial& P, const RootClassification& cls, const RhoTable& table) {
  WorkingPrecision guard(cls.working_digits());
  ConditionReport rep;
  const Real half(0.5);
  const int k = table.spec.k;

  // Sum of 1/alpha_i = -a_1/a_0 for real roots all > 1.
  {
    ConditionFlag& f = rep.reciprocal_sum;
    bool real_gt_one = cls.expansive;
    for (const auto& r : cls.roots) real_gt_one = real_gt_one && r.value.is_real() && r.value.re > 1;
    const Rational s = P.degree() >= 1 ? Rational(-P[1], P.constant()) : Rational(0);
    f.quantity = {to_real(s), to_real(s)};
    f.margin = half - to_real(s);
    if (!P.monic()) {
      f.value = Tri::no;
      f.note = "P is not monic";
    } else if (!real_gt_one) {
      f.value = Tri::no;
      f.note = "not every root is real and greater than 1";
    } else {
      f.value = s <= Rational(1, 2) ? Tri::yes : Tri::no;
      f.note = "sum of 1/alpha_i = " + to_decimal(s) + " (exact)";
    }
  }

  {
    ConditionFlag& f = rep.mu_chain;
    if (!P.monic() || !cls.expansive) {
      f.value = Tri::no;
      f.note = "needs a monic expansive polynomial";
      f.margin = -1;
    } else {
      MuWeights mu = mu_weights(P, cls, 200);
      f.quantity = Enclosure::around(mu.mu[0], mu.error[0]);
      Real worst = 1;
      for (std::size_t j = 0; j + 1 < mu.mu.size() && mu.mu[j] != 0; ++j)
        worst = std::min(worst, Real(half - mu.mu[j + 1] / mu.mu[j]));
      f.margin = worst;
      const std::string side = mu.negative_case ? "negative chain" : "positive chain";
      if (!mu.window_monotone) {
        f.value = mu.undecided ? Tri::undecided : Tri::no;
        f.note = side + " breaks at j = " + std::to_string(*mu.failing_j);
      } else if (rep.reciprocal_sum.value == Tri::yes) {
        f.value = Tri::yes;
        f.note = side + " holds for j <= 200; the reciprocal-sum bound covers all j";
      } else {
        f.value = Tri::undecided;
        f.note = side + " holds for j <= 200; no bound covers larger j";
      }
    }
  }

  const Real beta = cls.beta;
  const Enclosure beta_enc = Enclosure::around(beta, beta_error(cls, beta));
  auto check_weighted = [&](ConditionFlag& f, const Enclosure& b, const Enclosure& sum, const std::string& what) {
    std::optional<Integer> c = ceil_half_minus_one(b);
    if (!c) {
      f.value = Tri::undecided;
      f.note = "ceil((" + what + " - 1)/2) is not decided by the root enclosures";
      f.margin = 0;
      return;
    }
    const Real cr = to_real(*c);
    f.quantity = {Real(cr * sum.lo), Real(cr * sum.hi)};
    f.margin = half - f.quantity.hi;
    f.value = compare_below(f.quantity, half, true);
    f.note = "ceil((" + what + " - 1)/2) = " + to_decimal(*c);
  };

  check_weighted(rep.weighted_sum, beta_enc, table.abs_sum, "beta");

  if (is_infinite(cls.beta2)) {
    rep.weighted_sum_tilde.value = Tri::no;
    rep.weighted_sum_tilde.margin = -infinity();
    rep.weighted_sum_tilde.quantity = {infinity(), infinity()};
    rep.weighted_sum_tilde.note = "beta2 is infinite (no non-expanding root)";
  } else {
    const Real bt = cls.beta_tilde;
    check_weighted(rep.weighted_sum_tilde, Enclosure::around(bt, beta_error(cls, bt)), table.abs_sum, "beta~");
  }

  {
    ConditionFlag& f = rep.residue_bound;
    if (k != 0) {
      f.value = Tri::no;
      f.margin = -1;
      f.note = "requires simple roots (k = 0)";
    } else {
      Real total = 0;
      Real rel = 0;
      for (std::size_t j = 0; j < cls.roots.size(); ++j) {
        const auto& r = cls.roots[j];
        Real den = abs(Real(r.modulus - 1));
        Real sep = den;
        for (std::size_t i = 0; i < cls.roots.size(); ++i) {
          if (i == j) continue;
          Real dist = abs(r.value - cls.roots[i].value);
          den *= dist;
          sep = std::min(sep, dist);
        }
        total += 1 / (den * to_real(P.leading()));
        rel = std::max(rel, Real(4 * cls.max_error() * cls.d() / sep));
      }
      Enclosure sum = Enclosure::around(total, Real(total * (rel + unit_roundoff() * 64)));
      check_weighted(f, beta_enc, sum, "beta");
    }
  }

  if (P.monic() && cls.hyperbolic) {
    rep.applicable_theorems.push_back("0 is isolated and 1/2 is an accumulation point");
    const bool unique = (cls.beta == cls.beta1 && cls.beta1_unique) || (cls.beta == cls.beta2 && cls.beta2_unique);
    if (k == 0 && unique && rep.weighted_sum.value == Tri::yes)
      rep.applicable_theorems.push_back("proper intervals accumulating at 1/2");
    if (k == 0 && cls.beta1_unique && cls.beta2_unique && rep.weighted_sum_tilde.value == Tri::yes)
      rep.applicable_theorems.push_back("an interval [v, 1/2] in the spectrum");
  }
  if (k == 0 && rep.mu_chain.value == Tri::yes)
    rep.applicable_theorems.push_back("discrete spectrum below e (monotone mu chain)");
  if (k == 0 && rep.reciprocal_sum.value == Tri::yes)
    rep.applicable_theorems.push_back("discrete spectrum below e (sum of 1/alpha_i <= 1/2)");
  return rep;
}

SubsumCheck subsum_interval_check(const RhoTable& table, const RootClassification& cls, long A, SubsumSide side,
                                  long start) {
  WorkingPrecision guard(table.precision + kGuardDigits);
  SubsumCheck out;
  const bool left = side == SubsumSide::left;
  const long W = left ? -table.n_min : table.n_max;
  const bool empty = left ? table.expanding.empty() : table.non_expanding.empty();
  if (empty) {
    out.note = "rho vanishes on this side";
    out.ratio_limit = 0;
    return out;
  }
  if (start < 0 || start >= W) throw Error("subsum start outside the rho table window");
  auto r = [&](long n) { return abs(table.at(left ? -n : n)); };
  auto e = [&](long n) { return table.error_at(left ? -n : n); };

  const Real q = left ? Real(1 / cls.beta1) : Real(1 / cls.beta2);
  out.ratio_limit = q;
  const bool unique = left ? cls.beta1_unique : cls.beta2_unique;
  out.ratio_hypothesis = unique && A >= 1 && q * (2 * A + 1) > 1;

  // Lower bounds of the tails sum_{m > n} r_m from the window.
  std::vector<Real> tail(static_cast<std::size_t>(W - start + 2), Real(0));
  for (long n = W - 1; n >= start; --n)
    tail[static_cast<std::size_t>(n - start)] =
        tail[static_cast<std::size_t>(n - start + 1)] + std::max(Real(0), Real(r(n + 1) - e(n + 1)));
  const long last = start + (W - start) / 2;
  out.checked_to = last;
  bool window_ok = true;
  for (long n = start; n <= last; ++n) {
    if (r(n) + e(n) > 2 * A * tail[static_cast<std::size_t>(n - start)]) {
      out.first_violation = n;
      window_ok = false;
      break;
    }
  }
  out.holds = window_ok && out.ratio_hypothesis;
  if (!window_ok) out.note = "criterion fails at n = " + std::to_string(*out.first_violation);
  else if (!out.ratio_hypothesis) out.note = "window passes; the ratio limit does not cover the remaining tail";
  else out.note = "window passes; the ratio limit covers n > " + std::to_string(last);
  return out;
}

PeriodicLimsup periodic_limsup(const RhoTable& table, const std::vector<Integer>& period) {
  if (table.spec.k != 0) throw HypothesisError("periodic evaluation is implemented for k = 0");
  const long L = static_cast<long>(period.size());
  if (L == 0) throw Error("period must be non-empty");
  WorkingPrecision guard(table.precision + kGuardDigits);
  // S(c) = sum_{j = c mod L} rho_j in closed form.
  std::vector<Real> S(static_cast<std::size_t>(L));
  Real scale = 0;
  for (long c = 0; c < L; ++c) {
    Complex acc;
    const long j0 = c == 0 ? 0 : c - L;
    const long j1 = c == 0 ? L : c;
    for (const auto& r : table.expanding) {
      Complex t = r.c[0] * pow(r.alpha, j0) / (Complex(Real(1)) - pow(r.alpha, -L));
      scale += abs(t);
      acc += t;
    }
    for (const auto& r : table.non_expanding) {
      Complex t = r.c[0] * pow(r.alpha, j1) / (Complex(Real(1)) - pow(r.alpha, L));
      scale += abs(t);
      acc -= t;
    }
    S[static_cast<std::size_t>(c)] = acc.re;
  }
  Real wsum = 0;
  for (const auto& w : period) wsum += abs(to_real(w));
  const Real err = wsum * (Real(2) * table.max_error() + scale * unit_roundoff() * Real(L + 64));
  PeriodicLimsup out;
  Real best_abs = -1, best_norm = -1;
  for (long c = 0; c < L; ++c) {
    Real v = 0;
    for (long rr = 0; rr < L; ++rr) {
      const Integer& w = period[static_cast<std::size_t>(rr)];
      if (w == 0) continue;
      v += to_real(w) * S[static_cast<std::size_t>(((c - rr) % L + L) % L)];
    }
    best_abs = std::max(best_abs, Real(abs(v)));
    const Real norm = abs(Real(v - to_real(round_half_up(v))));
    if (norm > best_norm) {
      best_norm = norm;
      out.argmax = c;
    }
  }
  out.max_abs = Enclosure::around(best_abs, err);
  out.value = Enclosure::around(best_norm, err);
  if (out.value.hi > Real(0.5)) out.value.hi = Real(0.5);
  return out;
}

RealizeResult realize_near_half(const RecurrenceSpec& spec, const RootClassification& cls, const RhoTable& table,
                                long R, long a, long b, unsigned precision) {
  if (R < 0 || a < 0 || b < 0) throw Error("R, a, b must be non-negative");
  XiElement g0 = half_witness(cls);
  Encoding enc = encode(spec, cls, g0, R + spec.D + 1, precision);
  RealizeResult out;
  out.R = R;
  out.a = a;
  out.b = b;
  for (long m = -R; m <= R; ++m) out.period.push_back(enc.s.at(m));
  for (long i = 0; i < a; ++i) out.period.emplace_back(0);
  out.period.emplace_back(1);
  for (long i = 0; i < b; ++i) out.period.emplace_back(0);
  out.limsup = periodic_limsup(table, out.period);
  return out;
}

namespace {

bool separated(const EValues& ev) {
  for (std::size_t k = 0; k < ev.e_k.size(); ++k) {
    if (!ev.e_k[k].disjoint_below(ev.e)) return false;
    if (k > 0 && !ev.e_k[k - 1].disjoint_below(ev.e_k[k])) return false;
  }
  return true;
}

}  // namespace

SpectrumReport discrete_spectrum(const IntPolynomial& P, int K, unsigned precision) {
  if (!P.monic()) throw HypothesisError("discrete spectrum needs a monic polynomial");
  RootClassification cls = analyze_roots(P, precision);
  if (!cls.expansive) throw HypothesisError("discrete spectrum needs an expansive polynomial (all |alpha_i| > 1)");
  RecurrenceSpec spec = power_to_f(P, 0);
  RhoTable table = build_rho_table(spec, cls, -200, 0);
  SpectrumReport rep;
  rep.conditions = check_conditions(P, cls, table);
  rep.applicable_theorems = rep.conditions.applicable_theorems;
  const Tri chain = rep.conditions.mu_chain.value;
  if (chain == Tri::no)
    throw HypothesisError("monotone mu chain fails: " + rep.conditions.mu_chain.note);
  if (chain == Tri::undecided)
    throw UndecidedError("monotone mu chain not certified: " + rep.conditions.mu_chain.note);

  // e - e_k shrinks doubly exponentially in k; raise the digits until the enclosures separate.
  const unsigned cap = std::max(4 * precision, kMaxSeparationDigits);
  EValues ev = evaluate_E(P, cls, K);
  while (!separated(ev)) {
    if (cls.precision >= cap)
      throw UndecidedError("e_k enclosures do not separate at " + std::to_string(cls.precision) + " digits");
    cls = ensure_precision(P, cls, std::min(cap, 2 * cls.precision));
    ev = evaluate_E(P, cls, K);
  }
  rep.precision = cls.precision;
  rep.e = ev.e;
  rep.e_k = ev.e_k;
  rep.order = ev.order;
  WorkingPrecision guard(cls.working_digits());
  MuWeights mu = mu_weights(P, cls, static_cast<std::size_t>(ev.order));
  for (std::size_t j = 0; j < std::min<std::size_t>(mu.mu.size(), 32); ++j) rep.mu.push_back(mu.mu[j]);
  const Enclosure omega = evaluate_mu_pairing(phi_omega(static_cast<std::size_t>(ev.order) + 1), mu).abs();
  rep.coding_defect_e = abs(Real(omega.mid() - rep.e.mid()));
  for (int k = 0; k <= K; ++k) {
    const Enclosure c = evaluate_mu_pairing(phi_for_e_k(k), mu).abs();
    rep.coding_defect_e_k.push_back(abs(Real(c.mid() - rep.e_k[static_cast<std::size_t>(k)].mid())));
  }
  return rep;
}

}  // namespace mlspec
