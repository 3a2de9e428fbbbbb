#include "mlspec/intertwine.hpp"

#include "mlspec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace mlspec {

namespace {

Real log10_max_modulus(const RootClassification& cls, bool expanding_only) {
  Real top = 1;
  const std::size_t end = expanding_only ? static_cast<std::size_t>(cls.p) : cls.roots.size();
  for (std::size_t i = 0; i < end; ++i) top = std::max(top, cls.roots[i].modulus);
  return log10(top);
}

long ceil_long(const Real& x) { return ceil(x).convert_to<long>(); }

Real coefficient_mass(const XiElement& g) {
  Real total = 0;
  for (const auto& poly : g.g)
    for (const auto& c : poly) total += abs(c);
  return total;
}

Complex eval_weight(const std::vector<Complex>& poly, long n) {
  Complex acc;
  const Real nn(n);
  for (std::size_t l = poly.size(); l-- > 0;) acc = acc * nn + poly[l];
  return acc;
}

Real eval_weight_abs(const std::vector<Complex>& poly, long n) {
  Real acc = 0;
  const Real nn(n < 0 ? -n : n);
  for (std::size_t l = poly.size(); l-- > 0;) acc = acc * nn + abs(poly[l]);
  return acc;
}

Real distance_to_integer(const Real& x) {
  Real f = x - floor(x);
  return std::min(f, Real(1 - f));
}

// Rational root attached to each nonzero weight, when every weighted root is
// rational and the weights are exact; then x_n is an exact rational.
std::optional<std::vector<std::optional<Rational>>> rational_support(const IntPolynomial& P,
                                                                     const RootClassification& cls,
                                                                     const XiElement& g) {
  if (!g.exact) return std::nullopt;
  std::optional<std::vector<Rational>> rats;
  std::vector<std::optional<Rational>> out(g.p());
  WorkingPrecision guard(cls.working_digits());
  for (std::size_t i = 0; i < g.p(); ++i) {
    const auto& poly = (*g.exact)[i];
    if (std::all_of(poly.begin(), poly.end(), [](const auto& c) { return c.first == 0 && c.second == 0; })) continue;
    if (!cls.roots[i].value.is_real()) return std::nullopt;
    if (!rats) {
      rats = rational_roots(P);
      if (!rats) return std::nullopt;
    }
    for (const auto& r : *rats)
      if (abs(to_real(r) - cls.roots[i].value.re) <= cls.roots[i].error_bound) out[i] = r;
    if (!out[i]) return std::nullopt;
  }
  return out;
}

Rational exact_orbit_value(const XiElement& g, const std::vector<std::optional<Rational>>& roots, long n) {
  Rational total = 0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (!roots[i]) continue;
    Rational w = 0;
    for (std::size_t l = (*g.exact)[i].size(); l-- > 0;) w = w * n + (*g.exact)[i][l].first;
    Rational power = 1;
    const Rational base = n >= 0 ? *roots[i] : Rational(1 / *roots[i]);
    for (long e = 0; e < (n >= 0 ? n : -n); ++e) power *= base;
    total += w * power;
  }
  return total;
}

std::vector<Integer> parse_integers(std::string_view text) {
  std::vector<Integer> out;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    try {
      out.emplace_back(tok);
    } catch (const std::exception&) {
      throw ParseError("not an integer symbol: '" + tok + "'");
    }
  }
  return out;
}

}  // namespace

XiElement XiElement::zero(std::size_t p, int k) {
  XiElement e;
  e.k = k;
  e.g.assign(p, std::vector<Complex>(static_cast<std::size_t>(k + 1)));
  e.exact = std::vector<std::vector<std::pair<Rational, Rational>>>(
      p, std::vector<std::pair<Rational, Rational>>(static_cast<std::size_t>(k + 1), {Rational(0), Rational(0)}));
  return e;
}

XiElement XiElement::from_rationals(const RootClassification& cls, int k,
                                   const std::vector<std::vector<std::pair<Rational, Rational>>>& coeffs) {
  const auto p = static_cast<std::size_t>(cls.p);
  if (coeffs.size() != p) throw Error("XiElement needs one weight per expanding root");
  auto exact = coeffs;
  for (auto& poly : exact) {
    if (poly.size() > static_cast<std::size_t>(k + 1)) throw Error("weight degree exceeds k");
    poly.resize(static_cast<std::size_t>(k + 1), {Rational(0), Rational(0)});
  }
  const auto r1 = static_cast<std::size_t>(cls.r1);
  const auto r2 = static_cast<std::size_t>(cls.r2);
  for (std::size_t i = 0; i < r1; ++i)
    for (auto& c : exact[i]) c.second = 0;
  for (std::size_t i = 0; i < r2; ++i)
    for (std::size_t l = 0; l <= static_cast<std::size_t>(k); ++l) {
      const auto& up = exact[r1 + i][l];
      exact[r1 + r2 + i][l] = {up.first, Rational(-up.second)};
    }
  XiElement e;
  e.k = k;
  e.exact = std::move(exact);
  e.refresh();
  return e;
}

void XiElement::refresh() {
  if (!exact) return;
  g.assign(exact->size(), {});
  for (std::size_t i = 0; i < exact->size(); ++i)
    for (const auto& [re, im] : (*exact)[i]) g[i].emplace_back(to_real(re), to_real(im));
}

std::optional<Rational> XiElement::x0_exact() const {
  if (!exact) return std::nullopt;
  Rational total = 0;
  for (const auto& poly : *exact) total += poly.front().first;
  return total;
}

bool XiElement::in_xi(const RootClassification& cls, const Real& tol) const {
  if (g.size() != static_cast<std::size_t>(cls.p)) return false;
  for (const auto& poly : g)
    if (poly.size() > static_cast<std::size_t>(k + 1)) return false;
  for (int i = 0; i < cls.r1; ++i)
    for (const auto& c : g[static_cast<std::size_t>(i)])
      if (abs(c.im) > tol) return false;
  for (int i = 0; i < cls.r2; ++i) {
    const auto& a = g[static_cast<std::size_t>(cls.r1 + i)];
    const auto& b = g[static_cast<std::size_t>(cls.r1 + cls.r2 + i)];
    if (a.size() != b.size()) return false;
    for (std::size_t l = 0; l < a.size(); ++l)
      if (abs(a[l] - conj(b[l])) > tol) return false;
  }
  return true;
}

XiElement random_xi(const RootClassification& cls, int k, std::uint64_t seed, double magnitude) {
  std::mt19937_64 rng(seed);
  // 53-bit dyadic numerator in [-2^52, 2^52], scaled to [-magnitude, magnitude].
  auto draw = [&]() {
    const auto raw = static_cast<long long>(rng() >> 11U) - (1LL << 52);
    return Rational(Integer(raw), Integer(1) << 52) * Rational(std::llround(magnitude * 1024)) / 1024;
  };
  std::vector<std::vector<std::pair<Rational, Rational>>> coeffs(static_cast<std::size_t>(cls.p));
  for (auto& poly : coeffs)
    for (int l = 0; l <= k; ++l) {
      Rational re = draw();
      Rational im = draw();
      poly.emplace_back(re, im);
    }
  return XiElement::from_rationals(cls, k, coeffs);
}

XiElement half_witness(const RootClassification& cls) {
  if (cls.p == 0) throw HypothesisError("no expanding root");
  std::vector<std::vector<std::pair<Rational, Rational>>> coeffs(
      static_cast<std::size_t>(cls.p), {{Rational(0), Rational(0)}});
  if (cls.r1 > 0) {
    coeffs[0][0] = {Rational(-1, 2), Rational(0)};
  } else {
    coeffs[0][0] = {Rational(-1, 4), Rational(0)};
  }
  return XiElement::from_rationals(cls, 0, coeffs);
}

OrbitValues orbit_values(const IntPolynomial& P, const RootClassification& cls, XiElement g, long n_lo, long n_hi,
                         unsigned precision) {
  if (g.p() != static_cast<std::size_t>(cls.p)) throw Error("orbit: weight count differs from p");
  if (n_lo > n_hi) throw Error("orbit: empty range");
  unsigned digits = precision;
  {
    WorkingPrecision guard(cls.working_digits());
    long extra = n_hi > 0 ? ceil_long(Real(n_hi) * log10_max_modulus(cls, true)) : 0;
    extra += ceil_long(log10(1 + coefficient_mass(g))) + 5;
    digits += static_cast<unsigned>(std::max(0L, extra));
  }
  RootClassification fine = ensure_precision(P, cls, digits);
  WorkingPrecision guard(fine.working_digits());
  if (g.exact) {
    g.refresh();
  } else {
    for (auto& poly : g.g)
      for (auto& c : poly) c = Complex(Real(c.re), Real(c.im));
  }
  OrbitValues out;
  out.n_lo = n_lo;
  out.n_hi = n_hi;
  out.digits = fine.working_digits();
  const Real u = unit_roundoff();
  for (long n = n_lo; n <= n_hi; ++n) {
    Complex x;
    Real err = 0;
    const long an = n < 0 ? -n : n;
    for (std::size_t i = 0; i < g.p(); ++i) {
      const auto& root = fine.roots[i];
      Complex term = eval_weight(g.g[i], n) * pow(root.value, n);
      Real mag = eval_weight_abs(g.g[i], n) * pow(root.modulus, Real(n));
      err += mag * (u * Real(an + 16) + Real(2 * an) * root.error_bound / root.modulus);
      x += term;
    }
    out.x.push_back(x.re);
    out.error.push_back(err);
  }
  return out;
}

OrbitSample orbit_sample(const RecurrenceSpec& spec, const RootClassification& cls, const XiElement& g, long n_lo,
                         long n_hi, unsigned precision) {
  if (n_hi - n_lo < spec.D) throw Error("orbit window shorter than D");
  unsigned attempt_precision = precision;
  for (int attempt = 0; attempt < 3; ++attempt, attempt_precision *= 2) {
    OrbitValues vals = orbit_values(spec.base, cls, g, n_lo, n_hi, attempt_precision);
    WorkingPrecision guard(vals.digits);
    OrbitSample out;
    out.n_lo = n_lo;
    out.n_hi = n_hi;
    out.digits = vals.digits;
    out.rounding_margin = infinity();
    std::optional<long> ambiguous;
    const std::optional<Rational> x0 = g.x0_exact();
    std::optional<std::vector<std::optional<Rational>>> rational = rational_support(spec.base, cls, g);
    for (long n = n_lo; n <= n_hi; ++n) {
      const auto idx = static_cast<std::size_t>(n - n_lo);
      const Real& x = vals.x[idx];
      Integer un = round_half_up(x);
      Real eps = x - to_real(un);
      Real margin = std::min(Real(eps + Real(0.5)), Real(Real(0.5) - eps));
      if (margin <= vals.error[idx]) {
        std::optional<Rational> q;
        if (n == 0 && x0) q = x0;
        else if (rational) q = exact_orbit_value(g, *rational, n);
        if (!q) {
          ambiguous = n;
          break;
        }
        // Exact value: rounding follows eps in [-1/2, 1/2).
        Rational shifted = *q + Rational(1, 2);
        un = numerator(shifted) / denominator(shifted);
        if (un * denominator(shifted) > numerator(shifted)) un -= 1;
        out.x.push_back(to_real(*q));
        out.u.push_back(un);
        out.eps.push_back(to_real(Rational(*q - Rational(un))));
        out.error.push_back(Real(0));
        continue;
      }
      out.rounding_margin = std::min(out.rounding_margin, margin);
      out.x.push_back(x);
      out.u.push_back(un);
      out.eps.push_back(eps);
      out.error.push_back(vals.error[idx]);
    }
    if (ambiguous) {
      if (attempt == 2)
        throw PrecisionError("half-integer ambiguity: x_" + std::to_string(*ambiguous) +
                             " cannot be separated from Z + 1/2");
      continue;
    }
    const auto D = static_cast<std::size_t>(spec.D);
    const Integer sum_abs = spec.abs_coefficient_sum();
    out.recurrence_defect = 0;
    for (std::size_t m = 0; m + D < out.x.size(); ++m) {
      Integer s = 0;
      Real xs = 0;
      Real es = 0;
      Real scale = 0;
      for (std::size_t j = 0; j <= D; ++j) {
        const Real a = to_real(spec.A[j]);
        s += spec.A[j] * out.u[m + j];
        xs += a * out.x[m + j];
        es += a * out.eps[m + j];
        scale += abs(a) * out.error[m + j];
      }
      if (2 * abs(s) > sum_abs) throw Error("symbol exceeds the bound B");
      if (abs(to_real(s) + es) > 4 * scale + unit_roundoff() * Real(1000))
        throw PrecisionError("symbol s_" + std::to_string(n_lo + static_cast<long>(m)) +
                             " is not certified to be an integer");
      out.recurrence_defect = std::max(out.recurrence_defect, Real(abs(xs)));
      out.s.push_back(s);
    }
    return out;
  }
  throw PrecisionError("orbit sampling failed");
}

Integer OmegaSequence::at(long m) const {
  if (m < start) return 0;
  if (m < head_end()) return head[static_cast<std::size_t>(m - start)];
  switch (tail) {
    case TailKind::zero:
      return 0;
    case TailKind::periodic:
      return period[static_cast<std::size_t>((m - head_end()) % static_cast<long>(period.size()))];
    case TailKind::bounded:
      break;
  }
  throw Error("symbol " + std::to_string(m) + " lies in the bounded tail");
}

Integer OmegaSequence::max_abs() const {
  Integer m = tail == TailKind::bounded ? bound : Integer(0);
  for (const auto& v : head) m = std::max(m, Integer(abs(v)));
  for (const auto& v : period) m = std::max(m, Integer(abs(v)));
  return m;
}

void OmegaSequence::normalize() {
  std::size_t lead = 0;
  while (lead < head.size() && head[lead] == 0) ++lead;
  if (lead == head.size() && tail == TailKind::zero) {
    head.clear();
    start = 0;
    return;
  }
  head.erase(head.begin(), head.begin() + static_cast<std::ptrdiff_t>(lead));
  start += static_cast<long>(lead);
  if (tail == TailKind::zero)
    while (!head.empty() && head.back() == 0) head.pop_back();
  if (tail == TailKind::periodic && std::all_of(period.begin(), period.end(), [](const Integer& v) { return v == 0; })) {
    tail = TailKind::zero;
    period.clear();
    while (!head.empty() && head.back() == 0) head.pop_back();
  }
}

std::string OmegaSequence::to_string() const {
  const long lo = std::min(start, 0L);
  const long hi = std::max(head_end(), 1L);
  std::ostringstream out;
  out << "0^inf [";
  for (long m = lo; m < hi; ++m) {
    if (m == 0) out << (m == lo ? "| " : " | ");
    else if (m != lo) out << ' ';
    out << (m < head_end() ? at(m) : Integer(0));
  }
  out << ']';
  if (tail == TailKind::periodic) {
    out << " (period:";
    for (const auto& v : period) out << ' ' << v;
    out << ')';
  } else if (tail == TailKind::bounded) {
    out << " (bounded: " << bound << ')';
  }
  return out.str();
}

OmegaSequence OmegaSequence::parse(std::string_view text) {
  std::string s(text);
  const auto open = s.find('[');
  const auto close = s.find(']');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw ParseError("sequence literal needs '[ ... | ... ]'");
  const std::string prefix = s.substr(0, open);
  if (prefix.find_first_not_of(" \t") != std::string::npos && prefix.find("0^inf") == std::string::npos)
    throw ParseError("sequence literal must start with '0^inf'");
  const std::string body = s.substr(open + 1, close - open - 1);
  const auto bar = body.find('|');
  if (bar == std::string::npos) throw ParseError("sequence literal needs '|' before index 0");
  std::vector<Integer> left = parse_integers(std::string_view(body).substr(0, bar));
  std::vector<Integer> right = parse_integers(std::string_view(body).substr(bar + 1));
  OmegaSequence out;
  out.start = -static_cast<long>(left.size());
  out.head = std::move(left);
  out.head.insert(out.head.end(), right.begin(), right.end());
  std::string rest = s.substr(close + 1);
  const auto paren = rest.find('(');
  if (paren != std::string::npos) {
    const auto end = rest.find(')', paren);
    if (end == std::string::npos) throw ParseError("unterminated tail descriptor");
    std::string inner = rest.substr(paren + 1, end - paren - 1);
    const auto colon = inner.find(':');
    if (colon == std::string::npos) throw ParseError("tail descriptor needs 'period:' or 'bounded:'");
    std::string key = inner.substr(0, colon);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t") + 1);
    std::vector<Integer> values = parse_integers(std::string_view(inner).substr(colon + 1));
    if (key == "period") {
      if (values.empty()) throw ParseError("empty period");
      out.tail = TailKind::periodic;
      out.period = std::move(values);
    } else if (key == "bounded") {
      if (values.size() != 1 || values[0] < 0) throw ParseError("bounded tail needs one nonnegative integer");
      out.tail = TailKind::bounded;
      out.bound = values[0];
    } else {
      throw ParseError("unknown tail descriptor '" + key + "'");
    }
  } else if (rest.find_first_not_of(" \t\r\n") != std::string::npos) {
    throw ParseError("unexpected text after ']'");
  }
  return out;
}

OmegaSequence OmegaSequence::delta(long m, const Integer& value) {
  OmegaSequence out;
  out.start = m;
  out.head = {value};
  return out;
}

Encoding encode(const RecurrenceSpec& spec, const RootClassification& cls, const XiElement& g, long n_hi,
                unsigned precision) {
  if (cls.p == 0) throw HypothesisError("no expanding root");
  long n_left = 0;
  {
    WorkingPrecision guard(cls.working_digits());
    const Real G = coefficient_mass(g);
    const Real inv = 1 / cls.beta1;
    // |x_n| <= G (1+|n|)^k beta1^n for n <= 0; find where that is below 1/4 and decreasing.
    for (long m = 0;; ++m) {
      Real value = G * pow(Real(1 + m), Real(spec.k)) * pow(inv, Real(m));
      Real ratio = pow(Real(m + 2) / Real(m + 1), Real(spec.k)) * inv;
      if (value < Real(0.25) && ratio < 1) {
        n_left = -m;
        break;
      }
      if (m > 1000000) throw PrecisionError("left support of the orbit not found");
    }
  }
  Encoding out;
  const long lo = n_left - spec.D;
  out.orbit = orbit_sample(spec, cls, g, lo, std::max(n_hi, lo + spec.D), precision);
  out.support_start = lo;
  out.s.start = lo;
  out.s.head = out.orbit.s;
  out.s.tail = TailKind::bounded;
  out.s.bound = numerator(spec.B) / denominator(spec.B);
  out.s.normalize();
  return out;
}

Real abs_sum_below(const RhoTable& table, long N) {
  WorkingPrecision guard(table.precision + kGuardDigits);
  if (N < table.n_min) {
    if (table.right_tail.zero) return 0;
    return polygeometric_tail(table.right_tail.constant, table.right_tail.rate, table.right_tail.poly_order, -N - 1);
  }
  Real total = table.right_tail.sum;
  for (long n = table.n_min; n <= std::min(N, table.n_max); ++n) total += abs(table.at(n)) + table.error_at(n);
  if (N > table.n_max) total += table.left_tail.sum;
  return total;
}

EpsilonValue reconstruct_epsilon(const RhoTable& table, const OmegaSequence& s, long m) {
  WorkingPrecision guard(table.precision + kGuardDigits);
  EpsilonValue out;
  out.value = 0;
  out.error_bound = 0;
  for (long i = s.start; i < s.head_end(); ++i) {
    const Integer& t = s.head[static_cast<std::size_t>(i - s.start)];
    if (t == 0) continue;
    RhoPoint r = table.evaluate(m - i);
    const Real tr = to_real(t);
    out.value += r.value * tr;
    out.error_bound += r.error * abs(tr);
  }
  if (s.tail == TailKind::bounded) {
    out.error_bound += to_real(s.bound) * abs_sum_below(table, m - s.head_end());
  } else if (s.tail == TailKind::periodic) {
    const long L = static_cast<long>(s.period.size());
    const Real target = ten_to_minus(static_cast<long>(table.precision + 10));
    for (long r = 0; r < L; ++r) {
      const Integer& w = s.period[static_cast<std::size_t>(r)];
      if (w == 0) continue;
      const Real wr = to_real(w);
      long n = m - s.head_end() - r;
      // Terms with n >= 1 are finitely many.
      for (; n >= 1; n -= L) {
        RhoPoint p = table.evaluate(n);
        out.value += p.value * wr;
        out.error_bound += p.error * abs(wr);
      }
      if (table.spec.k == 0) {
        for (const auto& res : table.expanding) {
          Complex c = res(n) / (Complex(Real(1)) - pow(res.alpha, -L));
          out.value += c.re * wr;
          out.error_bound += abs(c) * abs(wr) * unit_roundoff() * Real((n < 0 ? -n : n) + L + 32);
        }
      } else {
        for (long q = 0;; ++q) {
          const long nn = n - q * L;
          Real remaining = 0;
          for (const auto& res : table.expanding)
            remaining += polygeometric_tail(res.abs_coeff_sum, 1 / abs(res.alpha), table.spec.k, -nn - 1);
          if (remaining * abs(wr) < target) {
            out.error_bound += remaining * abs(wr);
            break;
          }
          RhoPoint p = table.evaluate(nn);
          out.value += p.value * wr;
          out.error_bound += p.error * abs(wr);
        }
      }
    }
  }
  return out;
}

DecodeResult decode_omega0(const RecurrenceSpec& spec, const RootClassification& cls, const RhoTable& table,
                           const OmegaSequence& t, unsigned precision, const Real& tolerance) {
  if (!spec.monic) throw HypothesisError("decoding needs a monic polynomial");
  if (t.tail != TailKind::zero) throw Error("decode_omega0 needs a finitely supported sequence");
  OmegaSequence word = t;
  word.normalize();
  DecodeResult out;
  const long M = word.head.empty() ? 0 : word.start;
  out.window_lo = M - 5;
  out.window_hi = M + 50;
  if (word.head.empty()) {
    out.h = XiElement::zero(static_cast<std::size_t>(cls.p), spec.k);
    out.max_defect = 0;
    out.verified = true;
    return out;
  }
  unsigned digits = precision;
  {
    WorkingPrecision guard(cls.working_digits());
    Real mass = 0;
    for (const auto& v : word.head) mass += abs(to_real(v));
    long extra = ceil_long(Real(out.window_hi - M) * log10_max_modulus(cls, true)) + ceil_long(log10(1 + mass));
    if (word.head_end() > 0) extra += ceil_long(Real(word.head_end()) * log10_max_modulus(cls, true));
    digits += static_cast<unsigned>(std::max(0L, extra)) + 10;
  }
  RootClassification fine = ensure_precision(spec.base, cls, digits);
  WorkingPrecision guard(fine.working_digits());
  std::vector<ResiduePolynomial> res = residue_polynomials(spec, fine);
  const int k = spec.k;
  XiElement h = XiElement::zero(static_cast<std::size_t>(fine.p), k);
  h.exact.reset();
  for (std::size_t j = 0; j < static_cast<std::size_t>(fine.p); ++j) {
    const Complex inv = inverse(fine.roots[j].value);
    // moments[e] = sum_n (-n)^e alpha^(-n) t_n
    std::vector<Complex> moments(static_cast<std::size_t>(k + 1));
    for (long n = word.start; n < word.head_end(); ++n) {
      const Integer& tn = word.head[static_cast<std::size_t>(n - word.start)];
      if (tn == 0) continue;
      Complex base = pow(inv, n) * to_real(tn);
      for (int e = 0; e <= k; ++e) {
        moments[static_cast<std::size_t>(e)] += base;
        base = base * Real(-n);
      }
    }
    for (int i = 0; i <= k; ++i) {
      Complex coeff;
      Real binom = 1;  // binom(l, i), starting at l = i
      for (int l = i; l <= k; ++l) {
        coeff += res[j].c[static_cast<std::size_t>(l)] * moments[static_cast<std::size_t>(l - i)] * binom;
        binom = binom * Real(l + 1) / Real(l + 1 - i);
      }
      h.g[j][static_cast<std::size_t>(i)] = coeff;
    }
  }
  out.h = h;
  OrbitValues xs = orbit_values(spec.base, fine, h, out.window_lo, out.window_hi, precision);
  WorkingPrecision verify_guard(xs.digits);
  out.max_defect = 0;
  for (long m = out.window_lo; m <= out.window_hi; ++m) {
    Real bt = 0;
    for (long n = word.start; n < word.head_end(); ++n) {
      const Integer& tn = word.head[static_cast<std::size_t>(n - word.start)];
      if (tn != 0) bt += table.evaluate(m - n).value * to_real(tn);
    }
    Real defect = distance_to_integer(Real(xs.x[static_cast<std::size_t>(m - out.window_lo)] - bt));
    out.max_defect = std::max(out.max_defect, defect);
  }
  out.verified = out.max_defect <= tolerance;
  return out;
}

MatrixDefects matrix_identity_window_defect(const RhoTable& table, long lo, long hi) {
  const long D = table.spec.D;
  if (!table.covers(lo - hi) || !table.covers(hi - lo + D))
    throw Error("matrix window needs rho on [" + std::to_string(lo - hi) + ", " + std::to_string(hi - lo + D) + "]");
  WorkingPrecision guard(table.precision + kGuardDigits);
  std::vector<Real> A;
  for (const auto& a : table.spec.A) A.push_back(to_real(a));
  MatrixDefects out{Real(0), Real(0)};
  for (long m = lo; m <= hi; ++m)
    for (long n = lo; n <= hi; ++n) {
      // (A_f B_f)_{m,n} = sum_j a_{m,j} b_{j,n}, a_{m,j} = -A_{j-m} on 0 <= j-m <= D.
      Real ab = m == n ? Real(-1) : Real(0);
      for (long j = m; j <= m + D; ++j) ab -= A[static_cast<std::size_t>(j - m)] * table.at(j - n);
      // (B_f A_f)_{m,n} = sum_j b_{m,j} a_{j,n}, nonzero for n - D <= j <= n.
      Real ba = m == n ? Real(-1) : Real(0);
      for (long j = n - D; j <= n; ++j) ba -= table.at(m - j) * A[static_cast<std::size_t>(n - j)];
      out.ab = std::max(out.ab, Real(abs(ab)));
      out.ba = std::max(out.ba, Real(abs(ba)));
    }
  return out;
}

VandermondeCheck vandermonde_nonvanishing(const RootClassification& cls, int k) {
  WorkingPrecision guard(cls.working_digits());
  const std::size_t d = cls.roots.size();
  const std::size_t N = (static_cast<std::size_t>(k) + 1) * d;
  std::vector<std::vector<Complex>> W(N, std::vector<Complex>(N));
  Real hadamard = 1;
  Real root_eta = 0;
  for (std::size_t m = 0; m < N; ++m) {
    Real row_norm = 0;
    for (std::size_t l = 0; l < d; ++l) {
      const Complex am = pow(cls.roots[l].value, static_cast<long>(m));
      Real mpow = 1;
      for (std::size_t n = 0; n <= static_cast<std::size_t>(k); ++n) {
        Complex entry = am * mpow;
        row_norm += norm(entry);
        W[m][l * (static_cast<std::size_t>(k) + 1) + n] = entry;
        mpow *= Real(static_cast<long>(m));
      }
    }
    hadamard *= sqrt(row_norm);
  }
  for (const auto& r : cls.roots) root_eta = std::max(root_eta, Real(r.error_bound / r.modulus));
  Complex det(Real(1));
  for (std::size_t c = 0; c < N; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < N; ++r)
      if (abs(W[r][c]) > abs(W[piv][c])) piv = r;
    if (abs(W[piv][c]) == 0) {
      det = Complex();
      break;
    }
    if (piv != c) {
      std::swap(W[piv], W[c]);
      det = -det;
    }
    det *= W[c][c];
    for (std::size_t r = c + 1; r < N; ++r) {
      Complex f = W[r][c] / W[c][c];
      for (std::size_t j = c; j < N; ++j) W[r][j] -= f * W[c][j];
    }
  }
  VandermondeCheck out;
  out.det_modulus = abs(det);
  const Real n3 = Real(static_cast<long>(N * N * N));
  out.error_bound = hadamard * (unit_roundoff() * n3 + root_eta * Real(static_cast<long>(N * N)));
  out.ok = out.det_modulus > out.error_bound;
  return out;
}

}  // namespace mlspec
