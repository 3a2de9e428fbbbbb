#include "mlspec/poly.hpp"

#include "mlspec/errors.hpp"
#include "mlspec/rational_poly.hpp"
#include "mlspec/roots.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace mlspec {

IntPolynomial::IntPolynomial(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  if (!coeffs_.empty() && coeffs_.back() < 0)
    for (auto& c : coeffs_) c = -c;
}

Rational IntPolynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + Rational(*it);
  return acc;
}

Complex IntPolynomial::operator()(const Complex& z) const { return eval_with_derivative(z).first; }

std::pair<Complex, Complex> IntPolynomial::eval_with_derivative(const Complex& z) const {
  Complex p;
  Complex dp;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + Complex(to_real(*it));
  }
  return {p, dp};
}

IntPolynomial IntPolynomial::derivative() const {
  std::vector<Integer> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<long>(i));
  IntPolynomial out;
  out.coeffs_ = std::move(d);  // keep sign as-is
  return out;
}

Integer IntPolynomial::content() const {
  Integer g = 0;
  for (const auto& c : coeffs_) g = gcd(g, c);
  return g;
}

std::string IntPolynomial::to_string() const {
  std::string out;
  for (int e = degree(); e >= 0; --e) {
    const Integer& c = coeffs_[static_cast<std::size_t>(e)];
    if (c == 0) continue;
    const Integer mag = abs(c);
    if (c < 0)
      out += "-";
    else if (!out.empty())
      out += "+";
    if (e == 0 || mag != 1) out += mag.str();
    if (e >= 1) out += "X";
    if (e >= 2) out += "^" + std::to_string(e);
  }
  return out.empty() ? "0" : out;
}

std::vector<Integer> multiply(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Integer> r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

Integer RecurrenceSpec::abs_coefficient_sum() const {
  Integer s = 0;
  for (const auto& a : A) s += abs(a);
  return s;
}

namespace {

Integer parse_integer(std::string_view digits) {
  if (digits.empty()) throw ParseError("expected an integer");
  for (char ch : digits)
    if (std::isdigit(static_cast<unsigned char>(ch)) == 0)
      throw ParseError("invalid integer '" + std::string(digits) + "'");
  return Integer(std::string(digits));
}

bool is_variable(char ch) { return ch == 'X' || ch == 'x' || ch == 'z' || ch == 'Z'; }

std::vector<Integer> parse_coefficient_list(std::string_view text) {
  std::vector<Integer> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(start, end - start);
    bool negative = false;
    if (!item.empty() && (item.front() == '-' || item.front() == '+')) {
      negative = item.front() == '-';
      item.remove_prefix(1);
    }
    Integer v = parse_integer(item);
    out.push_back(negative ? Integer(-v) : v);
    start = end + 1;
  }
  return out;
}

std::vector<Integer> parse_monomials(std::string_view text) {
  std::map<int, Integer> terms;
  std::size_t i = 0;
  const auto n = text.size();
  if (n == 0) throw ParseError("empty polynomial");
  while (i < n) {
    bool negative = false;
    if (text[i] == '+' || text[i] == '-') {
      negative = text[i] == '-';
      ++i;
    } else if (i != 0) {
      throw ParseError("expected '+' or '-' at position " + std::to_string(i));
    }
    std::size_t digits_start = i;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i])) != 0) ++i;
    std::string_view digits = text.substr(digits_start, i - digits_start);
    if (i < n && text[i] == '*') {
      if (digits.empty()) throw ParseError("'*' without a coefficient");
      ++i;
    }
    int exponent = 0;
    if (i < n && is_variable(text[i])) {
      ++i;
      exponent = 1;
      if (i < n && text[i] == '^') {
        ++i;
        std::size_t e_start = i;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i])) != 0) ++i;
        Integer e = parse_integer(text.substr(e_start, i - e_start));
        if (e > 100000) throw ParseError("exponent too large");
        exponent = e.convert_to<int>();
      }
    } else if (digits.empty()) {
      throw ParseError("expected a coefficient or variable at position " + std::to_string(i));
    }
    Integer c = digits.empty() ? Integer(1) : parse_integer(digits);
    if (negative) c = -c;
    terms[exponent] += c;
  }
  const int degree = terms.rbegin()->first;
  std::vector<Integer> out(static_cast<std::size_t>(degree) + 1);
  for (const auto& [e, c] : terms) out[static_cast<std::size_t>(e)] = c;
  return out;
}

}  // namespace

IntPolynomial parse_polynomial(std::string_view text) {
  std::string compact;
  for (char ch : text)
    if (std::isspace(static_cast<unsigned char>(ch)) == 0) compact += ch;
  std::vector<Integer> coeffs = compact.find(',') != std::string::npos || compact.find_first_not_of("+-0123456789") == std::string::npos
                                    ? parse_coefficient_list(compact)
                                    : parse_monomials(compact);
  IntPolynomial P(std::move(coeffs));
  if (P.coeffs().empty()) throw ParseError("zero polynomial");
  if (P.degree() < 1) throw ParseError("constant polynomial: degree must be at least 1");
  if (P.constant() == 0) throw ParseError("a_0 = 0 is not allowed (X divides the polynomial)");
  return P;
}

namespace {

IntPolynomial squarefree_part(const IntPolynomial& P) {
  RatPoly p = RatPoly::from_integers(P.coeffs());
  RatPoly g = gcd(p, p.derivative());
  RatPoly q = divmod(p, g).quotient;
  Integer den = 1;
  for (const auto& c : q.c) den = lcm(den, denominator(c));
  std::vector<Integer> z;
  for (const auto& c : q.c) z.push_back(numerator(c * den));
  IntPolynomial out(std::move(z));
  Integer content = out.content();
  std::vector<Integer> reduced;
  for (const auto& c : out.coeffs()) reduced.push_back(c / content);
  return IntPolynomial(std::move(reduced));
}

std::vector<Integer> positive_divisors(const Integer& n) {
  std::vector<Integer> small;
  std::vector<Integer> large;
  for (Integer i = 1; i * i <= n; ++i) {
    if (n % i == 0) {
      small.push_back(i);
      if (i * i != n) large.push_back(n / i);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

std::optional<std::vector<Rational>> rational_roots(const IntPolynomial& P, const Integer& divisor_limit) {
  const Integer a0 = abs(P.constant());
  const Integer ad = abs(P.leading());
  if (a0 > divisor_limit * divisor_limit || ad > divisor_limit * divisor_limit) return std::nullopt;
  std::vector<Rational> roots;
  for (const auto& num : positive_divisors(a0)) {
    for (const auto& den : positive_divisors(ad)) {
      if (gcd(num, den) != 1) continue;
      for (int sign : {1, -1}) {
        Rational r(Integer(num * sign), den);
        if (P(r) == 0) roots.push_back(r);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

ValidationReport validate_assumptions(const IntPolynomial& P, const RootClassification* root_hint) {
  ValidationReport rep;
  rep.content_ok = P.content() == 1;
  rep.a0_nonzero = P.constant() != 0;
  rep.monic = P.monic();
  if (!rep.content_ok) rep.notes.push_back("content gcd(a_0,...,a_d) = " + P.content().str() + " != 1");
  if (!rep.a0_nonzero) rep.notes.push_back("a_0 = 0");

  RatPoly p = RatPoly::from_integers(P.coeffs());
  rep.squarefree = gcd(p, p.derivative()).degree() == 0;
  if (!rep.squarefree)
    rep.notes.push_back("P has a repeated root (gcd(P, P') is nonconstant); unusable downstream");

  if (root_hint != nullptr) {
    rep.has_expanding_root = root_hint->p > 0;
  } else if (rep.a0_nonzero) {
    const IntPolynomial sf = rep.squarefree ? P : squarefree_part(P);
    const auto roots = find_roots(sf, 30);
    rep.has_expanding_root = std::any_of(roots.begin(), roots.end(), [](const RootRecord& r) {
      return r.modulus - r.error_bound > 1;
    });
  }
  if (!rep.has_expanding_root) rep.notes.push_back("no root of modulus > 1");

  if (rep.a0_nonzero && P.degree() > 1) {
    auto rr = rational_roots(P);
    if (!rr) {
      rep.notes.push_back("rational-root test skipped (coefficients too large); P may be reducible");
    } else {
      for (const auto& r : *rr) {
        rep.notes.push_back("P is reducible over Q: rational root " + r.str());
        if (abs(r) <= 1)
          rep.notes.push_back("factor with root " + r.str() +
                              " has no root of modulus > 1 (assumption checked for P as a whole)");
      }
    }
  }
  return rep;
}

RecurrenceSpec power_to_f(const IntPolynomial& P, int k, int max_k) {
  if (k < 0) throw Error("k must be nonnegative");
  if (k > max_k)
    throw ResourceLimitError("k = " + std::to_string(k) + " exceeds the configured limit " + std::to_string(max_k));
  RecurrenceSpec spec;
  spec.base = P;
  spec.k = k;
  spec.A = P.coeffs();
  for (int i = 0; i < k; ++i) spec.A = multiply(spec.A, P.coeffs());
  spec.D = (k + 1) * P.degree();
  spec.monic = P.monic();
  spec.A_max = 0;
  for (const auto& a : spec.A) spec.A_max = std::max(spec.A_max, Integer(abs(a)));
  spec.B = Rational(spec.abs_coefficient_sum(), 2);
  return spec;
}

int unit_circle_factor_test(const IntPolynomial& P) {
  RatPoly p = RatPoly::from_integers(P.coeffs());
  return gcd(p, p.reciprocal()).degree();
}

namespace {

// Dickson polynomials: z^i + z^-i = T_i(z + 1/z).
std::vector<RatPoly> dickson(int m) {
  std::vector<RatPoly> t;
  t.push_back(RatPoly({Rational(2)}));
  if (m >= 1) t.push_back(RatPoly({Rational(0), Rational(1)}));
  const RatPoly w({Rational(0), Rational(1)});
  for (int i = 2; i <= m; ++i) t.push_back(w * t[static_cast<std::size_t>(i - 1)] - t[static_cast<std::size_t>(i - 2)]);
  return t;
}

}  // namespace

int unit_circle_root_count(const IntPolynomial& P) {
  RatPoly p = RatPoly::from_integers(P.coeffs());
  RatPoly g = gcd(p, p.reciprocal());
  if (g.degree() <= 0) return 0;
  RatPoly dg = g.derivative();
  RatPoly sq = gcd(g, dg);
  if (sq.degree() > 0) g = divmod(g, sq).quotient.monic();

  int count = 0;
  for (const Rational& pm : {Rational(1), Rational(-1)}) {
    if (g(pm) == 0) {
      ++count;
      g = divmod(g, RatPoly({-pm, Rational(1)})).quotient;
    }
  }
  if (g.degree() <= 0) return count;
  if (g.degree() % 2 != 0) throw Error("reciprocal factor of odd degree after removing +-1");
  const int m = g.degree() / 2;
  for (int i = 0; i <= 2 * m; ++i)
    if (g.c[static_cast<std::size_t>(i)] != g.c[static_cast<std::size_t>(2 * m - i)])
      throw Error("reciprocal factor is not palindromic");

  const auto t = dickson(m);
  RatPoly q({g.c[static_cast<std::size_t>(m)]});
  for (int i = 1; i <= m; ++i) q = q + t[static_cast<std::size_t>(i)] * g.c[static_cast<std::size_t>(m + i)];
  return count + 2 * sturm_count(q, Rational(-2), Rational(2));
}

}  // namespace mlspec
