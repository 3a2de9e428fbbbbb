#include "support.hpp"

#include "mlspec/errors.hpp"
#include "mlspec/homsym.hpp"
#include "mlspec/spectrum.hpp"

#include <doctest.h>

#include <functional>

using namespace mlspec;
using namespace mlspec::testing;

namespace {

/// Coefficients of (1-X) prod_{2^m <= N+1} (1-X^(2^m)) by integer convolution.
std::vector<long> signed_product(int N) {
  std::vector<long> q(static_cast<std::size_t>(N + 2), 0);
  q[0] = 1;
  q[1] = -1;
  for (long step = 1; step <= N + 1; step *= 2)
    for (long n = N + 1; n >= step; --n) q[static_cast<std::size_t>(n)] -= q[static_cast<std::size_t>(n - step)];
  return q;
}

/// E(x) from the infinite product, for 0 < x < 1.
Real e_closed(const Real& x) {
  Real prod = 1 - x;
  Real xp = x;
  for (int m = 0; m < 40; ++m) {
    prod *= 1 - xp;
    xp *= xp;
  }
  return (1 - prod) / (2 * x);
}

/// E^(k)(x) from its rational closed form.
Real e_k_closed(int k, const Real& x) {
  Real prod = 1 - x;
  Real xp = x;
  for (int m = 0; m < k; ++m) {
    prod *= 1 - xp;
    xp *= xp;
  }
  return (1 + xp - prod) / (2 * x * (1 + xp));
}

/// |a_0|^{-1} sum_i x_i^(d-1) / prod_{j != i}(x_i - x_j) F(x_i) at x_i = 1/alpha_i.
Real lagrange_value(const std::vector<Real>& alphas, const Real& a0, const std::function<Real(const Real&)>& F) {
  const std::size_t d = alphas.size();
  Real total = 0;
  for (std::size_t i = 0; i < d; ++i) {
    const Real xi = 1 / alphas[i];
    Real w = pow(xi, Real(d - 1));
    for (std::size_t j = 0; j < d; ++j)
      if (j != i) w /= xi - 1 / alphas[j];
    total += w * F(xi);
  }
  return abs(total) / abs(a0);
}

}  // namespace

TEST_CASE("E coefficients against the integer product") {
  const int N = 400;
  SeriesQ e = e_series(N);
  std::vector<long> q = signed_product(N);
  for (int n = 0; n <= N; ++n) CHECK(e.c[static_cast<std::size_t>(n)] == Rational(-q[static_cast<std::size_t>(n + 1)], 2));
  const std::vector<int> head{1, 0, -1, 1, -1, 0, 1};
  for (std::size_t n = 0; n < head.size(); ++n) CHECK(e.c[n] == head[n]);
  for (const auto& c : e.c) CHECK((c == 1 || c == 0 || c == -1));
}

TEST_CASE("E^(k) series times its denominator gives the numerator") {
  const int N = 150;
  for (int k = 0; k <= 6; ++k) {
    SeriesQ s = e_k_series(k, N);
    CHECK(s.c[0] == 1);
    const long step = 1L << k;
    // numerator = 1 + X^(2^k) - (1-X) prod_{m<k}(1-X^(2^m)).
    std::vector<Rational> num(static_cast<std::size_t>(N + 2), Rational(0));
    std::vector<Rational> prod(static_cast<std::size_t>(N + 2), Rational(0));
    prod[0] = 1;
    prod[1] = -1;
    for (long st = 1; st < step; st *= 2)
      for (long n = N + 1; n >= st; --n) prod[static_cast<std::size_t>(n)] -= prod[static_cast<std::size_t>(n - st)];
    num[0] = 1;
    if (step <= N + 1) num[static_cast<std::size_t>(step)] += 1;
    for (int n = 0; n <= N + 1; ++n) num[static_cast<std::size_t>(n)] -= prod[static_cast<std::size_t>(n)];
    // 2X (1 + X^(2^k)) times the series.
    for (int n = 1; n <= N + 1; ++n) {
      Rational lhs = 2 * s.c[static_cast<std::size_t>(n - 1)];
      if (n - 1 - step >= 0) lhs += 2 * s.c[static_cast<std::size_t>(n - 1 - step)];
      CHECK(lhs == num[static_cast<std::size_t>(n)]);
    }
    CHECK(num[0] == 0);
  }
  SeriesQ e0 = e_k_series(0, 4);
  for (int n = 0; n <= 4; ++n) CHECK(e0.c[static_cast<std::size_t>(n)] == (n % 2 ? -1 : 1));
  CHECK_THROWS_AS(e_series(kMaxSeriesOrder + 1), ResourceLimitError);
}

TEST_CASE("substitution words") {
  CHECK(substitution_word(0) == "1");
  CHECK(substitution_word(1) == "100");
  CHECK(substitution_word(2) == "10011");
  CHECK(omega_prefix(11) == "10011100100");
  for (int n = 1; n <= 10; ++n) {
    const std::string a = substitution_word(n);
    CHECK(a.rfind(substitution_word(n - 1), 0) == 0);
    CHECK(omega_prefix(a.size()) == a);
  }
}

TEST_CASE("Phi codings") {
  CHECK(phi_omega(13).to_string(13) == "101̄11̄0101̄011̄1");
  CodedSequence a0 = phi_periodic("0");
  for (std::size_t j = 0; j < 20; ++j) CHECK(a0.at(j) == (j % 2 ? -1 : 1));
  CodedSequence p = phi_prefix("10");
  CHECK(p.to_string(p.prefix.size()) == "101̄");
  SUBCASE("series coefficients equal the coded symbols") {
    SeriesQ e = e_series(300);
    CodedSequence w = phi_omega(301);
    for (int n = 0; n <= 300; ++n) CHECK(e.c[static_cast<std::size_t>(n)] == w.at(static_cast<std::size_t>(n)));
    for (int k = 0; k <= 5; ++k) {
      SeriesQ s = e_k_series(k, 300);
      CodedSequence code = phi_for_e_k(k);
      for (int n = 0; n <= 300; ++n) CHECK(s.c[static_cast<std::size_t>(n)] == code.at(static_cast<std::size_t>(n)));
    }
  }
}

TEST_CASE("mu weights") {
  SUBCASE("X^2-20X+82 against Vieta") {
    Fixture f = load(kQuadratic);
    MuWeights mu = mu_weights(f.P, f.cls, 50);
    WorkingPrecision guard(f.cls.working_digits());
    const Rational s1(20, 82), e2(1, 82);
    CHECK(abs(mu.mu[0] - to_real(Rational(-1, 82))) <= mu.error[0] + ten_to_minus(70));
    CHECK(abs(mu.mu[1] - to_real(-s1 / 82)) <= mu.error[1] + ten_to_minus(70));
    CHECK(abs(mu.mu[2] - to_real(-(s1 * s1 - e2) / 82)) <= mu.error[2] + ten_to_minus(70));
    CHECK(mu.negative_case);
    CHECK(mu.window_monotone);
    CHECK_FALSE(mu.failing_j);
    for (std::size_t j = 0; j + 1 < mu.mu.size(); ++j) CHECK(abs(mu.mu[j + 1]) <= abs(mu.mu[j]) / 2);
  }
  SUBCASE("X-2 is geometric with ratio 1/2") {
    Fixture f = load("X-2");
    MuWeights mu = mu_weights(f.P, f.cls, 30);
    WorkingPrecision guard(f.cls.working_digits());
    for (std::size_t j = 0; j <= 30; ++j) CHECK(mu.mu[j] == to_real(Rational(1, Integer(1) << (j + 1))));
    CHECK_FALSE(mu.negative_case);
    CHECK(mu.window_monotone);
  }
  SUBCASE("X^2-5X+5 fails the chain") {
    Fixture f = load("X^2-5X+5");
    MuWeights mu = mu_weights(f.P, f.cls, 30);
    CHECK_FALSE(mu.window_monotone);
    REQUIRE(mu.failing_j);
    CHECK(*mu.failing_j == 0);
  }
  SUBCASE("tail bound dominates the weights") {
    Fixture f = load(kQuadratic);
    MuWeights mu = mu_weights(f.P, f.cls, 120);
    MuWeights head = mu_weights(f.P, f.cls, 40);
    WorkingPrecision guard(f.cls.working_digits());
    Real rest = 0;
    for (std::size_t j = 41; j <= 120; ++j) rest += abs(mu.mu[j]);
    CHECK(rest <= head.tail_sum(41));
  }
}

TEST_CASE("mu pairings") {
  Fixture f = load("X-2");
  MuWeights mu = mu_weights(f.P, f.cls, 200);
  WorkingPrecision guard(f.cls.working_digits());
  Enclosure one = evaluate_mu_pairing(CodedSequence{{1}, {0}}, mu);
  CHECK(one.contains(Real(0.5)));
  Enclosure alt = evaluate_mu_pairing(phi_periodic("0"), mu);
  CHECK(alt.contains(to_real(Rational(1, 3))));
  CHECK(alt.width() < ten_to_minus(50));
}

TEST_CASE("X-2: e and e_k equal the closed forms at 1/2") {
  Fixture f = load("X-2");
  EValues v = evaluate_E(f.P, f.cls, 6);
  WorkingPrecision guard(f.cls.working_digits());
  const Real half("0.5");
  CHECK(v.e.contains(e_closed(half) / 2));
  CHECK(v.e.width() < ten_to_minus(50));
  CHECK(v.e_k[0].contains(to_real(Rational(1, 3))));
  CHECK(v.e_k[1].contains(to_real(Rational(2, 5))));
  for (int k = 0; k <= 6; ++k) CHECK(v.e_k[static_cast<std::size_t>(k)].contains(e_k_closed(k, half) / 2));
}

TEST_CASE("X^2-20X+82: e and e_k equal the Lagrange combination of the closed forms") {
  Fixture f = load(kQuadratic);
  EValues v = evaluate_E(f.P, f.cls, 6);
  WorkingPrecision guard(f.cls.working_digits());
  const Real s = 3 * sqrt(Real(2));
  const std::vector<Real> alphas{10 + s, 10 - s};
  const Real a0(82);
  const Real e = lagrange_value(alphas, a0, e_closed);
  CHECK(v.e.contains(e));
  CHECK(v.e.width() < ten_to_minus(50));
  CHECK(abs(e - Real("1.170488676102103713670870571983e-2")) < ten_to_minus(31));
  for (int k = 0; k <= 6; ++k) {
    const Real ek = lagrange_value(alphas, a0, [k](const Real& x) { return e_k_closed(k, x); });
    CHECK(v.e_k[static_cast<std::size_t>(k)].contains(ek));
  }
  CHECK(v.e_k[0].contains(to_real(Rational(1, 103))));
}

TEST_CASE("complete homogeneous polynomials") {
  SUBCASE("Lagrange form equals brute-force enumeration, r <= 4, m <= 8") {
    const std::vector<Rational> xs{Rational(1, 2), Rational(-3), Rational(2, 7), Rational(5, 3)};
    for (std::size_t r = 1; r <= 4; ++r) {
      std::vector<Rational> head(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(r));
      for (std::size_t m = 0; m <= 8; ++m) {
        // Sum over exponent vectors with i_1 + ... + i_r = m.
        Rational brute = 0;
        std::function<void(std::size_t, std::size_t, Rational)> rec = [&](std::size_t pos, std::size_t left,
                                                                         Rational term) {
          if (pos + 1 == r) {
            for (std::size_t p = 0; p < left; ++p) term *= head[pos];
            brute += term;
            return;
          }
          Rational t = term;
          for (std::size_t v = 0; v <= left; ++v) {
            rec(pos + 1, left - v, t);
            t *= head[pos];
          }
        };
        rec(0, m, Rational(1));
        CHECK(hom_sym(r, m, xs) == brute);
        CHECK(hom_sym_lagrange(m, head) == brute);
      }
    }
  }
  SUBCASE("H_3^(2)(1,2,3) = 25") { CHECK(hom_sym(3, 2, std::vector<Rational>{1, 2, 3}) == 25); }
  SUBCASE("H_r^(0) = 1") { CHECK(hom_sym(2, 0, std::vector<Rational>{7, 9}) == 1); }
  SUBCASE("H_2^(1) at inverse roots of X^2-20X+82 is 20/82") {
    Fixture f = load(kQuadratic);
    WorkingPrecision guard(f.cls.working_digits());
    std::vector<Complex> inv{inverse(f.cls.roots[0].value), inverse(f.cls.roots[1].value)};
    CHECK(abs(hom_sym(2, 1, inv) - Complex(to_real(Rational(20, 82)))) < ten_to_minus(55));
  }
}

TEST_CASE("conditions for X^2-20X+82") {
  Fixture f = load(kQuadratic);
  RhoTable t = build_rho_table(f.spec, f.cls, -200, 200);
  ConditionReport rep = check_conditions(f.P, f.cls, t);
  WorkingPrecision guard(f.cls.working_digits());
  CHECK(rep.reciprocal_sum.value == Tri::yes);
  CHECK(rep.reciprocal_sum.quantity.contains(to_real(Rational(20, 82))));
  CHECK(rep.weighted_sum.value == Tri::yes);
  CHECK(rep.weighted_sum.quantity.contains(to_real(Rational(1, 21))));
  CHECK(rep.weighted_sum.quantity.width() < ten_to_minus(30));
  CHECK(rep.mu_chain.value == Tri::yes);
  CHECK(rep.residue_bound.value == Tri::yes);
  CHECK(rep.weighted_sum_tilde.value == Tri::no);
  auto has = [&](const std::string& s) {
    return std::find(rep.applicable_theorems.begin(), rep.applicable_theorems.end(), s) != rep.applicable_theorems.end();
  };
  CHECK(has("discrete spectrum below e (sum of 1/alpha_i <= 1/2)"));
  CHECK(has("0 is isolated and 1/2 is an accumulation point"));
}

TEST_CASE("conditions for the cubic") {
  Fixture f = load(kCubic);
  RhoTable t = build_rho_table(f.spec, f.cls, -200, 200);
  ConditionReport rep = check_conditions(f.P, f.cls, t);
  WorkingPrecision guard(f.cls.working_digits());
  CHECK(rep.weighted_sum.value == Tri::yes);
  CHECK(rep.weighted_sum.margin > 0);
  CHECK(rep.reciprocal_sum.value == Tri::no);
  CHECK(rep.weighted_sum_tilde.value == Tri::no);
}

TEST_CASE("condition soundness: yes flags survive doubled precision and window") {
  for (const char* s : {kQuadratic, kCubic, "X-2", "X^2-7X+3"}) {
    Fixture f = load(s, 0, 60);
    Fixture g = load(s, 0, 120);
    ConditionReport a = check_conditions(f.P, f.cls, build_rho_table(f.spec, f.cls, -200, 200));
    ConditionReport b = check_conditions(g.P, g.cls, build_rho_table(g.spec, g.cls, -400, 400));
    for (auto [x, y] : {std::pair{&a.mu_chain, &b.mu_chain}, std::pair{&a.reciprocal_sum, &b.reciprocal_sum},
                        std::pair{&a.weighted_sum, &b.weighted_sum}, std::pair{&a.weighted_sum_tilde, &b.weighted_sum_tilde},
                        std::pair{&a.residue_bound, &b.residue_bound}}) {
      if (x->value == Tri::yes) CHECK(y->value == Tri::yes);
      if (x->value == Tri::no) CHECK(y->value == Tri::no);
    }
  }
}

TEST_CASE("subsum interval criterion") {
  Fixture two = load("X-2");
  RhoTable t2 = build_rho_table(two.spec, two.cls, -200, 10);
  SubsumCheck c2 = subsum_interval_check(t2, two.cls, 1, SubsumSide::left, 0);
  CHECK(c2.holds);
  CHECK(c2.ratio_hypothesis);
  Fixture q = load(kQuadratic);
  RhoTable tq = build_rho_table(q.spec, q.cls, -200, 10);
  SubsumCheck c3 = subsum_interval_check(tq, q.cls, 3, SubsumSide::left, 0);
  CHECK(c3.holds);
  CHECK_FALSE(c3.first_violation);
  CHECK_FALSE(subsum_interval_check(tq, q.cls, 0, SubsumSide::left, 0).holds);
  CHECK_FALSE(subsum_interval_check(t2, two.cls, 0, SubsumSide::left, 0).holds);
}

TEST_CASE("periodic limit values") {
  Fixture f = load(kQuadratic);
  RhoTable t = build_rho_table(f.spec, f.cls, -200, 200);
  PeriodicLimsup zero = periodic_limsup(t, {Integer(0), Integer(0), Integer(0)});
  WorkingPrecision guard(f.cls.working_digits());
  CHECK(zero.value.contains(Real(0)));
  CHECK(zero.max_abs.contains(Real(0)));
  // A single 1 per period of length L: compare with truncated direct sums.
  const long L = 7;
  std::vector<Integer> w(static_cast<std::size_t>(L), Integer(0));
  w[2] = 1;
  PeriodicLimsup lim = periodic_limsup(t, w);
  Real best = 0;
  for (long n = 0; n < L; ++n) {
    Real sum = 0;
    for (long m = n - 190; m <= n + 190; ++m) {
      const long r = ((m % L) + L) % L;
      if (w[static_cast<std::size_t>(r)] != 0) sum += t.at(n - m);
    }
    best = std::max(best, Real(abs(sum)));
  }
  CHECK(abs(lim.max_abs.mid() - best) < ten_to_minus(40));
}

TEST_CASE("realize near 1/2 increases with R") {
  Fixture f = load(kQuadratic);
  RhoTable t = build_rho_table(f.spec, f.cls, -200, 200);
  Real prev = 0;
  for (long R : {10L, 20L, 40L}) {
    RealizeResult r = realize_near_half(f.spec, f.cls, t, R, 40, 40, 60);
    WorkingPrecision guard(f.cls.working_digits());
    CHECK(r.limsup.value.lo > Real(0.45));
    CHECK(r.limsup.value.hi < Real(0.5));
    CHECK(r.limsup.value.lo > prev);
    prev = r.limsup.value.hi;
    CHECK(r.period.size() == static_cast<std::size_t>(2 * R + 1 + 40 + 1 + 40));
  }
}

TEST_CASE("discrete spectrum report") {
  SpectrumReport rep = discrete_spectrum(parse_polynomial(kQuadratic), 6, 60);
  WorkingPrecision guard(80);
  CHECK(rep.e.hi < Real(0.5));
  for (std::size_t k = 0; k < rep.e_k.size(); ++k) {
    CHECK(rep.e_k[k].disjoint_below(rep.e));
    if (k > 0) CHECK(rep.e_k[k - 1].disjoint_below(rep.e_k[k]));
  }
  CHECK(rep.e.lo - rep.e_k[6].hi < rep.e.lo - rep.e_k[0].hi);
  CHECK(rep.coding_defect_e < ten_to_minus(15));
  for (const auto& d : rep.coding_defect_e_k) CHECK(d < ten_to_minus(15));
  SpectrumReport two = discrete_spectrum(parse_polynomial("X-2"), 3, 60);
  CHECK(two.e_k[0].contains(to_real(Rational(1, 3))));
  CHECK_THROWS_AS(discrete_spectrum(parse_polynomial("X^2-5X+5"), 3, 60), HypothesisError);
  CHECK_THROWS_AS(discrete_spectrum(parse_polynomial("2X^2-X-1"), 3, 60), HypothesisError);
  CHECK_THROWS_AS(discrete_spectrum(parse_polynomial(kCubic), 3, 60), HypothesisError);
}
