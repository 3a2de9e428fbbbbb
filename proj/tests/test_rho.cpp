#include "support.hpp"

#include "mlspec/errors.hpp"

#include <doctest.h>


using namespace mlspec;
using namespace mlspec::testing;

TEST_CASE("rho matches trapezoid quadrature of the contour integral") {
  for (const char* s : {kCubic, kQuadratic, "X-2", "3X^4-X+7"}) {
    Fixture f = load(s);
    RhoTable t = build_rho_table(f.spec, f.cls, -30, 30);
    WorkingPrecision guard(f.cls.working_digits());
    for (long n = -30; n <= 30; ++n) {
      const double q = rho_quadrature(f.spec.A, n);
      CHECK(std::abs(t.at(n).convert_to<double>() - q) < 1e-12);
    }
  }
}

TEST_CASE("X-2: rho_n = 2^(n-1) for n <= 0 and 0 for n >= 1") {
  Fixture f = load("X-2");
  RhoTable t = build_rho_table(f.spec, f.cls, -40, 40);
  WorkingPrecision guard(f.cls.working_digits());
  for (long n = -40; n <= 0; ++n) CHECK(abs(t.at(n) - to_real(Rational(1, Integer(1) << (1 - n)))) < ten_to_minus(55));
  for (long n = 1; n <= 40; ++n) CHECK(t.at(n) == 0);
  CHECK(t.abs_sum.contains(Real(1)));
  CHECK(t.abs_sum.width() < ten_to_minus(11));
}

TEST_CASE("X^2-20X+82: rho_0 = -1/82, rho_-1 = -10/3362, sum |rho| = 1/f(1) = 1/63") {
  Fixture f = load(kQuadratic);
  RhoTable t = build_rho_table(f.spec, f.cls, -200, 10);
  WorkingPrecision guard(f.cls.working_digits());
  CHECK(abs(t.at(0) - to_real(Rational(-1, 82))) < ten_to_minus(55));
  CHECK(abs(t.at(-1) - to_real(Rational(-10, 3362))) < ten_to_minus(55));
  CHECK(t.abs_sum.contains(to_real(Rational(1, 63))));
  CHECK(t.abs_sum.width() < ten_to_minus(50));
}

TEST_CASE("expansive closed form agrees with the residue sums") {
  Fixture f = load(kQuadratic);
  RhoTable t = build_rho_table(f.spec, f.cls, -200, 0);
  WorkingPrecision guard(f.cls.working_digits());
  for (long n = -200; n <= 0; ++n) CHECK(abs(t.at(n) - rho_expansive(f.P, n, f.cls)) < ten_to_minus(45));
  CHECK_THROWS_AS(rho_expansive(f.P, 1, f.cls), Error);
}

TEST_CASE("convolution identity on both examples, k = 0 and k = 1") {
  for (auto [s, k] : {std::pair{kCubic, 0}, std::pair{kQuadratic, 0}, std::pair{kCubic, 1}, std::pair{kQuadratic, 1}}) {
    Fixture f = load(s, k);
    RhoTable t = build_rho_table(f.spec, f.cls, -110, 110);
    WorkingPrecision guard(f.cls.working_digits());
    CHECK(convolution_identity_defect(t, -100, 100) < ten_to_minus(45));
  }
}

TEST_CASE("overlap: expanding and non-expanding residue sums agree for 1 <= n <= D-1") {
  for (int k : {0, 1, 2}) {
    Fixture f = load(kCubic, k);
    std::vector<ResiduePolynomial> all = residue_polynomials(f.spec, f.cls);
    WorkingPrecision guard(f.cls.working_digits());
    for (long n = 1; n <= f.spec.D - 1; ++n) {
      Complex e, o;
      for (std::size_t j = 0; j < all.size(); ++j) (static_cast<int>(j) < f.cls.p ? e : o) += all[j](n);
      CHECK(abs(e + o) < ten_to_minus(30));
    }
  }
}

TEST_CASE("residue polynomial agrees with the direct jet residue") {
  Fixture f = load(kCubic, 2);
  std::vector<ResiduePolynomial> polys = residue_polynomials(f.spec, f.cls);
  WorkingPrecision guard(f.cls.working_digits());
  for (std::size_t j = 0; j < polys.size(); ++j)
    for (long n : {-7L, -1L, 0L, 1L, 5L, 12L})
      CHECK(abs(polys[j](n) - residue_at_root(f.spec, f.cls, j, n)) < ten_to_minus(40) * (1 + abs(polys[j](n))));
}

TEST_CASE("values are real and respect the tail bounds") {
  Fixture f = load(kCubic, 1);
  RhoTable t = build_rho_table(f.spec, f.cls, -20, 20);
  WorkingPrecision guard(f.cls.working_digits());
  for (long n = -120; n < -20; ++n) CHECK(abs(t.evaluate(n).value) <= t.right_tail.bound_at(n));
  for (long n = 21; n <= 120; ++n) CHECK(abs(t.evaluate(n).value) <= t.left_tail.bound_at(n));
  CHECK(t.right_tail.poly_order == 1);
}

TEST_CASE("sum of |rho| for the cubic") {
  Fixture f = load(kCubic);
  RhoTable narrow = build_rho_table(f.spec, f.cls, -60, 60);
  RhoTable wide = build_rho_table(f.spec, f.cls, -300, 300);
  WorkingPrecision guard(f.cls.working_digits());
  // Both enclosures must overlap; the wide one is tight.
  CHECK(narrow.abs_sum.lo <= wide.abs_sum.hi);
  CHECK(wide.abs_sum.lo <= narrow.abs_sum.hi);
  CHECK(wide.abs_sum.width() < ten_to_minus(40));
  double quad = 0;
  for (long n = -300; n <= 300; ++n) quad += std::abs(rho_quadrature(f.spec.A, n));
  CHECK(std::abs(wide.abs_sum.mid().convert_to<double>() - quad) < 1e-10);
}

TEST_CASE("residue at infinity is an integer for monic P") {
  for (const char* s : {kCubic, kQuadratic, "X-2"}) {
    Fixture f = load(s);
    for (long n = -4; n <= 12; ++n) {
      ResidueAtInfinity r = residue_at_infinity_integrality(f.spec, f.cls, n);
      CHECK(r.ok);
    }
  }
  Fixture q = load(kQuadratic);
  CHECK(residue_at_infinity_integrality(q.spec, q.cls, 2).value == -1);
  CHECK(residue_at_infinity_integrality(q.spec, q.cls, 3).value == -20);
  Fixture sq = load("X-2", 1);
  CHECK(residue_at_infinity_integrality(sq.spec, sq.cls, 3).value == -4);
}

TEST_CASE("polygeometric tail bounds direct summation") {
  WorkingPrecision guard(50);
  const Real q("0.3");
  for (int k : {0, 2}) {
    Real direct = 0;
    for (long m = 11; m < 2000; ++m) direct += 2 * pow(Real(1 + m), k) * pow(q, Real(m));
    const Real bound = polygeometric_tail(Real(2), q, k, 10);
    CHECK(bound >= direct);
    CHECK(bound <= direct * Real("1.1"));
    if (k == 0) CHECK(abs(bound - direct) < ten_to_minus(40));
  }
  CHECK(is_infinite(polygeometric_tail(Real(1), Real(1), 0, 3)));
}

TEST_CASE("non-hyperbolic input is refused") {
  Fixture f = load("X^2+1");
  CHECK_THROWS_AS(build_rho_table(f.spec, f.cls, -5, 5), HypothesisError);
}
