#include "support.hpp"

#include "mlspec/errors.hpp"

#include <doctest.h>

using namespace mlspec;
using namespace mlspec::testing;

TEST_CASE("X^2-20X+82 has roots 10 +- 3 sqrt 2") {
  Fixture f = load(kQuadratic, 0, 60);
  WorkingPrecision guard(f.cls.working_digits());
  const Real s = 3 * sqrt(Real(2));
  REQUIRE(f.cls.roots.size() == 2);
  CHECK(abs(f.cls.roots[0].value.re - (10 + s)) < ten_to_minus(55));
  CHECK(abs(f.cls.roots[1].value.re - (10 - s)) < ten_to_minus(55));
  CHECK(f.cls.expansive);
  CHECK(f.cls.p == 2);
  CHECK(is_infinite(f.cls.beta2));
}

TEST_CASE("cubic roots match the printed values") {
  Fixture f = load(kCubic, 0, 60);
  REQUIRE(f.cls.roots.size() == 3);
  CHECK(f.cls.p == 2);
  CHECK(f.cls.r1 == 0);
  CHECK(f.cls.r2 == 1);
  CHECK(f.cls.r1p == 1);
  const Complex& a = f.cls.roots[0].value;
  CHECK(abs(a.re - Real(-1.1495)) < Real(5e-5));
  CHECK(abs(abs(a.im) - Real(2.3165)) < Real(5e-5));
  CHECK(abs(f.cls.roots[2].value.re - Real(0.2991)) < Real(5e-5));
  CHECK_FALSE(f.cls.beta1_unique);
  CHECK(f.cls.beta2_unique);
  CHECK(f.cls.hyperbolic);
}

TEST_CASE("Vieta: product and sum of the roots") {
  for (const char* s : {kCubic, kQuadratic, "3X^4-X+7", "X^5-3X^2+1"}) {
    Fixture f = load(s, 0, 50);
    WorkingPrecision guard(f.cls.working_digits());
    Complex prod(Real(1)), sum;
    for (const auto& r : f.cls.roots) {
      prod *= r.value;
      sum += r.value;
    }
    const int d = f.P.degree();
    const Real lead = to_real(f.P.leading());
    CHECK(abs(prod - Complex(Real(to_real(f.P.constant()) / lead * (d % 2 ? -1 : 1)))) < ten_to_minus(25));
    CHECK(abs(sum - Complex(Real(-to_real(f.P[static_cast<std::size_t>(d - 1)]) / lead))) < ten_to_minus(25));
  }
}

TEST_CASE("doubling precision moves no root beyond its certified radius") {
  Fixture coarse = load(kCubic, 0, 40);
  Fixture fine = load(kCubic, 0, 80);
  WorkingPrecision guard(fine.cls.working_digits());
  for (std::size_t i = 0; i < coarse.cls.roots.size(); ++i)
    CHECK(abs(coarse.cls.roots[i].value - fine.cls.roots[i].value) <= coarse.cls.roots[i].error_bound);
}

TEST_CASE("conjugate pairing and ordering") {
  Fixture f = load(kCubic);
  const auto& r = f.cls.roots;
  REQUIRE(r[0].conj_partner);
  CHECK(*r[0].conj_partner == 1);
  CHECK(r[0].value.im > 0);
  CHECK(r[0].klass == RootClass::expanding);
  CHECK(r[2].klass == RootClass::contracting);
}

TEST_CASE("non-hyperbolic inputs are flagged") {
  Fixture f = load("X^2+1");
  CHECK_FALSE(f.cls.hyperbolic);
  Fixture g = load("X^3-2X^2-2X-3");
  CHECK_FALSE(g.cls.hyperbolic);
  CHECK(g.cls.p == 1);
}

TEST_CASE("beta constants") {
  Fixture f = load(kCubic);
  WorkingPrecision guard(f.cls.working_digits());
  CHECK(abs(f.cls.beta1 - Real("2.5860324011")) < Real(1e-9));
  CHECK(abs(f.cls.beta2 - Real("3.3437817899")) < Real(1e-9));
  CHECK(f.cls.beta == f.cls.beta1);
  CHECK(f.cls.beta_tilde == f.cls.beta2);
}
