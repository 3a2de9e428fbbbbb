#include "support.hpp"

#include "mlspec/errors.hpp"
#include "mlspec/intertwine.hpp"

#include <doctest.h>

#include <random>

using namespace mlspec;
using namespace mlspec::testing;

namespace {

long roundtrip_n_hi(const Fixture& f, long m_max, long digits) {
  WorkingPrecision guard(f.cls.working_digits());
  return m_max + static_cast<long>(std::ceil(digits / log10(f.cls.beta1).convert_to<double>())) + f.spec.D;
}

OmegaSequence random_word(std::mt19937_64& rng, long max_abs) {
  std::uniform_int_distribution<long> start(-8, 0), len(1, 12), val(-max_abs, max_abs);
  OmegaSequence t;
  t.start = start(rng);
  const long n = len(rng);
  for (long i = 0; i < n; ++i) t.head.emplace_back(val(rng));
  return t;
}

}  // namespace

TEST_CASE("Vandermonde determinant") {
  Fixture f = load(kQuadratic);
  VandermondeCheck v0 = vandermonde_nonvanishing(f.cls, 0);
  WorkingPrecision guard(f.cls.working_digits());
  CHECK(v0.ok);
  CHECK(abs(v0.det_modulus - 6 * sqrt(Real(2))) < ten_to_minus(50));
  Fixture g = load(kQuadratic, 1);
  CHECK(vandermonde_nonvanishing(g.cls, 1).ok);
  Fixture c = load(kCubic, 2);
  CHECK(vandermonde_nonvanishing(c.cls, 2).ok);
}

TEST_CASE("orbit of the half witness for X^2-20X+82") {
  Fixture f = load(kQuadratic);
  XiElement g = half_witness(f.cls);
  OrbitSample o = orbit_sample(f.spec, f.cls, g, -10, 40, 60);
  WorkingPrecision guard(o.digits);
  CHECK(o.x_at(0) == Real(-0.5));
  CHECK(o.eps_at(0) == Real(-0.5));
  CHECK(o.u_at(0) == 0);
  for (long n = -10; n <= 40; ++n) {
    CHECK(o.eps_at(n) >= Real(-0.5));
    CHECK(o.eps_at(n) < Real(0.5));
    CHECK(abs(o.x_at(n) - to_real(o.u_at(n)) - o.eps_at(n)) <= o.error[static_cast<std::size_t>(n + 10)]);
  }
}

TEST_CASE("orbit of g = (0.3, 0.3) against direct evaluation") {
  Fixture f = load(kQuadratic);
  XiElement g = XiElement::from_rationals(f.cls, 0, {{{Rational(3, 10), 0}}, {{Rational(3, 10), 0}}});
  OrbitSample o = orbit_sample(f.spec, f.cls, g, 0, 40, 60);
  WorkingPrecision guard(120);
  const Real a = 10 + 3 * sqrt(Real(2)), b = 10 - 3 * sqrt(Real(2));
  for (long n = 0; n <= 40; ++n) {
    const Real x = Real("0.3") * (pow(a, Real(n)) + pow(b, Real(n)));
    CHECK(abs(o.x_at(n) - x) < ten_to_minus(50));
  }
  for (const auto& s : o.s) CHECK(abs(Rational(s)) <= f.spec.B);
  CHECK(o.recurrence_defect < ten_to_minus(40));
}

TEST_CASE("X-2: x_0 = -1/2 is recognized exactly") {
  Fixture f = load("X-2");
  OrbitSample o = orbit_sample(f.spec, f.cls, half_witness(f.cls), -6, 12, 60);
  WorkingPrecision guard(o.digits);
  CHECK(o.eps_at(0) == Real(-0.5));
  for (long n = 1; n <= 12; ++n) CHECK(o.eps_at(n) == 0);
  for (long n = -6; n < 0; ++n) CHECK(abs(o.eps_at(n) + pow(Real(2), Real(n - 1))) < ten_to_minus(60));
}

TEST_CASE("roundtrip: reconstructed epsilon matches the orbit") {
  for (const char* s : {kQuadratic, kCubic}) {
    Fixture f = load(s);
    const long n_hi = roundtrip_n_hi(f, 60, 40);
    RhoTable t = build_rho_table(f.spec, f.cls, -(n_hi + 100), n_hi + 100);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      Encoding e = encode(f.spec, f.cls, random_xi(f.cls, 0, seed), n_hi, 60);
      WorkingPrecision guard(f.cls.working_digits());
      for (long m = 0; m <= 60; ++m) {
        EpsilonValue v = reconstruct_epsilon(t, e.s, m);
        CHECK(abs(v.value - e.orbit.eps_at(m)) <= v.error_bound);
        CHECK(v.error_bound < ten_to_minus(25));
      }
    }
  }
}

TEST_CASE("roundtrip with k = 1 and the half witness") {
  Fixture f = load(kQuadratic, 1);
  const long n_hi = roundtrip_n_hi(f, 30, 35);
  RhoTable t = build_rho_table(f.spec, f.cls, -(n_hi + 100), n_hi + 100);
  Encoding e = encode(f.spec, f.cls, random_xi(f.cls, 1, 11), n_hi, 60);
  WorkingPrecision guard(f.cls.working_digits());
  for (long m = 0; m <= 30; ++m) {
    EpsilonValue v = reconstruct_epsilon(t, e.s, m);
    CHECK(abs(v.value - e.orbit.eps_at(m)) <= v.error_bound);
  }
  Fixture h = load(kQuadratic);
  RhoTable th = build_rho_table(h.spec, h.cls, -300, 300);
  Encoding eh = encode(h.spec, h.cls, half_witness(h.cls), roundtrip_n_hi(h, 0, 40), 60);
  WorkingPrecision g2(h.cls.working_digits());
  EpsilonValue v = reconstruct_epsilon(th, eh.s, 0);
  CHECK(abs(v.value + Real(0.5)) < ten_to_minus(30));
}

TEST_CASE("symbol bound and left support") {
  for (const char* s : {kQuadratic, kCubic}) {
    Fixture f = load(s);
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
      Encoding e = encode(f.spec, f.cls, random_xi(f.cls, 0, seed, 4.0), 40, 60);
      CHECK(e.support_start <= e.s.start);
      for (long m = e.s.start - 20; m < e.support_start; ++m) CHECK(e.s.at(m) == 0);
      for (const auto& v : e.s.head) CHECK(abs(Rational(v)) <= f.spec.B);
      CHECK(e.s.tail == TailKind::bounded);
      CHECK(Rational(e.s.bound) <= f.spec.B);
    }
  }
}

TEST_CASE("reconstruct_epsilon on trivial sequences") {
  Fixture f = load(kCubic);
  RhoTable t = build_rho_table(f.spec, f.cls, -80, 80);
  WorkingPrecision guard(f.cls.working_digits());
  for (long m = -20; m <= 20; ++m) {
    EpsilonValue d = reconstruct_epsilon(t, OmegaSequence::delta(0), m);
    CHECK(abs(d.value - t.at(m)) <= d.error_bound + ten_to_minus(60));
    EpsilonValue z = reconstruct_epsilon(t, OmegaSequence{}, m);
    CHECK(z.value == 0);
  }
}

TEST_CASE("decode: X-2 has h = sum_n t_n 2^(-n-1)") {
  Fixture f = load("X-2");
  RhoTable t = build_rho_table(f.spec, f.cls, -200, 200);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    OmegaSequence w = random_word(rng, 1);
    DecodeResult d = decode_omega0(f.spec, f.cls, t, w, 60, ten_to_minus(20));
    WorkingPrecision guard(f.cls.working_digits());
    Rational want = 0;
    for (long n = w.start; n < w.head_end(); ++n) want += Rational(w.at(n)) / Rational(Integer(1) << static_cast<unsigned>(n + 1 + 8)) * 256;
    CHECK(d.verified);
    CHECK(abs(d.h.g[0][0] - Complex(to_real(want))) < ten_to_minus(50));
  }
}

TEST_CASE("decode: random finite words on both examples") {
  for (const char* s : {kQuadratic, kCubic}) {
    Fixture f = load(s);
    RhoTable t = build_rho_table(f.spec, f.cls, -250, 250);
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 4; ++trial) {
      DecodeResult d = decode_omega0(f.spec, f.cls, t, random_word(rng, 3), 60, ten_to_minus(20));
      WorkingPrecision guard(f.cls.working_digits());
      CHECK(d.verified);
      CHECK(d.max_defect < ten_to_minus(20));
      CHECK(d.h.in_xi(f.cls, ten_to_minus(40)));
    }
  }
  Fixture f = load(kQuadratic);
  RhoTable t = build_rho_table(f.spec, f.cls, -200, 200);
  DecodeResult zero = decode_omega0(f.spec, f.cls, t, OmegaSequence{}, 60, ten_to_minus(20));
  WorkingPrecision guard(f.cls.working_digits());
  for (const auto& poly : zero.h.g)
    for (const auto& c : poly) CHECK(abs(c) == 0);
}

TEST_CASE("decode refuses non-monic input") {
  Fixture f = load("3X^2-X+7");
  RhoTable t = build_rho_table(f.spec, f.cls, -50, 50);
  CHECK_THROWS_AS(decode_omega0(f.spec, f.cls, t, OmegaSequence::delta(0), 60, ten_to_minus(20)), HypothesisError);
}

TEST_CASE("matrix identities on finite windows") {
  struct Case {
    const char* poly;
    int k;
    long half;
    long digits;
  };
  for (Case c : {Case{"X-2", 0, 50, 50}, Case{kQuadratic, 0, 100, 45}, Case{kCubic, 0, 100, 45}, Case{kCubic, 1, 50, 40}}) {
    Fixture f = load(c.poly, c.k);
    RhoTable t = build_rho_table(f.spec, f.cls, -3 * c.half - f.spec.D, 3 * c.half + f.spec.D);
    WorkingPrecision guard(f.cls.working_digits());
    MatrixDefects m = matrix_identity_window_defect(t, -c.half, c.half);
    CHECK(m.ab < ten_to_minus(c.digits));
    CHECK(m.ba < ten_to_minus(c.digits));
  }
}

TEST_CASE("sequence literals round-trip") {
  for (const char* s : {"0^inf [1 0 | -2 0 3]", "0^inf [| 5]", "0^inf [-1 | 0 0 7] (period: 1 -1)", "0^inf [| 0]"}) {
    OmegaSequence t = OmegaSequence::parse(s);
    CHECK(OmegaSequence::parse(t.to_string()).to_string() == t.to_string());
  }
  OmegaSequence t = OmegaSequence::parse("0^inf [1 0 | -2 0 3]");
  CHECK(t.start == -2);
  CHECK(t.at(-2) == 1);
  CHECK(t.at(0) == -2);
  CHECK(t.at(2) == 3);
  CHECK(t.at(50) == 0);
  CHECK(t.max_abs() == 3);
  OmegaSequence p = OmegaSequence::parse("0^inf [| 4] (period: 1 -1)");
  CHECK(p.at(1) == 1);
  CHECK(p.at(2) == -1);
  CHECK(p.at(3) == 1);
  CHECK_THROWS_AS(OmegaSequence::parse("1 2 3"), ParseError);
}

TEST_CASE("isolated point: small distances to Z force zero symbols") {
  Fixture f = load(kQuadratic);
  const Real threshold = Real(1) / (2 * to_real(f.spec.abs_coefficient_sum()));
  RhoTable t = build_rho_table(f.spec, f.cls, -200, 400);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> pick(-6, 6);
  for (int trial = 0; trial < 6; ++trial) {
    // (u + v sqrt 2) alpha_1^n + (u - v sqrt 2) alpha_2^n is an integer trace.
    const int u = pick(rng), v = pick(rng);
    XiElement g;
    {
      WorkingPrecision guard(400);
      const Real r2 = sqrt(Real(2));
      g.g = {{Complex(u + v * r2)}, {Complex(u - v * r2)}};
    }
    OrbitSample o = orbit_sample(f.spec, f.cls, g, 0, 200, 60);
    WorkingPrecision guard(o.digits);
    bool small = true;
    for (const auto& e : o.eps) small = small && abs(e) < threshold;
    REQUIRE(small);
    for (long m = 1; m <= o.s_hi() - 1; ++m) CHECK(o.s_at(m) == 0);
    OmegaSequence s;
    for (long m = 1; m <= 100; ++m) {
      EpsilonValue ev = reconstruct_epsilon(t, s, m);
      CHECK(abs(ev.value) <= ev.error_bound);
    }
  }
  // Conversely, any seeded orbit with a nonzero interior symbol has a large distance to Z.
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    OrbitSample o = orbit_sample(f.spec, f.cls, random_xi(f.cls, 0, seed), 0, 60, 60);
    WorkingPrecision guard(o.digits);
    bool nonzero = false;
    for (long m = 0; m <= o.s_hi(); ++m) nonzero = nonzero || o.s_at(m) != 0;
    Real worst = 0;
    for (const auto& e : o.eps) worst = std::max(worst, Real(abs(e)));
    if (nonzero) CHECK(worst >= threshold);
  }
}
