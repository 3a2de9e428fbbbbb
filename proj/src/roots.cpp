#include "mlspec/roots.hpp"

#include "mlspec/errors.hpp"

#include <algorithm>
#include <numeric>

namespace mlspec {

const char* to_string(RootClass c) {
  switch (c) {
    case RootClass::expanding:
      return "expanding";
    case RootClass::contracting:
      return "contracting";
    case RootClass::unit_ambiguous:
      return "unit_ambiguous";
  }
  return "?";
}

std::vector<Complex> RootClassification::values() const {
  std::vector<Complex> out;
  out.reserve(roots.size());
  for (const auto& r : roots) out.push_back(r.value);
  return out;
}

Real RootClassification::max_error() const {
  Real m = 0;
  for (const auto& r : roots) m = std::max(m, r.error_bound);
  return m;
}

namespace {

struct AberthOutcome {
  std::vector<Complex> z;
  std::vector<Real> radius;
  bool separated = false;
};

// Rounding-error envelope for Horner evaluation: sum |a_j| |z|^j.
Real horner_envelope(const IntPolynomial& P, const Real& modulus) {
  Real acc = 0;
  for (auto it = P.coeffs().rbegin(); it != P.coeffs().rend(); ++it) acc = acc * modulus + to_real(abs(*it));
  return acc;
}

AberthOutcome aberth(const IntPolynomial& P, unsigned digits) {
  WorkingPrecision guard(digits);
  const int d = P.degree();
  const auto n = static_cast<std::size_t>(d);
  const Real lead = to_real(P.leading());
  Real radius = 0;
  for (int j = 0; j < d; ++j) radius = std::max(radius, Real(abs(to_real(P[static_cast<std::size_t>(j)])) / lead));
  radius += 1;

  const Real two_pi = 2 * boost::math::constants::pi<Real>();
  std::vector<Complex> z(n);
  for (std::size_t j = 0; j < n; ++j) {
    Real theta = two_pi * Real(j) / Real(d) + Real(0.4);
    z[j] = Complex(radius * cos(theta), radius * sin(theta));
  }

  const Real tol = ten_to_minus(static_cast<long>(digits) - 4);
  const int max_iter = 500 + 50 * d;
  int quiet_rounds = 0;
  for (int iter = 0; iter < max_iter && quiet_rounds < 2; ++iter) {
    bool all_small = true;
    for (std::size_t i = 0; i < n; ++i) {
      auto [p, dp] = P.eval_with_derivative(z[i]);
      if (p.re == 0 && p.im == 0) continue;
      Complex newton = p / dp;
      Complex s;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) s += inverse(z[i] - z[j]);
      Complex w = newton / (Complex(Real(1)) - newton * s);
      z[i] -= w;
      if (abs(w) > tol * std::max(Real(1), abs(z[i]))) all_small = false;
    }
    quiet_rounds = all_small ? quiet_rounds + 1 : 0;
  }

  // Weierstrass inclusion radii: each disk D(z_i, d |W_i|) holds exactly one
  // root once the disks are pairwise disjoint.
  AberthOutcome out;
  out.radius.resize(n);
  const Real u = unit_roundoff();
  for (std::size_t i = 0; i < n; ++i) {
    Complex p = P(z[i]);
    Real pabs = abs(p) + u * horner_envelope(P, abs(z[i])) * Real(4 * (d + 1));
    Real den = abs(lead);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) den *= abs(z[i] - z[j]);
    out.radius[i] = Real(d) * pabs / den + u * abs(z[i]);
  }
  out.separated = true;
  for (std::size_t i = 0; i < n && out.separated; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (abs(z[i] - z[j]) <= out.radius[i] + out.radius[j]) {
        out.separated = false;
        break;
      }
  out.z = std::move(z);
  return out;
}

}  // namespace

std::vector<RootRecord> find_roots(const IntPolynomial& P, unsigned precision, int k) {
  if (P.degree() < 1) throw Error("find_roots needs degree >= 1");
  const unsigned digits = precision + kGuardDigits;
  WorkingPrecision guard(digits);
  std::vector<RootRecord> out;

  if (P.degree() == 1) {
    RootRecord r;
    r.value = Complex(Real(-to_real(P.constant()) / to_real(P.leading())));
    r.modulus = abs(r.value.re);
    r.error_bound = unit_roundoff() * r.modulus;
    r.multiplicity_in_f = k + 1;
    out.push_back(std::move(r));
    return out;
  }

  AberthOutcome res;
  unsigned attempt_digits = digits;
  for (int attempt = 0; attempt < 3; ++attempt) {
    res = aberth(P, attempt_digits);
    if (res.separated) break;
    attempt_digits *= 2;
  }
  if (!res.separated) {
    Real worst = *std::max_element(res.radius.begin(), res.radius.end());
    throw PrecisionError("root inclusion disks overlap at " + std::to_string(attempt_digits) +
                         " digits (max radius " + to_decimal(worst, 6) +
                         "); polynomial may have a repeated root");
  }

  const std::size_t n = res.z.size();
  std::vector<bool> done(n, false);
  out.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].value = Complex(Real(res.z[i].re), Real(res.z[i].im));
    out[i].error_bound = Real(res.radius[i]);
    out[i].multiplicity_in_f = k + 1;
  }
  // A disk meeting its own mirror image holds a real root.
  for (std::size_t i = 0; i < n; ++i) {
    if (abs(out[i].value.im) <= out[i].error_bound) {
      out[i].error_bound += abs(out[i].value.im);
      out[i].value.im = 0;
      done[i] = true;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (done[i] || out[i].value.im < 0) continue;
    std::optional<std::size_t> best;
    Real best_dist = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (done[j] || j == i || out[j].value.im >= 0) continue;
      Real dist = abs(out[j].value - conj(out[i].value));
      if (!best || dist < best_dist) {
        best = j;
        best_dist = dist;
      }
    }
    if (!best) throw PrecisionError("unpaired non-real root; raise precision");
    const std::size_t j = *best;
    Complex avg = (out[i].value + conj(out[j].value)) / Real(2);
    Real bound = std::max(out[i].error_bound, out[j].error_bound) + best_dist / 2;
    out[i].value = avg;
    out[j].value = conj(avg);
    out[i].error_bound = out[j].error_bound = bound;
    done[i] = done[j] = true;
  }
  for (auto& r : out) r.modulus = abs(r.value);
  return out;
}

namespace {

void order_block(std::vector<RootRecord>& block, int& reals, int& pairs) {
  std::vector<RootRecord> real;
  std::vector<RootRecord> upper;
  for (auto& r : block) {
    if (r.value.is_real())
      real.push_back(r);
    else if (r.value.im > 0)
      upper.push_back(r);
  }
  auto by_modulus = [](const RootRecord& a, const RootRecord& b) {
    if (a.modulus != b.modulus) return a.modulus > b.modulus;
    if (a.value.re != b.value.re) return a.value.re > b.value.re;
    return a.value.im > b.value.im;
  };
  std::sort(real.begin(), real.end(), by_modulus);
  std::sort(upper.begin(), upper.end(), by_modulus);
  reals = static_cast<int>(real.size());
  pairs = static_cast<int>(upper.size());
  block.clear();
  for (auto& r : real) block.push_back(r);
  for (auto& r : upper) block.push_back(r);
  for (auto& r : upper) {
    RootRecord c = r;
    c.value = conj(r.value);
    block.push_back(c);
  }
}

}  // namespace

RootClassification classify_roots(std::vector<RootRecord> roots, const Real& tolerance, int exact_unit_degree,
                                  std::optional<int> exact_unit_count, unsigned precision) {
  RootClassification cls;
  cls.precision = precision;

  std::vector<std::size_t> near_unit;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const Real gap = abs(roots[i].modulus - 1);
    if (exact_unit_degree > 0 && gap < tolerance) near_unit.push_back(i);
  }

  std::vector<bool> on_circle(roots.size(), false);
  if (!near_unit.empty()) {
    if (!exact_unit_count) {
      throw PrecisionError(std::to_string(near_unit.size()) +
                           " root(s) within tolerance of the unit circle and the exact pre-screen is "
                           "inconclusive; raise precision");
    }
    if (*exact_unit_count == static_cast<int>(near_unit.size())) {
      for (auto i : near_unit) on_circle[i] = true;
      cls.notes.push_back(std::to_string(near_unit.size()) + " root(s) certified on the unit circle (exact count)");
    } else if (*exact_unit_count != 0) {
      throw PrecisionError("exact unit-circle count " + std::to_string(*exact_unit_count) + " disagrees with " +
                           std::to_string(near_unit.size()) + " numerically ambiguous root(s); raise precision");
    }
  }

  std::vector<RootRecord> expanding;
  std::vector<RootRecord> other;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    RootRecord& r = roots[i];
    if (on_circle[i]) {
      r.klass = RootClass::unit_ambiguous;
      other.push_back(r);
      continue;
    }
    if (abs(r.modulus - 1) <= r.error_bound)
      throw PrecisionError("root modulus indistinguishable from 1 at this precision; raise precision");
    if (r.modulus > 1) {
      r.klass = RootClass::expanding;
      expanding.push_back(r);
    } else {
      r.klass = RootClass::contracting;
      other.push_back(r);
    }
  }
  order_block(expanding, cls.r1, cls.r2);
  order_block(other, cls.r1p, cls.r2p);
  cls.p = static_cast<int>(expanding.size());
  cls.roots = std::move(expanding);
  cls.roots.insert(cls.roots.end(), other.begin(), other.end());

  // Conjugate partners within each block.
  auto link = [&](std::size_t base, int reals, int pairs) {
    for (int i = 0; i < pairs; ++i) {
      const std::size_t a = base + static_cast<std::size_t>(reals + i);
      const std::size_t b = a + static_cast<std::size_t>(pairs);
      cls.roots[a].conj_partner = b;
      cls.roots[b].conj_partner = a;
    }
  };
  link(0, cls.r1, cls.r2);
  link(static_cast<std::size_t>(cls.p), cls.r1p, cls.r2p);

  const std::size_t d = cls.roots.size();
  const auto p = static_cast<std::size_t>(cls.p);
  cls.hyperbolic = std::none_of(cls.roots.begin(), cls.roots.end(),
                                [](const RootRecord& r) { return r.klass == RootClass::unit_ambiguous; });
  cls.expansive = p == d;

  auto count_attaining = [&](std::size_t from, std::size_t to, const Real& target, bool invert) {
    int count = 0;
    for (std::size_t i = from; i < to; ++i) {
      const RootRecord& r = cls.roots[i];
      Real v = invert ? Real(1 / r.modulus) : r.modulus;
      Real slack = invert ? Real(r.error_bound / (r.modulus * r.modulus)) : r.error_bound;
      if (abs(v - target) <= 2 * slack + unit_roundoff() * target) ++count;
    }
    return count;
  };

  if (p == 0) {
    cls.beta1 = infinity();
    cls.notes.push_back("no expanding root");
  } else {
    cls.beta1 = cls.roots[0].modulus;
    for (std::size_t i = 0; i < p; ++i) cls.beta1 = std::min(cls.beta1, cls.roots[i].modulus);
    cls.beta1_unique = count_attaining(0, p, cls.beta1, false) == 1;
  }
  if (p == d) {
    cls.beta2 = infinity();
  } else {
    Real maxmod = 0;
    for (std::size_t i = p; i < d; ++i) maxmod = std::max(maxmod, cls.roots[i].modulus);
    cls.beta2 = 1 / maxmod;
    cls.beta2_unique = count_attaining(p, d, cls.beta2, true) == 1;
  }
  cls.beta = std::min(cls.beta1, cls.beta2);
  cls.beta_tilde = std::max(cls.beta1, cls.beta2);
  return cls;
}

RootClassification analyze_roots(const IntPolynomial& P, unsigned precision, int k) {
  auto roots = find_roots(P, precision, k);
  const int unit_degree = unit_circle_factor_test(P);
  std::optional<int> unit_count;
  if (unit_degree > 0) unit_count = unit_circle_root_count(P);
  WorkingPrecision guard(precision + kGuardDigits);
  const Real tolerance = ten_to_minus(static_cast<long>(precision / 4));
  return classify_roots(std::move(roots), tolerance, unit_degree, unit_count, precision);
}

RootClassification ensure_precision(const IntPolynomial& P, const RootClassification& cls, unsigned precision) {
  if (cls.precision >= precision) return cls;
  const int k = cls.roots.empty() ? 0 : cls.roots.front().multiplicity_in_f - 1;
  RootClassification fresh = analyze_roots(P, precision, k);
  if (fresh.p != cls.p || fresh.r1 != cls.r1 || fresh.r2 != cls.r2)
    throw PrecisionError("root partition changed when refining precision");
  return fresh;
}

}  // namespace mlspec
