#include "mlspec/pipeline.hpp"

#include "mlspec/errors.hpp"
#include "mlspec/homsym.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace mlspec {

namespace {

Json provenance(const RunConfig& c) {
  Json p;
  p["poly"] = c.poly;
  p["k"] = c.k;
  p["precision"] = c.precision;
  p["guard_digits"] = kGuardDigits;
  return p;
}

Json validation_json(const ValidationReport& v) {
  Json j;
  j["content_ok"] = v.content_ok;
  j["a0_nonzero"] = v.a0_nonzero;
  j["squarefree"] = v.squarefree;
  j["has_expanding_root"] = v.has_expanding_root;
  j["monic"] = v.monic;
  j["usable"] = v.usable();
  j["notes"] = v.notes;
  return j;
}

Json tail_json(const TailBound& t, unsigned digits) {
  Json j;
  j["zero"] = t.zero;
  j["rate"] = dec(t.rate, digits);
  j["constant"] = dec(t.constant, digits);
  j["poly_order"] = t.poly_order;
  j["sum"] = dec(t.sum, digits);
  return j;
}

Json flag_json(const ConditionFlag& f, unsigned digits) {
  Json j;
  j["value"] = to_string(f.value);
  j["margin"] = dec(f.margin, digits);
  j["quantity"] = enclosure_json(f.quantity, digits);
  j["note"] = f.note;
  return j;
}

struct Context {
  IntPolynomial P;
  RecurrenceSpec spec;
  RootClassification cls;
};

Context prepare(const RunConfig& c, bool require_usable = true) {
  Context ctx;
  ctx.P = parse_polynomial(c.poly);
  ValidationReport v = validate_assumptions(ctx.P);
  if (require_usable && !v.usable()) {
    std::string why;
    for (const auto& n : v.notes) why += (why.empty() ? "" : "; ") + n;
    throw HypothesisError("standing assumptions fail: " + why);
  }
  ctx.spec = power_to_f(ctx.P, c.k);
  ctx.cls = analyze_roots(ctx.P, c.precision, c.k);
  return ctx;
}

RhoTable table_for(const Context& ctx, long lo, long hi) {
  return build_rho_table(ctx.spec, ctx.cls, std::min(lo, 0L), std::max(hi, 0L));
}

XiElement element_for(const RunConfig& c, const Context& ctx) {
  return c.half ? half_witness(ctx.cls) : random_xi(ctx.cls, c.k, c.seed);
}

CommandResult cmd_validate(const RunConfig& c) {
  CommandResult r;
  IntPolynomial P = parse_polynomial(c.poly);
  ValidationReport v = validate_assumptions(P);
  r.report["command"] = "validate";
  r.report["provenance"] = provenance(c);
  r.report["polynomial"] = P.to_string();
  r.report["degree"] = P.degree();
  r.report["validation"] = validation_json(v);
  if (v.usable()) {
    RootClassification cls = analyze_roots(P, c.precision, c.k);
    r.report["hyperbolic"] = cls.hyperbolic;
    r.report["expansive"] = cls.expansive;
    r.report["unit_circle_roots"] = unit_circle_root_count(P);
  }
  r.status = v.usable() ? kExitOk : kExitHypothesis;
  return r;
}

CommandResult cmd_roots(const RunConfig& c) {
  Context ctx = prepare(c);
  CommandResult r;
  r.report["command"] = "roots";
  r.report["provenance"] = provenance(c);
  r.report["roots"] = roots_json(ctx.cls, c.precision);
  std::ostringstream csv;
  csv << "index,re,im,modulus,class,error\n";
  WorkingPrecision guard(ctx.cls.working_digits());
  for (std::size_t i = 0; i < ctx.cls.roots.size(); ++i) {
    const auto& root = ctx.cls.roots[i];
    csv << i << ',' << dec(root.value.re, c.precision) << ',' << dec(root.value.im, c.precision) << ','
        << dec(root.modulus, c.precision) << ',' << to_string(root.klass) << ',' << dec(root.error_bound, 6) << '\n';
  }
  r.csv = csv.str();
  return r;
}

CommandResult cmd_rho(const RunConfig& c) {
  Context ctx = prepare(c);
  RhoTable t = table_for(ctx, c.window_lo, c.window_hi);
  CommandResult r;
  r.report["command"] = "rho";
  r.report["provenance"] = provenance(c);
  r.report["provenance"]["window"] = {t.n_min, t.n_max};
  r.report["table"] = rho_table_json(t, c.precision);
  r.csv = rho_table_csv(t, c.precision);
  return r;
}

CommandResult cmd_identities(const RunConfig& c) {
  Context ctx = prepare(c);
  const long lo = c.window_lo, hi = c.window_hi;
  RhoTable t = table_for(ctx, 2 * lo - hi - ctx.spec.D, 2 * hi - lo + ctx.spec.D);
  WorkingPrecision guard(ctx.cls.working_digits());
  CommandResult r;
  Json& j = r.report;
  j["command"] = "identities";
  j["provenance"] = provenance(c);
  j["provenance"]["window"] = {lo, hi};
  j["convolution_defect"] = dec(convolution_identity_defect(t, lo, hi), 6);
  MatrixDefects md = matrix_identity_window_defect(t, lo, hi);
  j["matrix_defect"] = {{"AB", dec(md.ab, 6)}, {"BA", dec(md.ba, 6)}};
  VandermondeCheck v = vandermonde_nonvanishing(ctx.cls, c.k);
  j["vandermonde"] = {{"det_modulus", dec(v.det_modulus, 20)}, {"error_bound", dec(v.error_bound, 6)}, {"ok", v.ok}};
  if (ctx.spec.monic) {
    Json inf = Json::array();
    for (long n : {-2L, 0L, 1L, static_cast<long>(ctx.spec.D), static_cast<long>(ctx.spec.D) + 3}) {
      ResidueAtInfinity ri = residue_at_infinity_integrality(ctx.spec, ctx.cls, n);
      inf.push_back({{"n", n}, {"value", to_decimal(ri.value)}, {"numeric", dec(ri.numeric, 20)}, {"ok", ri.ok}});
    }
    j["residue_at_infinity"] = inf;
  }
  if (ctx.cls.expansive && c.k == 0) {
    Real worst = 0;
    for (long n = std::min(lo, 0L); n <= 0; ++n) worst = std::max(worst, Real(abs(t.at(n) - rho_expansive(ctx.P, n, ctx.cls))));
    j["expansive_closed_form_defect"] = dec(worst, 6);
  }
  return r;
}

CommandResult cmd_orbit(const RunConfig& c) {
  Context ctx = prepare(c);
  XiElement g = element_for(c, ctx);
  OrbitSample o = orbit_sample(ctx.spec, ctx.cls, g, c.window_lo, c.window_hi, c.precision);
  CommandResult r;
  r.report["command"] = "orbit";
  r.report["provenance"] = provenance(c);
  r.report["provenance"]["window"] = {c.window_lo, c.window_hi};
  r.report["provenance"]["seed"] = c.seed;
  r.report["element"] = xi_json(g, c.precision);
  WorkingPrecision guard(o.digits);
  r.report["rounding_margin"] = dec(o.rounding_margin, 6);
  r.report["recurrence_defect"] = dec(o.recurrence_defect, 6);
  r.report["symbol_bound"] = to_decimal(ctx.spec.B);
  Json s = Json::array();
  for (const auto& v : o.s) s.push_back(to_decimal(v));
  r.report["s"] = s;
  r.report["s_start"] = o.n_lo;
  r.csv = orbit_csv(o, c.precision);
  return r;
}

CommandResult cmd_encode(const RunConfig& c) {
  Context ctx = prepare(c);
  XiElement g = element_for(c, ctx);
  Encoding e = encode(ctx.spec, ctx.cls, g, c.window_hi, c.precision);
  RhoTable t = table_for(ctx, -std::max(200L, c.window_hi + 100), std::max(200L, c.window_hi + 100));
  CommandResult r;
  r.report["command"] = "encode";
  r.report["provenance"] = provenance(c);
  r.report["provenance"]["n_hi"] = c.window_hi;
  r.report["provenance"]["seed"] = c.seed;
  r.report["element"] = xi_json(g, c.precision);
  r.report["sequence"] = e.s.to_string();
  r.report["support_start"] = e.support_start;
  WorkingPrecision guard(ctx.cls.working_digits());
  Real worst = 0, worst_bound = 0;
  for (long m = std::max(0L, e.support_start); m <= e.s.head_end() - 1; ++m) {
    EpsilonValue v = reconstruct_epsilon(t, e.s, m);
    worst = std::max(worst, Real(abs(v.value - e.orbit.eps_at(m))));
    worst_bound = std::max(worst_bound, v.error_bound);
  }
  r.report["roundtrip"] = {{"max_difference", dec(worst, 6)}, {"max_error_bound", dec(worst_bound, 6)},
                           {"ok", worst <= worst_bound}};
  return r;
}

CommandResult cmd_decode(const RunConfig& c) {
  Context ctx = prepare(c);
  if (c.word.empty()) throw Error("decode needs --word");
  OmegaSequence t = OmegaSequence::parse(c.word);
  const long span = std::max(200L, t.head_end() - t.start + 120);
  RhoTable table = table_for(ctx, std::min(-span, t.start - span), span);
  WorkingPrecision guard(ctx.cls.working_digits());
  DecodeResult d = decode_omega0(ctx.spec, ctx.cls, table, t, c.precision, ten_to_minus(20));
  CommandResult r;
  r.report["command"] = "decode";
  r.report["provenance"] = provenance(c);
  r.report["sequence"] = t.to_string();
  r.report["element"] = xi_json(d.h, c.precision);
  r.report["window"] = {d.window_lo, d.window_hi};
  r.report["max_defect"] = dec(d.max_defect, 6);
  r.report["verified"] = d.verified;
  if (!d.verified) r.status = kExitUndecided;
  return r;
}

CommandResult cmd_conditions(const RunConfig& c) {
  Context ctx = prepare(c);
  RhoTable t = table_for(ctx, std::min(c.window_lo, -200L), std::max(c.window_hi, 200L));
  ConditionReport rep = check_conditions(ctx.P, ctx.cls, t);
  CommandResult r;
  r.report["command"] = "conditions";
  r.report["provenance"] = provenance(c);
  r.report["provenance"]["window"] = {t.n_min, t.n_max};
  r.report["abs_rho_sum"] = enclosure_json(t.abs_sum, c.precision);
  r.report["beta"] = {{"beta1", dec(ctx.cls.beta1, 20)},
                      {"beta2", dec(ctx.cls.beta2, 20)},
                      {"beta", dec(ctx.cls.beta, 20)},
                      {"beta_tilde", dec(ctx.cls.beta_tilde, 20)},
                      {"beta1_unique", ctx.cls.beta1_unique},
                      {"beta2_unique", ctx.cls.beta2_unique}};
  r.report["conditions"] = conditions_json(rep, c.precision);
  return r;
}

CommandResult cmd_spectrum(const RunConfig& c) {
  if (c.k != 0) throw HypothesisError("the discrete spectrum is computed for k = 0");
  SpectrumReport rep = discrete_spectrum(parse_polynomial(c.poly), c.K, c.precision);
  CommandResult r;
  r.report["command"] = "spectrum";
  r.report["provenance"] = provenance(c);
  r.report["provenance"]["K"] = c.K;
  r.report["spectrum"] = spectrum_json(rep, c.precision);
  r.csv = spectrum_csv(rep, c.precision);
  return r;
}

CommandResult cmd_realize(const RunConfig& c) {
  if (c.k != 0) throw HypothesisError("realize is implemented for k = 0");
  Context ctx = prepare(c);
  RhoTable t = table_for(ctx, -200, 200);
  CommandResult r;
  r.report["command"] = "realize";
  r.report["provenance"] = provenance(c);
  r.report["provenance"]["a"] = c.a;
  r.report["provenance"]["b"] = c.b;
  Json rows = Json::array();
  std::ostringstream csv;
  csv << "R,value_lo,value_hi,max_abs\n";
  for (long R : c.R) {
    RealizeResult res = realize_near_half(ctx.spec, ctx.cls, t, R, c.a, c.b, c.precision);
    WorkingPrecision guard(ctx.cls.working_digits());
    Json row;
    row["R"] = R;
    row["value"] = enclosure_json(res.limsup.value, c.precision);
    row["max_abs"] = enclosure_json(res.limsup.max_abs, c.precision);
    row["below_half"] = res.limsup.value.hi < Real(0.5);
    row["argmax"] = res.limsup.argmax;
    row["period_length"] = res.period.size();
    rows.push_back(row);
    csv << R << ',' << dec(res.limsup.value.lo, c.precision) << ',' << dec(res.limsup.value.hi, c.precision) << ','
        << dec(res.limsup.max_abs.mid(), c.precision) << '\n';
  }
  r.report["results"] = rows;
  r.csv = csv.str();
  return r;
}

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

CommandResult cmd_selftest(const RunConfig& c) {
  std::vector<Check> checks;
  auto add = [&](const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
    Check ch;
    ch.name = name;
    try {
      auto [ok, detail] = body();
      ch.passed = ok;
      ch.detail = detail;
    } catch (const std::exception& e) {
      ch.detail = e.what();
    }
    checks.push_back(ch);
  };
  const Real tol = ten_to_minus(static_cast<long>(c.precision / 2));
  for (const char* poly : {"X^3+2X^2+6X-2", "X^2-20X+82"}) {
    RunConfig rc = c;
    rc.poly = poly;
    rc.k = 0;
    Context ctx = prepare(rc);
    RhoTable t = table_for(ctx, -120, 120);
    const std::string p = poly;
    add(p + ": Vieta", [&] {
      WorkingPrecision g(ctx.cls.working_digits());
      Complex prod(Real(1)), sum;
      for (const auto& r : ctx.cls.roots) {
        prod *= r.value;
        sum += r.value;
      }
      const int d = ctx.P.degree();
      Real want_prod = to_real(Rational(ctx.P.constant(), ctx.P.leading())) * (d % 2 ? -1 : 1);
      Real want_sum = -to_real(Rational(ctx.P[static_cast<std::size_t>(d - 1)], ctx.P.leading()));
      Real e = std::max(abs(prod - Complex(want_prod)), abs(sum - Complex(want_sum)));
      return std::make_pair(e < tol, dec(e, 3));
    });
    add(p + ": convolution identity", [&] {
      WorkingPrecision g(ctx.cls.working_digits());
      Real e = convolution_identity_defect(t, -100, 100);
      return std::make_pair(e < tol, dec(e, 3));
    });
    add(p + ": matrix windows", [&] {
      WorkingPrecision g(ctx.cls.working_digits());
      MatrixDefects m = matrix_identity_window_defect(t, -40, 40);
      Real e = std::max(m.ab, m.ba);
      return std::make_pair(e < tol, dec(e, 3));
    });
    add(p + ": roundtrip", [&] {
      Real worst = 0;
      bool ok = true;
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        Encoding e = encode(ctx.spec, ctx.cls, random_xi(ctx.cls, 0, seed), 110, c.precision);
        WorkingPrecision g(ctx.cls.working_digits());
        for (long m = 0; m <= 30; ++m) {
          EpsilonValue v = reconstruct_epsilon(t, e.s, m);
          Real d = abs(v.value - e.orbit.eps_at(m));
          ok = ok && d <= v.error_bound;
          worst = std::max(worst, d);
        }
      }
      return std::make_pair(ok, dec(worst, 3));
    });
    add(p + ": decode", [&] {
      DecodeResult d = decode_omega0(ctx.spec, ctx.cls, t, OmegaSequence::parse("0^inf [1 0 | -2 0 3]"), c.precision,
                                     ten_to_minus(20));
      WorkingPrecision g(ctx.cls.working_digits());
      return std::make_pair(d.verified, dec(d.max_defect, 3));
    });
    add(p + ": residue at infinity", [&] {
      bool ok = true;
      for (long n = -3; n <= 8; ++n) ok = ok && residue_at_infinity_integrality(ctx.spec, ctx.cls, n).ok;
      return std::make_pair(ok, std::string(ok ? "integral" : "mismatch"));
    });
    add(p + ": weighted rho sum below 1/2", [&] {
      ConditionReport rep = check_conditions(ctx.P, ctx.cls, t);
      return std::make_pair(rep.weighted_sum.value == Tri::yes, std::string(to_string(rep.weighted_sum.value)));
    });
  }
  add("X^2-20X+82: discrete spectrum", [&] {
    SpectrumReport rep = discrete_spectrum(parse_polynomial("X^2-20X+82"), 6, c.precision);
    bool ok = rep.e.hi < Real(0.5);
    for (std::size_t k = 0; k < rep.e_k.size(); ++k) {
      ok = ok && rep.e_k[k].disjoint_below(rep.e);
      if (k > 0) ok = ok && rep.e_k[k - 1].disjoint_below(rep.e_k[k]);
    }
    return std::make_pair(ok, "e = " + dec(rep.e.mid(), 20));
  });
  add("coding identities", [&] {
    bool ok = omega_prefix(11) == "10011100100";
    SeriesQ e = e_series(200);
    CodedSequence w = phi_omega(201);
    for (int n = 0; n <= 200; ++n) ok = ok && e.c[static_cast<std::size_t>(n)] == w.at(static_cast<std::size_t>(n));
    for (int k = 0; k <= 4; ++k) {
      SeriesQ s = e_k_series(k, 200);
      CodedSequence code = phi_for_e_k(k);
      for (int n = 0; n <= 200; ++n) ok = ok && s.c[static_cast<std::size_t>(n)] == code.at(static_cast<std::size_t>(n));
    }
    return std::make_pair(ok, std::string(ok ? "exact" : "mismatch"));
  });
  add("complete homogeneous identity", [&] {
    bool ok = true;
    std::vector<Rational> xs{Rational(1, 2), Rational(-3), Rational(2, 7), Rational(5, 3)};
    for (std::size_t r = 1; r <= 4; ++r) {
      std::vector<Rational> head(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(r));
      for (std::size_t m = 0; m <= 8; ++m) ok = ok && hom_sym(r, m, xs) == hom_sym_lagrange(m, head);
    }
    return std::make_pair(ok, std::string(ok ? "exact" : "mismatch"));
  });

  CommandResult r;
  r.report["command"] = "selftest";
  r.report["provenance"] = {{"precision", c.precision}};
  Json arr = Json::array();
  bool all = true;
  for (const auto& ch : checks) {
    arr.push_back({{"name", ch.name}, {"passed", ch.passed}, {"detail", ch.detail}});
    all = all && ch.passed;
  }
  r.report["checks"] = arr;
  r.report["passed"] = all;
  r.status = all ? kExitOk : kExitError;
  return r;
}

using Handler = CommandResult (*)(const RunConfig&);

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table{
      {"validate", cmd_validate}, {"roots", cmd_roots},         {"rho", cmd_rho},
      {"identities", cmd_identities}, {"orbit", cmd_orbit},     {"encode", cmd_encode},
      {"decode", cmd_decode},     {"spectrum", cmd_spectrum},   {"conditions", cmd_conditions},
      {"realize", cmd_realize},   {"selftest", cmd_selftest},
  };
  return table;
}

}  // namespace

void RunConfig::validate() const {
  if (precision < kMinPrecision) throw Error("precision must be at least " + std::to_string(kMinPrecision));
  if (window_lo >= window_hi) throw Error("window must satisfy min < max");
  if (k < 0) throw Error("k must be non-negative");
  if (K < 0) throw Error("K must be non-negative");
  if (a < 0 || b < 0) throw Error("a and b must be non-negative");
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"validate", "roots",    "rho",        "identities", "orbit",   "encode",
                                              "decode",   "spectrum", "conditions", "realize",    "selftest"};
  return names;
}

CommandResult run_command(const std::string& command, const RunConfig& config) {
  config.validate();
  auto it = handlers().find(command);
  if (it == handlers().end()) throw Error("unknown command '" + command + "'");
  return it->second(config);
}

Json error_json(const std::exception& e) {
  const auto* err = dynamic_cast<const Error*>(&e);
  return {{"error", {{"kind", err ? err->kind() : "internal"}, {"message", e.what()}}}};
}

int exit_status(const std::exception& e) {
  if (dynamic_cast<const HypothesisError*>(&e)) return kExitHypothesis;
  if (dynamic_cast<const UndecidedError*>(&e) || dynamic_cast<const PrecisionError*>(&e)) return kExitUndecided;
  return kExitError;
}

std::string dec(const Real& x, unsigned digits) { return to_decimal(x, digits); }

Json enclosure_json(const Enclosure& x, unsigned digits) { return Json::array({dec(x.lo, digits), dec(x.hi, digits)}); }

Json roots_json(const RootClassification& cls, unsigned digits) {
  WorkingPrecision guard(cls.working_digits());
  Json j;
  Json list = Json::array();
  for (const auto& r : cls.roots) {
    list.push_back({{"re", dec(r.value.re, digits)},
                    {"im", dec(r.value.im, digits)},
                    {"modulus", dec(r.modulus, digits)},
                    {"class", to_string(r.klass)},
                    {"error_bound", dec(r.error_bound, 6)}});
  }
  j["roots"] = list;
  j["p"] = cls.p;
  j["r1"] = cls.r1;
  j["r2"] = cls.r2;
  j["r1_prime"] = cls.r1p;
  j["r2_prime"] = cls.r2p;
  j["beta1"] = dec(cls.beta1, digits);
  j["beta2"] = dec(cls.beta2, digits);
  j["beta"] = dec(cls.beta, digits);
  j["beta_tilde"] = dec(cls.beta_tilde, digits);
  j["beta1_unique"] = cls.beta1_unique;
  j["beta2_unique"] = cls.beta2_unique;
  j["hyperbolic"] = cls.hyperbolic;
  j["expansive"] = cls.expansive;
  j["notes"] = cls.notes;
  return j;
}

Json rho_table_json(const RhoTable& t, unsigned digits) {
  WorkingPrecision guard(t.precision + kGuardDigits);
  Json j;
  j["n_min"] = t.n_min;
  j["n_max"] = t.n_max;
  Json values = Json::array();
  for (long n = t.n_min; n <= t.n_max; ++n)
    values.push_back({{"n", n}, {"rho", dec(t.at(n), digits)}, {"error", dec(t.error_at(n), 6)}});
  j["values"] = values;
  j["tail_below"] = tail_json(t.right_tail, digits);
  j["tail_above"] = tail_json(t.left_tail, digits);
  j["abs_sum"] = enclosure_json(t.abs_sum, digits);
  return j;
}

std::string rho_table_csv(const RhoTable& t, unsigned digits) {
  WorkingPrecision guard(t.precision + kGuardDigits);
  std::ostringstream out;
  out << "n,rho,abs_rho\n";
  for (long n = t.n_min; n <= t.n_max; ++n) out << n << ',' << dec(t.at(n), digits) << ',' << dec(abs(t.at(n)), digits) << '\n';
  return out.str();
}

Json conditions_json(const ConditionReport& rep, unsigned digits) {
  Json j;
  j["mu_chain"] = flag_json(rep.mu_chain, digits);
  j["reciprocal_sum"] = flag_json(rep.reciprocal_sum, digits);
  j["weighted_sum"] = flag_json(rep.weighted_sum, digits);
  j["weighted_sum_tilde"] = flag_json(rep.weighted_sum_tilde, digits);
  j["residue_bound"] = flag_json(rep.residue_bound, digits);
  j["applicable_theorems"] = rep.applicable_theorems;
  return j;
}

Json spectrum_json(const SpectrumReport& rep, unsigned digits) {
  // Enclosures are printed at the certified digits so that separated values print apart.
  WorkingPrecision guard(std::max(digits, rep.precision) + kGuardDigits);
  const unsigned enc_digits = std::max(digits, rep.precision);
  Json j;
  j["certified_digits"] = rep.precision;
  j["e"] = enclosure_json(rep.e, enc_digits);
  Json ek = Json::array();
  for (const auto& e : rep.e_k) ek.push_back(enclosure_json(e, enc_digits));
  j["e_k"] = ek;
  Json mu = Json::array();
  for (const auto& m : rep.mu) mu.push_back(dec(m, digits));
  j["mu"] = mu;
  j["conditions"] = conditions_json(rep.conditions, digits);
  j["applicable_theorems"] = rep.applicable_theorems;
  j["coding_defect_e"] = dec(rep.coding_defect_e, 6);
  Json cd = Json::array();
  for (const auto& d : rep.coding_defect_e_k) cd.push_back(dec(d, 6));
  j["coding_defect_e_k"] = cd;
  j["series_order"] = rep.order;
  return j;
}

std::string spectrum_csv(const SpectrumReport& rep, unsigned digits) {
  WorkingPrecision guard(std::max(digits, rep.precision) + kGuardDigits);
  digits = std::max(digits, rep.precision);
  std::ostringstream out;
  out << "k,e_k_lo,e_k_hi\n";
  for (std::size_t k = 0; k < rep.e_k.size(); ++k)
    out << k << ',' << dec(rep.e_k[k].lo, digits) << ',' << dec(rep.e_k[k].hi, digits) << '\n';
  out << "inf," << dec(rep.e.lo, digits) << ',' << dec(rep.e.hi, digits) << '\n';
  return out.str();
}

Json xi_json(const XiElement& g, unsigned digits) {
  Json j;
  j["k"] = g.k;
  Json polys = Json::array();
  for (const auto& poly : g.g) {
    Json coeffs = Json::array();
    for (const auto& c : poly) coeffs.push_back({dec(c.re, digits), dec(c.im, digits)});
    polys.push_back(coeffs);
  }
  j["weights"] = polys;
  if (g.exact) {
    Json exact = Json::array();
    for (const auto& poly : *g.exact) {
      Json coeffs = Json::array();
      for (const auto& [re, im] : poly) coeffs.push_back({to_decimal(re), to_decimal(im)});
      exact.push_back(coeffs);
    }
    j["exact_weights"] = exact;
  }
  return j;
}

std::string orbit_csv(const OrbitSample& o, unsigned digits) {
  WorkingPrecision guard(o.digits);
  std::ostringstream out;
  out << "n,x,u,eps,s\n";
  for (long n = o.n_lo; n <= o.n_hi; ++n) {
    out << n << ',' << dec(o.x_at(n), digits) << ',' << to_decimal(o.u_at(n)) << ',' << dec(o.eps_at(n), digits) << ',';
    if (n <= o.s_hi()) out << to_decimal(o.s_at(n));
    out << '\n';
  }
  return out.str();
}

}  // namespace mlspec
