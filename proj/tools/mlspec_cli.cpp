// mlspec: batch front end for the recurrence-spectrum library.
#include "mlspec/errors.hpp"
#include "mlspec/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>

namespace {

unsigned default_precision() {
  if (const char* env = std::getenv("MLSPEC_PRECISION")) {
    try {
      return static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      std::cerr << "ignoring malformed MLSPEC_PRECISION=" << env << '\n';
    }
  }
  return mlspec::kDefaultPrecision;
}

const std::map<std::string, std::string>& descriptions() {
  static const std::map<std::string, std::string> d{
      {"validate", "check the standing assumptions on P"},
      {"roots", "certified roots and their classification"},
      {"rho", "table of rho_n with tail bounds"},
      {"identities", "convolution, matrix, Vandermonde and residue checks"},
      {"orbit", "x_n, u_n, eps_n and s_m of an element"},
      {"encode", "symbol sequence of an element with a roundtrip check"},
      {"decode", "element whose orbit realizes a finite sequence"},
      {"spectrum", "e and e_0..e_K for monic expansive P"},
      {"conditions", "sufficient conditions and applicable results"},
      {"realize", "periodic orbits with limsup close to 1/2"},
      {"selftest", "invariant suite on the two reference polynomials"},
  };
  return d;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw mlspec::Error("cannot open output file " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  mlspec::RunConfig config;
  config.precision = default_precision();
  std::string format = "json";
  std::string output;
  std::vector<long> window;

  CLI::App app{"Spectra of limsup ||x_n|| for integer linear recurrences"};
  app.require_subcommand(1, 1);
  app.option_defaults()->always_capture_default();

  for (const auto& name : mlspec::command_names()) {
    CLI::App* sub = app.add_subcommand(name, descriptions().at(name));
    if (name != "selftest") sub->add_option("--poly", config.poly, "P(X), e.g. \"X^2-20X+82\" or \"82,-20,1\"")->required();
    sub->add_option("--k", config.k, "multiplicity parameter: f = P^(k+1)");
    sub->add_option("--precision", config.precision, "decimal digits (env MLSPEC_PRECISION)")->check(CLI::Range(30u, 100000u));
    sub->add_option("--window", window, "window min max")->expected(2);
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output,-o", output, "output path (stdout when omitted)");
    if (name == "orbit" || name == "encode" || name == "selftest") sub->add_option("--seed", config.seed, "seed for the random element");
    if (name == "orbit" || name == "encode") sub->add_flag("--half", config.half, "use the witness with x_0 = -1/2");
    if (name == "decode") sub->add_option("--word", config.word, "sequence literal \"0^inf [t_M ... | t_0 ...]\"")->required();
    if (name == "spectrum") {
      sub->add_option("--K", config.K, "largest k for e_k");
      sub->add_option("--order", config.order, "series order (0 = automatic)");
    }
    if (name == "realize") {
      sub->add_option("--R", config.R, "values of R");
      sub->add_option("--a", config.a, "zeros before the marker");
      sub->add_option("--b", config.b, "zeros after the marker");
    }
  }

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();
  if (window.size() == 2) {
    config.window_lo = window[0];
    config.window_hi = window[1];
  }

  try {
    mlspec::CommandResult result = mlspec::run_command(command, config);
    if (format == "csv") {
      if (result.csv.empty()) throw mlspec::Error("command '" + command + "' has no CSV form");
      emit(result.csv, output);
    } else {
      emit(result.report.dump(2) + "\n", output);
    }
    return result.status;
  } catch (const std::exception& e) {
    std::cout << mlspec::error_json(e).dump(2) << '\n';
    std::cerr << "mlspec " << command << ": " << e.what() << '\n';
    return mlspec::exit_status(e);
  }
}
