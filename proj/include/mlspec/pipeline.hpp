// Command pipelines shared by the command-line tool and the Python module.
#pragma once

#include "mlspec/intertwine.hpp"
#include "mlspec/spectrum.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <exception>
#include <string>
#include <vector>

namespace mlspec {

using Json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUndecided = 2;
inline constexpr int kExitHypothesis = 3;
inline constexpr unsigned kDefaultPrecision = 60;
inline constexpr unsigned kMinPrecision = 30;

struct RunConfig {
  std::string poly;
  int k = 0;
  unsigned precision = kDefaultPrecision;
  long window_lo = -50;
  long window_hi = 50;
  /// Series order for e and e_k (0 picks one from the precision).
  int order = 0;
  int K = 6;
  std::uint64_t seed = 1;
  /// Omega_0 literal for decode.
  std::string word;
  /// encode/orbit use the witness with x_0 = -1/2 instead of a seeded element.
  bool half = false;
  std::vector<long> R{10, 20, 40};
  long a = 40;
  long b = 40;

  /// Throws Error when a field is out of range.
  void validate() const;
};

struct CommandResult {
  Json report;
  /// Tabular form where the command has one, else empty.
  std::string csv;
  int status = kExitOk;
};

const std::vector<std::string>& command_names();

/// Runs one command; library errors propagate as exceptions.
CommandResult run_command(const std::string& command, const RunConfig& config);

/// Machine-readable diagnostic and exit status for an exception.
Json error_json(const std::exception& e);
int exit_status(const std::exception& e);

std::string dec(const Real& x, unsigned digits);
Json enclosure_json(const Enclosure& x, unsigned digits);
Json roots_json(const RootClassification& cls, unsigned digits);
Json rho_table_json(const RhoTable& table, unsigned digits);
std::string rho_table_csv(const RhoTable& table, unsigned digits);
Json conditions_json(const ConditionReport& rep, unsigned digits);
Json spectrum_json(const SpectrumReport& rep, unsigned digits);
std::string spectrum_csv(const SpectrumReport& rep, unsigned digits);
Json xi_json(const XiElement& g, unsigned digits);
std::string orbit_csv(const OrbitSample& orbit, unsigned digits);

}  // namespace mlspec
