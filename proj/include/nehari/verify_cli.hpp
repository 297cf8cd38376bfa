#pragma once

// Run configuration, the four commands (solve, aux, bounds, verify), the
// verification suite and report emission.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "nehari/nehari_solver.hpp"

namespace nehari::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kConfigError = 1, kNumericalFailure = 2 };

// Bad configuration; the message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  ModelParams params;
  // Unset means Cp = 1.1 x the admissible threshold, derived from m_p.
  std::optional<double> cp;
  int n = 64;
  GridScheme scheme = GridScheme::spectral_even;
  SearchConfig search;
  std::string out_dir = ".";
  // verify only: "" or "laplacian-sign".
  std::string inject_fault;

  bool auto_cp() const { return !cp.has_value(); }
};

inline constexpr double kAutoCpFactor = 1.1;

// Flat JSON: beta, q, p, Cp (number or "auto"), alpha0, delta,
// kirchhoff.kind, kirchhoff.g0, kirchhoff.a, n, scheme, starts, max_iter,
// tol, seed. Unknown keys and type mismatches raise ConfigError.
Json to_json(const RunConfig& cfg);
RunConfig from_json(const Json& doc, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

// Throws ConfigError. `degenerate` admits beta = 0 (verify only).
void validate_config(const RunConfig& cfg, bool degenerate = false);

struct CpResolution {
  double cp = 0.0;
  bool automatic = false;
  std::optional<AuxResult> aux;  // computed when automatic
  std::optional<CpThreshold> threshold;
};

// Fixes Cp: the configured value, or 1.1 x threshold from a fresh m_p.
CpResolution resolve_cp(const RunConfig& cfg, const GridPtr& grid);

Json to_json(const EnergyBreakdown& e);
Json to_json(const StartOutcome& s);
Json to_json(const GroundStateResult& r);
Json to_json(const AuxResult& a);
Json to_json(const BoundsReport& b);

enum class CheckStatus { pass, fail, skip };

struct SuiteCheck {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  double margin = 0.0;  // slack at the worst sample; negative on failure
  Json witness;         // where the worst sample occurred
  std::string detail;
  double seconds = 0.0;  // wall time; not part of the numeric payload
};

struct SuiteReport {
  std::vector<SuiteCheck> checks;
  // Conjunction over the non-skipped checks.
  bool overall() const;
  const SuiteCheck* find(const std::string& name) const;
};

Json to_json(const SuiteReport& r, bool with_timing = true);

// The full verification suite on cfg's parameters and grid.
SuiteReport run_suite(const RunConfig& cfg);

// Each writes its files into cfg.out_dir and returns an ExitCode.
int cmd_solve(const RunConfig& cfg);
int cmd_aux(const RunConfig& cfg);
int cmd_bounds(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);

// Parses argv (command, --config, flag overrides) and dispatches.
int run_cli(int argc, char** argv);

}  // namespace nehari::cli
