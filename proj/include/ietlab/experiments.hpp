#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ietlab/error.hpp"
#include "ietlab/serialize.hpp"

namespace ietlab {

inline const std::vector<std::string>& experiment_kinds() {
  static const std::vector<std::string> k{"cfrac", "orbit", "induce", "dk", "tower", "essval", "cohom", "classify"};
  return k;
}

struct ExperimentConfig {
  int schema = 1;
  std::string kind;
  int bits = 256;
  std::uint64_t seed = 1;
  int threads = 1;
  long orbit_budget = 10'000'000;
  std::string out;  // output directory; empty prints the report to stdout only
  Json doc;         // whole document, kind-specific fields are read from here
};

// top-level overrides from the command line
struct ConfigOverrides {
  std::optional<int> bits;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> threads;
};

// Validates the top-level fields. `kind` (from the subcommand) must agree with the
// document's "kind" when both are present. ConfigError names the offending field.
ExperimentConfig parse_config(const Json& doc, const std::string& kind, const ConfigOverrides& ov = {});

// alpha spec: "golden", {"quotients": [...], "tail": [...], "extra_terms": n} or {"value": "...", "depth": n}
ContinuedFraction alpha_from_json(const Json& j, int bits, const std::string& field);

// Named cocycles ("sin", "cos", "sawtooth", "step", "zero", "chi", "indicator", "trig") or a
// full descriptor. `beta` is used when a sawtooth/step spec carries none; `alpha` feeds chi.
PiecewiseSmoothFn cocycle_spec(const Json& j, const Scalar& domain, int bits, const std::string& field,
                               const std::optional<Scalar>& beta = std::nullopt,
                               const std::optional<Scalar>& alpha = std::nullopt);

struct Artifacts {
  Json report;
  std::vector<std::pair<std::string, Csv>> tables;  // file stem, table
};

// One library entry point per kind; throws Error.
Artifacts run_experiment(const ExperimentConfig& c);

Json error_json(const Error& e);

// Runs, writes report.json and <kind>_<stem>.csv under c.out (or the report to `out`),
// error JSON to `err`. Returns 0, 1 (validation) or 2 (numeric failure).
int run(const ExperimentConfig& c, std::ostream& out, std::ostream& err);

}  // namespace ietlab
