#ifndef OCTPLANE_VERIFY_HPP
#define OCTPLANE_VERIFY_HPP

#include <nlohmann/json.hpp>

#include "octplane/hermitian.hpp"
#include "octplane/moufang.hpp"

namespace octplane {

/// Named, seeded check suites over one field/polarity configuration, and the
/// report machinery shared by the shared-library surface and the CLI.
///
/// Determinism contract: a check's outcome is a pure function of
/// (field, polarity type, samples, seed). Per-check seeds derive as
/// splitmix64(seed ^ fnv1a64(check name)), and each sample inside a check
/// draws from its own generator seeded by (check seed, sample index), so
/// results do not depend on evaluation order or worker count.

struct RunConfig {
  FieldKind field = FieldKind::Rationals;
  std::vector<EtaType> types;              // resolved polarity types to run
  std::vector<std::string> skipped_types;  // e.g. "iv: needs characteristic 2"
  int samples = 1000;
  uint64_t seed = 42;
  std::vector<std::string> checks;  // empty = every applicable check
  int jobs = 1;
  bool fault_adjoint = false;

  /// Parses "i|ii|iii|iv|all" against the field, filling types/skipped_types.
  /// Throws ConfigError for an explicitly requested incompatible pair.
  static RunConfig make(const std::string& field, const std::string& polarity, int samples,
                        uint64_t seed, const std::vector<std::string>& checks, int jobs);

  nlohmann::json to_json() const;
};

struct CheckResult {
  std::string check;
  std::string field;
  std::string type;  // polarity type, for the per-type checks
  bool pass = true;
  bool skipped = false;
  std::string skip_reason;
  int samples = 0;
  uint64_t seed = 0;
  nlohmann::json counterexample;

  nlohmann::json to_json() const;
};

/// All check names in their fixed run order.
std::vector<std::string> check_names();

/// Runs the configured checks; report layout
///   {"version":1, "config":{...}, "results":[...]}.
nlohmann::json run_verify(const RunConfig& config);

bool report_all_passed(const nlohmann::json& report);

/// `count` distinct absolute points for the first configured polarity type,
/// produced through the canonical fiber solver (the fixed-space sampler for
/// type IV), serialized as a JSON array.
nlohmann::json absolute_points(const RunConfig& config, int count);

}  // namespace octplane

#endif
