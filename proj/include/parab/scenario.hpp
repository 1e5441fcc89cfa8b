#ifndef PARAB_SCENARIO_HPP
#define PARAB_SCENARIO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "parab/comparison_lab.hpp"
#include "parab/config.hpp"
#include "parab/residual_certifier.hpp"

namespace parab {

struct CertifyEntry {
  std::string case_id;
  std::string profile;
  double sigma = 0.0;
  double a = 0.0, b = 0.0;
  double c = 0.0, p = 0.0, R = 0.0, r_star = 0.0;
  double a_limit = 0.0;
  double worst_residual = 0.0;
  bool passed = false;
  std::string error;  // nonempty when the build itself failed
};

struct CertifySummary {
  std::vector<CertifyEntry> entries;
  bool all_passed = false;
  std::string output_dir;
};

// Builds barriers for every requested case (dispatching on the sigma sweep),
// certifies them, and writes barriers.csv, certificates.csv, alimits.csv and
// summary.md into the output dir. Returns nonzero-worthy state in
// all_passed.
CertifySummary run_certify(const ScenarioConfig& cfg, std::ostream& log);

// Aggregates artifacts found in cfg.output_dir into report.md (+ report.csv);
// missing artifacts are listed and the report is still emitted.
int run_report(const ScenarioConfig& cfg, std::ostream& log);

// Resolves the output directory: env override first (PARAB_OUT_DIR), then
// the config value.
std::string resolve_output_dir(const ScenarioConfig& cfg);

}  // namespace parab

#endif
