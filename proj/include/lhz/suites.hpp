#ifndef LHZ_SUITES_HPP
#define LHZ_SUITES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lhz/corpus.hpp"

namespace lhz {

// One row of every suite report.
struct ReportRecord {
  std::string suite;
  json params = json::object();
  std::string check_id;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool pass = false;
  std::string notes;
};

json to_json(const ReportRecord& r);
ReportRecord record_from_json(const json& j);
/// Tab-separated, header first.
std::string to_tsv(const std::vector<ReportRecord>& records);

struct SuiteConfig {
  std::string suite;
  json params = json::object();  // suite-specific; numbers or "inf"
  std::vector<std::string> corpus;
  std::uint64_t seed = 20240601;
};

/// {"suite": ..., "params": {...}, "corpus": [...], "seed": ...}
SuiteConfig config_from_json(const json& j);

struct SuiteOutcome {
  std::vector<ReportRecord> records;
  int exit_code = 0;  // 0 all pass, 1 some check failed, 2 bad config or hypotheses
  std::string diagnostic;
};

const std::vector<std::string>& suite_names();
SuiteOutcome run_suite(const SuiteConfig& config);

}  // namespace lhz

#endif
