#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "blockheight/blocktheory.hpp"

namespace blockheight {

nlohmann::json em_report_json(const EMReport& rep);
std::string em_report_text(const EMReport& rep);
nlohmann::json block_partition_json(const CharacterTable& t, const BlockPartition& bp);

/// One corpus verification: a group (or imported table) checked at a set of
/// primes against optional pinned expectations.
struct CorpusEntryResult {
  std::string name;
  uint64_t p = 0;
  bool errored = false;
  std::string error;
  nlohmann::json report;               // em_report_json output
  std::vector<std::string> expectation_failures;
  std::string worst_verdict;           // holds | open | mismatch | error
};

struct CorpusReport {
  std::vector<CorpusEntryResult> results;
  int exit_code = 0; // 0 clean, 2 mismatch or failed expectation, 65 entry error
  nlohmann::json to_json() const;
  std::string summary_text() const;
};

/// Runs every *.json entry in the directory (sorted by filename) on a small
/// worker pool; the report order is independent of scheduling.
CorpusReport run_corpus(const std::string& directory, unsigned workers,
                        uint64_t cap = kDefaultEnumerationCap);

} // namespace blockheight
