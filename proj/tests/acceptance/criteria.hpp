#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "agtrack/dialogue.hpp"

namespace agtrack::acceptance {

struct Result {
  std::string name;
  bool pass = false;
  std::string detail;
  /// Reported but excluded from the exit status.
  bool gated = true;
};

Result lev_completeness();
Result lev_round_trip();
Result metrics_oracle();
Result tracker_fixture();
Result splits_105();
Result prompt_builder(const Corpus& corpus, const std::string& label);

Result corpus_stats(const Corpus& corpus);
Result tracker_reference(const Corpus& corpus);

/// Prints one "PASS"/"FAIL" line per result; returns 0 when every gated
/// result passed, 1 otherwise.
int report(const std::vector<Result>& results, std::ostream& out);

}  // namespace agtrack::acceptance
