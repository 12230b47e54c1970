// Acceptance checks that need no external data: fixtures, hand-computed
// expectations, and synthetic corpora. Corpus-level checks live in
// acceptance_corpus.cpp.

#include <iostream>

#include "agtrack/error.hpp"
#include "agtrack/ontology.hpp"
#include "criteria.hpp"
#include "synthetic.hpp"

int main() {
  using namespace agtrack;
  try {
    std::vector<acceptance::Result> results;
    results.push_back(acceptance::lev_completeness());
    results.push_back(acceptance::lev_round_trip());
    results.push_back(acceptance::metrics_oracle());
    results.push_back(acceptance::tracker_fixture());
    results.push_back(acceptance::splits_105());
    results.push_back(acceptance::prompt_builder(testing::random_corpus(gpt_negochat_ontology(), 17, 120),
                                                 "synthetic corpus"));
    results.push_back(acceptance::prompt_builder(testing::table2_corpus(), "excerpt fixture"));
    return acceptance::report(results, std::cout);
  } catch (const std::exception& e) {
    std::cout << "FAIL acceptance harness: " << e.what() << '\n';
    return 1;
  }
}
