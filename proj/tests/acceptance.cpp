// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Run via ctest or directly.

#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "acceptance_criteria.hpp"

int main() {
  struct Criterion {
    const char* name;
    std::function<void()> run;  // throws on failure
  };
  const std::vector<Criterion> criteria = {
      {"reconstruction round trip, all groups of order <= 8",
       acceptance::reconstruction_round_trip},
      {"non-regular cube detected with exact line witness",
       acceptance::nonregular_witness},
      {"regularity equivalences agree on random cubes",
       acceptance::regularity_equivalences},
      {"diagonal group orders match the closed formula",
       acceptance::diagonal_group_orders},
      {"primitivity classification matches the block oracle",
       acceptance::primitivity_classification},
      {"distance procedure and diameter formula match search",
       acceptance::graph_metrics},
      {"chromatic numbers and proper colorings check out",
       acceptance::chromatic_results},
      {"grid and diagonal graph recovery round trips",
       acceptance::recovery_round_trips},
      {"quotient homomorphism preserves edges and colorings",
       acceptance::homomorphism_checks},
      {"twelve-cell fixture: commuting but incompatible join",
       acceptance::compatibility_counterexample},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    try {
      c.run();
      std::printf("PASS: %s\n", c.name);
    } catch (const std::exception& e) {
      std::printf("FAIL: %s: %s\n", c.name, e.what());
      ++failures;
    } catch (...) {
      std::printf("FAIL: %s: unknown error\n", c.name);
      ++failures;
    }
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
