// Dedicated acceptance runner: executes all eleven criteria at the full tier
// and prints one pass/fail line per criterion.  Exit code 0 iff every
// criterion passed.

#include <iostream>

#include "rdiag/acceptance.hpp"

int main() {
  const std::vector<rdiag::CriterionResult> results =
      rdiag::run_acceptance(rdiag::Tier::full);
  const bool ok = rdiag::print_acceptance_report(std::cout, results);
  return ok ? 0 : 1;
}
