#pragma once

// End-to-end verification suite: eleven numbered criteria covering the
// radial spectral-measure pipeline, closed-form norms, subordination
// identities, determinant cross-checks, matrix Monte Carlo, and transform
// inverses.  Each criterion reports an observed statistic against its pinned
// bound.  The full tier runs the criteria exactly as specified (matrix sizes
// up to 512); the quick tier caps matrix sizes at 128 with correspondingly
// relaxed Monte Carlo bounds, as a fast smoke check.

#include <iosfwd>
#include <string>
#include <vector>

namespace rdiag {

enum class Tier { quick, full };

struct CriterionResult {
  int index = 0;
  std::string name;
  bool pass = false;
  double observed = 0.0;  // worst observed statistic
  double bound = 0.0;     // pinned tolerance it must stay within
  std::string detail;     // human-readable breakdown
  double seconds = 0.0;
};

std::vector<CriterionResult> run_acceptance(Tier tier);

// One line per criterion plus a summary; returns true iff all passed.
bool print_acceptance_report(std::ostream& out,
                             const std::vector<CriterionResult>& results);

}  // namespace rdiag
