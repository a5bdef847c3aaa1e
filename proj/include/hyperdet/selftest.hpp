#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hyperdet {

enum class SelftestLevel { Quick, Full };

struct SelftestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the invariant suites; `progress` (may be null) receives one line per check.
std::vector<SelftestCheck> run_selftest(SelftestLevel level, int jobs, std::ostream* progress);

}  // namespace hyperdet
