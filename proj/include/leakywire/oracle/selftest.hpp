#pragma once

#include <string>
#include <vector>

namespace leakywire::oracle {

struct SelftestCase {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelftestReport {
  std::vector<SelftestCase> cases;
  bool all_passed() const;
};

// Runs every oracle comparison (special functions, quadrature, transverse
// finite differences, alternate integration paths, zero counting, two-point
// levels). Deterministic.
SelftestReport run_selftest();

}  // namespace leakywire::oracle
