#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace horodepth {

struct SelftestCheck {
  std::string module;
  std::string name;
  std::function<bool()> run;
};

/// Reduced-scale invariant checks, one group per module.
std::vector<SelftestCheck> selftest_checks();

/// Prints one "module check result" row per check; returns the failure count.
/// An exception inside a check counts as a failure.
int run_selftest(std::ostream& out);

}  // namespace horodepth
