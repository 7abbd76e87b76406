#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fdnoma/config.hpp"

namespace fdnoma {

struct VerifyOptions {
  SimConfig base;                  ///< geometry and seed source; each check pins what it relies on
  bool corrupt_gain_sign = false;  ///< negative control: flips one channel gain in the invariant checks
};

struct VerifyCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Fast self-check: solver oracles against each other and model invariants.
std::vector<VerifyCheck> run_verify(const VerifyOptions& options);

/// One `PASS|FAIL  name  detail` line per check.
void write_verify_table(std::ostream& out, const std::vector<VerifyCheck>& checks);

bool all_passed(const std::vector<VerifyCheck>& checks);

}  // namespace fdnoma
