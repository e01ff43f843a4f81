#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scurve::demo {

/// One reference number from the Mn-Zn and representative loop examples.
struct Check {
  std::string name;
  double expected = 0.0;
  double actual = 0.0;
  double tolerance = 0.0;  // absolute, already resolved from any relative bound
  bool pass = false;
  std::string detail;  // set when the check could not be computed
  bool show_values = true;  // false for wall-clock checks
};

/// Loads the shipped fixtures from `fixture_dir` (representative_loop.json,
/// mnzn_upper.json, mnzn_lower.json) and evaluates every check. A fixture that
/// fails to load or analyze turns its checks into named failures.
std::vector<Check> run(const std::string& fixture_dir);

/// Fixed-format table, one line per check, byte-stable across runs.
void print(std::ostream& out, const std::vector<Check>& checks);

bool all_pass(const std::vector<Check>& checks);

}  // namespace scurve::demo
