#pragma once

#include <string>
#include <vector>

#include "kdon/common.hpp"

namespace kdon {

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string detail;      // first mismatching coefficient, or a short note
  bool window_hit = false;  // failed because a series window was exhausted
};

struct VerifyReport {
  std::string suite;
  bool pass = true;
  bool retried = false;  // a window failure triggered a wider-window rerun
  std::vector<CheckResult> checks;
};

// Known suite names, in canonical order ("all" excluded).
const std::vector<std::string>& verify_suites();

// Run one named suite (or "all").  d_max <= 0 selects the suite's published
// depth.  A window failure reruns the suite once with q_margin doubled.
VerifyReport run_verify(const std::string& suite, i64 d_max = 0, i64 q_margin = 4, int jobs = 0);

}  // namespace kdon
