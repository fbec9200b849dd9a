#pragma once

#include <string>

#include "tlcga/syntax.hpp"

namespace test_helpers {

inline tlcga::Formula f(const std::string& text, tlcga::Dialect d = tlcga::Dialect::tlcga_plus) {
  return tlcga::parse_state_formula(text, d);
}

inline tlcga::Formula fv(const std::string& text, const std::set<std::string>& vars) {
  return tlcga::parse_state_formula(text, tlcga::Dialect::mu, vars);
}

inline tlcga::GoalAssignment ga(const std::string& text) { return f(text)->goals; }

}  // namespace test_helpers
