#pragma once

#include <string>
#include <vector>

#include "pqnb/expr.hpp"

namespace pqnb {

struct ReportItem {
  std::string label;    // stable identifier, e.g. "poisson"
  std::string detail;   // the identity being checked, human readable
  ZeroVerdict verdict;
};

// Per-axiom verdicts for a structure check; overall pass iff every item passes.
struct VerificationReport {
  std::string subject;
  SamplingPolicy policy;
  std::vector<ReportItem> items;

  void add(std::string label, std::string detail, ZeroVerdict v);
  const ReportItem* find(const std::string& label) const;
  bool passed() const;

  std::string to_text() const;
  std::string to_json_string() const;  // machine-readable, deterministic
};

}  // namespace pqnb
