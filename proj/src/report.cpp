#include "pqnb/report.hpp"

#include <sstream>

#include "json.hpp"

namespace pqnb {

void VerificationReport::add(std::string label, std::string detail, ZeroVerdict v) {
  items.push_back(ReportItem{std::move(label), std::move(detail), std::move(v)});
}

const ReportItem* VerificationReport::find(const std::string& label) const {
  for (const auto& it : items)
    if (it.label == label) return &it;
  return nullptr;
}

bool VerificationReport::passed() const {
  for (const auto& it : items)
    if (!it.verdict.is_zero()) return false;
  return true;
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  os << "check: " << subject << "  (seed " << policy.seed << ", " << policy.points
     << " points, tol " << policy.tolerance << ")\n";
  for (const auto& it : items) {
    os << "  [" << (it.verdict.is_zero() ? "ok" : "FAIL") << "] " << it.label << ": " << it.detail
       << " -> " << it.verdict.to_string() << "\n";
  }
  os << (passed() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string VerificationReport::to_json_string() const {
  nlohmann::ordered_json j;
  j["subject"] = subject;
  j["seed"] = policy.seed;
  j["policy"] = {{"points", policy.points},
                 {"tolerance", policy.tolerance},
                 {"guard", policy.guard}};
  j["overall"] = passed() ? "pass" : "fail";
  auto arr = nlohmann::ordered_json::array();
  for (const auto& it : items) {
    nlohmann::ordered_json ji;
    ji["label"] = it.label;
    ji["detail"] = it.detail;
    switch (it.verdict.kind) {
      case ZeroVerdict::Kind::ZeroExact:
        ji["verdict"] = "zero_exact";
        break;
      case ZeroVerdict::Kind::ZeroNumeric:
        ji["verdict"] = "zero_numeric";
        ji["max_residual"] = it.verdict.residual;
        break;
      case ZeroVerdict::Kind::NonZero:
        ji["verdict"] = "nonzero";
        ji["residual"] = it.verdict.residual;
        ji["witness"] = it.verdict.witness;
        break;
    }
    arr.push_back(std::move(ji));
  }
  j["items"] = std::move(arr);
  return j.dump(2) + "\n";
}

}  // namespace pqnb
