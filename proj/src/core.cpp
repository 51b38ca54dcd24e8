#include "weld/core.hpp"

#include <algorithm>
#include <sstream>

namespace weld {

std::size_t GaussCode::passage_count() const noexcept {
  std::size_t total = 0;
  for (const auto& c : components) total += c.size();
  return total;
}

std::set<CrossingId> GaussCode::crossings() const {
  std::set<CrossingId> out;
  for (const auto& c : components)
    for (const auto& p : c) out.insert(p.crossing);
  return out;
}

CrossingId GaussCode::max_crossing() const noexcept {
  CrossingId m = 0;
  for (const auto& c : components)
    for (const auto& p : c) m = std::max(m, p.crossing);
  return m;
}

std::string to_string(const Passage& p) {
  return std::string(1, role_char(p.role)) + std::to_string(p.crossing) + sign_char(p.sign);
}

Component rotated(const Component& word, std::size_t start) {
  if (word.empty()) return word;
  Component out;
  out.reserve(word.size());
  for (std::size_t i = 0; i < word.size(); ++i) out.push_back(word[(start + i) % word.size()]);
  return out;
}

bool same_up_to_rotation(const Component& a, const Component& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  for (std::size_t s = 0; s < a.size(); ++s) {
    bool match = true;
    for (std::size_t i = 0; i < a.size() && match; ++i) match = a[(s + i) % a.size()] == b[i];
    if (match) return true;
  }
  return false;
}

bool same_up_to_rotation(const GaussCode& a, const GaussCode& b) {
  if (a.components.size() != b.components.size()) return false;
  for (std::size_t i = 0; i < a.components.size(); ++i)
    if (!same_up_to_rotation(a.components[i], b.components[i])) return false;
  return true;
}

std::string to_string(Rule rule) {
  switch (rule) {
    case Rule::SignMismatch: return "sign-mismatch";
    case Rule::MissingOver: return "missing-over";
    case Rule::MissingUnder: return "missing-under";
    case Rule::DuplicateOver: return "duplicate-over";
    case Rule::DuplicateUnder: return "duplicate-under";
    case Rule::DuplicateEssential: return "duplicate-essential";
    case Rule::DuplicateContractible: return "duplicate-contractible";
    case Rule::MissingEssential: return "missing-essential";
    case Rule::MissingContractible: return "missing-contractible";
    case Rule::ChamberCount: return "chamber-count";
    case Rule::MixedTorusForm: return "mixed-torus-form";
    case Rule::UnsignedCrossing: return "unsigned-crossing";
  }
  return "unknown";
}

std::string ValidationReport::summary() const {
  if (ok()) return "ok";
  std::ostringstream out;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) out << '\n';
    out << violations[i].message;
  }
  return out.str();
}

ValidationError::ValidationError(ValidationReport report)
    : std::runtime_error(report.summary()), report_(std::move(report)) {}

namespace {

Violation make_violation(Rule rule, CrossingId c, const std::string& text) {
  return {rule, c, text + " " + std::to_string(c)};
}

}  // namespace

ValidationReport validate_gauss_code(const GaussCode& code) {
  struct Seen {
    int overs = 0;
    int unders = 0;
    std::set<Sign> signs;
  };
  std::map<CrossingId, Seen> seen;
  for (const auto& comp : code.components) {
    for (const auto& p : comp) {
      auto& s = seen[p.crossing];
      (p.role == Role::Over ? s.overs : s.unders) += 1;
      s.signs.insert(p.sign);
    }
  }

  ValidationReport report;
  for (const auto& [c, s] : seen) {
    if (s.overs == 0) report.violations.push_back(make_violation(Rule::MissingOver, c, "missing Over passage at crossing"));
    if (s.unders == 0) report.violations.push_back(make_violation(Rule::MissingUnder, c, "missing Under passage at crossing"));
    if (s.overs > 1) report.violations.push_back(make_violation(Rule::DuplicateOver, c, "duplicate Over passage at crossing"));
    if (s.unders > 1) report.violations.push_back(make_violation(Rule::DuplicateUnder, c, "duplicate Under passage at crossing"));
    if (s.signs.size() > 1) report.violations.push_back(make_violation(Rule::SignMismatch, c, "sign mismatch at crossing"));
  }
  return report;
}

ValidationReport validate_solid_ribbon(const SolidRibbonData& data) {
  ValidationReport report;
  std::map<CrossingId, int> essential_count;
  std::map<CrossingId, int> contractible_count;

  for (std::size_t t = 0; t < data.tori.size(); ++t) {
    const auto& torus = data.tori[t];
    if (torus.chambers.size() != torus.essentials.size()) {
      report.violations.push_back({Rule::ChamberCount, std::nullopt,
                                   "chamber count " + std::to_string(torus.chambers.size()) +
                                       " differs from essential count " +
                                       std::to_string(torus.essentials.size()) + " on torus " +
                                       std::to_string(t)});
    }
    if (!torus.essentials.empty() && !torus.loose.empty()) {
      report.violations.push_back({Rule::MixedTorusForm, std::nullopt,
                                   "torus " + std::to_string(t) +
                                       " has both essentials and chamberless contractibles"});
    }
    for (auto e : torus.essentials) ++essential_count[e];
    for (const auto& chamber : torus.chambers)
      for (auto c : chamber) ++contractible_count[c];
    for (auto c : torus.loose) ++contractible_count[c];
  }

  std::set<CrossingId> all;
  for (const auto& [c, n] : essential_count) all.insert(c);
  for (const auto& [c, n] : contractible_count) all.insert(c);
  for (const auto& [c, s] : data.signs) all.insert(c);

  for (auto c : all) {
    const int e = essential_count.count(c) ? essential_count.at(c) : 0;
    const int k = contractible_count.count(c) ? contractible_count.at(c) : 0;
    if (e > 1) report.violations.push_back(make_violation(Rule::DuplicateEssential, c, "duplicate essential"));
    if (k > 1) report.violations.push_back(make_violation(Rule::DuplicateContractible, c, "duplicate contractible"));
    if (e == 0) report.violations.push_back(make_violation(Rule::MissingEssential, c, "missing essential"));
    if (k == 0) report.violations.push_back(make_violation(Rule::MissingContractible, c, "missing contractible"));
    if (!data.signs.count(c)) report.violations.push_back(make_violation(Rule::UnsignedCrossing, c, "no sign for crossing"));
  }
  return report;
}

void require_valid(const GaussCode& code) {
  auto report = validate_gauss_code(code);
  if (!report.ok()) throw ValidationError(std::move(report));
}

void require_valid(const SolidRibbonData& data) {
  auto report = validate_solid_ribbon(data);
  if (!report.ok()) throw ValidationError(std::move(report));
}

}  // namespace weld
