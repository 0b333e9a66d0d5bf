#include "tricat/report.hpp"

#include <sstream>

namespace tricat {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::undecided:
      return "undecided";
  }
  return "?";
}

void CheckResult::fail(std::string message, nlohmann::json witness) {
  verdict = Verdict::fail;
  if (violations.size() >= max_violations) {
    ++omitted;
    return;
  }
  violations.push_back({name, std::move(message), std::move(witness)});
}

void CheckResult::undecided(std::string n) {
  if (verdict == Verdict::pass) verdict = Verdict::undecided;
  notes.push_back("undecided: " + n);
}

Verdict Report::verdict() const {
  Verdict v = Verdict::pass;
  for (const auto& c : checks) {
    if (c.verdict == Verdict::fail) return Verdict::fail;
    if (c.verdict == Verdict::undecided) v = Verdict::undecided;
  }
  return v;
}

void Report::merge(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return 0;
    case Verdict::fail:
      return 2;
    case Verdict::undecided:
      return 3;
  }
  return 2;
}

std::string render_text(const Report& r) {
  std::ostringstream out;
  if (!r.title.empty()) out << "# " << r.title << "\n";
  for (const auto& c : r.checks) {
    out << "[" << to_string(c.verdict) << "] " << c.name << " (" << c.cases << " cases)\n";
    for (const auto& n : c.notes) out << "  note: " << n << "\n";
    for (const auto& v : c.violations) {
      out << "  violation: " << v.message << "\n";
      if (!v.witness.is_null()) out << "    witness: " << v.witness.dump() << "\n";
    }
    if (c.omitted > 0) out << "  omitted: " << c.omitted << " further violations\n";
  }
  out << "verdict: " << to_string(r.verdict()) << "\n";
  return out.str();
}

nlohmann::json render_json(const Report& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    nlohmann::json vs = nlohmann::json::array();
    for (const auto& v : c.violations) vs.push_back({{"check", v.check}, {"message", v.message}, {"witness", v.witness}});
    checks.push_back({{"name", c.name},
                      {"verdict", to_string(c.verdict)},
                      {"cases", c.cases},
                      {"notes", c.notes},
                      {"violations", vs},
                      {"omitted", c.omitted}});
  }
  return {{"title", r.title}, {"checks", checks}, {"verdict", to_string(r.verdict())}};
}

}  // namespace tricat
