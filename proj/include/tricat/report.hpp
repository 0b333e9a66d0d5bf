#pragma once

// Check results shared by the verifiers and the CLI. The text and JSON
// renderings carry the same information.

#include <nlohmann/json.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace tricat {

enum class Verdict { pass, fail, undecided };

std::string to_string(Verdict v);

struct Violation {
  std::string check;
  std::string message;
  nlohmann::json witness;
};

struct CheckResult {
  CheckResult() = default;
  explicit CheckResult(std::string n) : name(std::move(n)) {}

  std::string name;
  Verdict verdict = Verdict::pass;
  std::size_t cases = 0;
  std::vector<Violation> violations;  // the first max_violations only
  std::size_t omitted = 0;
  std::vector<std::string> notes;

  static constexpr std::size_t max_violations = 25;

  bool passed() const { return verdict == Verdict::pass; }
  void fail(std::string message, nlohmann::json witness = nullptr);
  void undecided(std::string note);
  void note(std::string n) { notes.push_back(std::move(n)); }
};

struct Report {
  Report() = default;
  explicit Report(std::string t) : title(std::move(t)) {}

  std::string title;
  std::vector<CheckResult> checks;

  Verdict verdict() const;
  void add(CheckResult r) { checks.push_back(std::move(r)); }
  void merge(const Report& other);
};

// 0 pass, 2 any failure, 3 undecided without failures.
int exit_code(Verdict v);

std::string render_text(const Report& r);
nlohmann::json render_json(const Report& r);

}  // namespace tricat
