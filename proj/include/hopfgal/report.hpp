/**
 * @file report.hpp
 * @brief Check reports and error kinds shared by every module.
 */
#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hopfgal {

/// Error category; maps onto the CLI exit codes 2 (input) and 3 (internal).
enum class ErrorKind { input, internal };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& what)
      : std::runtime_error(what), kind_(kind), code_(std::move(code)) {}
  ErrorKind kind() const { return kind_; }
  const std::string& code() const { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

inline Error input_error(std::string code, const std::string& what) {
  return Error(ErrorKind::input, std::move(code), what);
}
inline Error internal_error(std::string code, const std::string& what) {
  return Error(ErrorKind::internal, std::move(code), what);
}

struct Check {
  std::string name;
  bool passed = true;
  bool skipped = false;
  std::string witness;  // failing basis indices, empty on pass
  std::string note;
};

class Report {
 public:
  Report() = default;
  explicit Report(std::string title) : title_(std::move(title)) {}

  const std::string& title() const { return title_; }
  const std::vector<Check>& checks() const { return checks_; }

  Check& add(std::string name, bool passed, std::string witness = {}, std::string note = {}) {
    checks_.push_back(Check{std::move(name), passed, false, std::move(witness), std::move(note)});
    return checks_.back();
  }
  Check& skip(std::string name, std::string note) {
    checks_.push_back(Check{std::move(name), true, true, {}, std::move(note)});
    return checks_.back();
  }
  /// Appends every check of another report, prefixing names.
  void merge(const Report& o, const std::string& prefix = {}) {
    for (auto c : o.checks_) {
      if (!prefix.empty()) c.name = prefix + "." + c.name;
      checks_.push_back(std::move(c));
    }
  }

  bool passed() const {
    for (const auto& c : checks_)
      if (!c.passed) return false;
    return true;
  }
  const Check* find(const std::string& name) const {
    for (const auto& c : checks_)
      if (c.name == name) return &c;
    return nullptr;
  }
  bool passed(const std::string& name) const {
    const Check* c = find(name);
    return c != nullptr && c->passed;
  }
  std::vector<const Check*> failures() const {
    std::vector<const Check*> f;
    for (const auto& c : checks_)
      if (!c.passed) f.push_back(&c);
    return f;
  }

  std::string summary() const {
    std::ostringstream os;
    os << title_ << ":";
    for (const auto& c : checks_) {
      os << "\n  [" << (c.skipped ? "skip" : c.passed ? "ok" : "FAIL") << "] " << c.name;
      if (!c.witness.empty()) os << " witness=" << c.witness;
      if (!c.note.empty()) os << " (" << c.note << ")";
    }
    return os.str();
  }

 private:
  std::string title_;
  std::vector<Check> checks_;
};

/// Formats a tuple of basis indices as "(i,j,k)".
template <class... Ts>
std::string witness(const Ts&... xs) {
  std::ostringstream os;
  os << "(";
  bool first = true;
  ((os << (first ? "" : ",") << xs, first = false), ...);
  os << ")";
  return os.str();
}

}  // namespace hopfgal
