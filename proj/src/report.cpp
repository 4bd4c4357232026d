#include "amal/report.hpp"

namespace amal::rep {

bool Report::all_passed() const {
  for (const auto &c : checks)
    if (c.status == "fail")
      return false;
  return true;
}

void Report::add(const std::string &id, bool pass, const std::string &expected,
                 const std::string &actual) {
  checks.push_back({id, pass ? "pass" : "fail", expected, actual, 0});
}

void Report::add_eq(const std::string &id, std::uint64_t expected, std::uint64_t actual) {
  add(id, expected == actual, std::to_string(expected), std::to_string(actual));
}

void Report::add_true(const std::string &id, bool value, const std::string &description) {
  add(id, value, description, value ? description : "violated: " + description);
}

void Report::skip(const std::string &id, const std::string &why) {
  checks.push_back({id, "skip", why, "", 0});
}

void Report::merge(const Report &other) {
  for (const auto &c : other.checks) {
    Check copy = c;
    copy.id = other.suite.empty() ? c.id : other.suite + "." + c.id;
    checks.push_back(std::move(copy));
  }
}

} // namespace amal::rep
