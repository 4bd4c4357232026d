#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace amal::rep {

struct Check {
  std::string id;
  std::string status; // "pass" | "fail" | "skip"
  std::string expected;
  std::string actual;
  double elapsed_ms = 0;
};

struct Report {
  std::string suite;
  std::vector<Check> checks;

  bool all_passed() const;
  void add(const std::string &id, bool pass, const std::string &expected,
           const std::string &actual);
  void add_eq(const std::string &id, std::uint64_t expected, std::uint64_t actual);
  void add_true(const std::string &id, bool value, const std::string &description);
  void skip(const std::string &id, const std::string &why);
  void merge(const Report &other);
};

} // namespace amal::rep
