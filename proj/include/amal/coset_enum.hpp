#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "amal/perm.hpp"
#include "amal/presentation.hpp"

namespace amal::fp {

// A closed, compacted, standardized coset table. Columns come in pairs
// [g0, g0^-1, g1, g1^-1, ...]; cosets are numbered in first-appearance
// order under a row-major scan with that column order, which makes the
// table bit-exact reproducible across runs and strategies.
class CosetTable {
public:
  CosetTable() = default;
  CosetTable(std::uint32_t ngens, std::uint32_t ncosets, std::vector<std::uint32_t> flat,
             std::uint64_t content_hash);

  std::uint32_t generator_count() const { return ngens_; }
  std::uint32_t index() const { return ncosets_; }
  std::uint64_t content_hash() const { return hash_; }
  const std::vector<std::uint32_t> &raw() const { return tab_; }

  std::uint32_t act(std::uint32_t coset, std::int32_t letter) const;
  std::uint32_t trace(std::uint32_t coset, const Word &w) const;

  // One permutation of the live cosets per generator; asserts that every
  // column is a bijection.
  std::vector<perm::Perm> generator_perms() const;

  // Relators act trivially everywhere and subgroup words fix coset 0.
  bool verify(const Presentation &p, const std::vector<Word> &subgroup_words) const;

  void write_cache(const std::string &path) const;
  static std::optional<CosetTable> read_cache(const std::string &path,
                                              std::uint64_t expected_hash);

private:
  std::uint32_t ngens_ = 0;
  std::uint32_t ncosets_ = 0;
  std::vector<std::uint32_t> tab_; // ncosets x 2*ngens
  std::uint64_t hash_ = 0;
};

enum class Strategy { hlt, felsch };

struct EnumOptions {
  std::uint64_t max_cosets = 5'000'000;
  Strategy strategy = Strategy::hlt;
};

struct EnumStats {
  std::uint64_t total_defined = 0;
  std::uint64_t live = 0;
  std::uint64_t lookaheads = 0;
  bool closed = false;
};

// Either a closed standardized table with the exact index, or an explicit
// exceeded-max-cosets outcome carrying the live/total statistics. Never a
// silent truncation.
struct EnumResult {
  std::optional<CosetTable> table;
  EnumStats stats;
};

EnumResult todd_coxeter(const Presentation &p, const std::vector<Word> &subgroup_words,
                        const EnumOptions &opts = {});

} // namespace amal::fp
