#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "amal/gf2.hpp"
#include "amal/perm.hpp"

namespace amal::mat {

// Root-element generators of the two parabolic-type subgroups of
// AGL_n(2) <= L_{n+1}(2): the stabilizer of a distinguished translation
// line and the stabilizer of a translation plane containing it.
//
// Generators are unitriangular matrices with a single off-diagonal 1.
// Naming is fixed: a1, a2, ... first the subdiagonal positions (row, col)
// with row > col in row-major order, then the superdiagonal positions
// (i, i+1) for i = 2..n. For n = 4 this yields thirteen generators with
// a7 the central translation and a4 the second plane translation.
struct GeneratorTable {
  int n = 0; // ambient L_{n+1}(2)
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> positions; // 1-indexed (row, col)
  std::vector<gf2::Matrix> matrices;
  std::vector<std::size_t> line_stab_gens;   // generates B_n (a1..a12 for n = 4)
  std::vector<std::size_t> plane_stab_gens;  // generates C_n (a1..a11, a13)
  std::vector<std::size_t> shared_gens;      // generates B_n ∩ C_n (a1..a11)

  std::size_t index_of(const std::string &name) const;
  const gf2::Matrix &matrix_of(const std::string &name) const;
};

GeneratorTable build_generators(int n); // 3 <= n <= 8

// Permutation of the 2^d - 1 nonzero row vectors of F_2^d (ordered by
// ascending integer value of the bit pattern, point i <-> vector i + 1)
// induced by right multiplication.
perm::Perm to_permutation(const gf2::Matrix &m);

// Breadth-first factorization table over the group generated by the shared
// generators: every element receives the first word found with the fixed
// generator order a1 < a2 < ..., so factorizations are canonical
// shortest-by-construction words.
class WordTable {
public:
  WordTable() = default;
  WordTable(const GeneratorTable &table, const std::vector<std::size_t> &gen_ids,
            std::size_t expected_size = 0);

  std::size_t size() const { return order_.size(); }
  // word as generator-table indices; fails if the element is not in the group
  std::vector<std::size_t> factor(const gf2::Matrix &m) const;
  bool contains(const gf2::Matrix &m) const;
  gf2::Matrix evaluate(const std::vector<std::size_t> &word) const;
  const std::vector<gf2::Matrix> &elements() const { return order_; }

private:
  const GeneratorTable *table_ = nullptr;
  std::vector<gf2::Matrix> order_; // BFS order
  std::unordered_map<std::string, std::pair<std::int32_t, std::int32_t>>
      parent_; // key -> (predecessor index in order_, generator id), (-1,-1) at identity
};

} // namespace amal::mat
