#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "amal/coset_enum.hpp"
#include "amal/permgroup.hpp"
#include "amal/report.hpp"

namespace amal::graph {

[[noreturn]] void fail(const std::string &msg);

// The bipartite incidence graph of a completion: part 1 holds the cosets
// of the line-stabilizer image, part 2 the cosets of the plane-stabilizer
// image; adjacency is the orbit of the base edge under the generators.
// Combined points: part 1 is [0, n1), part 2 is [n1, n1 + n2).
struct Delta {
  std::uint32_t n1 = 0, n2 = 0;
  std::uint32_t val1 = 0, val2 = 0;
  std::vector<std::uint32_t> adj1; // n1 rows of val1 part-2 combined indices, sorted
  std::vector<std::uint32_t> adj2; // n2 rows of val2 part-1 indices, sorted
  std::vector<perm::Perm> action;  // one generator on the combined domain

  std::uint32_t degree() const { return n1 + n2; }
  const std::uint32_t *row1(std::uint32_t u) const { return adj1.data() + std::size_t(u) * val1; }
  const std::uint32_t *row2(std::uint32_t w) const { return adj2.data() + std::size_t(w) * val2; }
};

Delta build_delta(const fp::CosetTable &t1, const fp::CosetTable &t2);

// Distance-two graph on part 1; valency 14 when every part-2 vertex links
// its three neighbours into a triangle.
struct Gamma {
  std::uint32_t n = 0;
  std::uint32_t valency = 0;
  bool regular = false;
  std::vector<std::uint32_t> adj; // n rows of `valency` part-1 indices, sorted
  const std::uint32_t *row(std::uint32_t u) const {
    return adj.data() + std::size_t(u) * valency;
  }
};

Gamma gamma_component(const Delta &d);

perm::Perm combined_word_image(const fp::CosetTable &t1, const fp::CosetTable &t2,
                               const fp::Word &w);

// The induced permutation group on a generator-invariant point set.
perm::PermGroup induced_on_points(const std::vector<perm::Perm> &gens,
                                  const std::vector<std::uint32_t> &points);

struct GraphInputs {
  const Delta *delta = nullptr;
  std::uint64_t completion_order = 0;   // certified upstream
  std::uint64_t vertex_stab_order = 0;  // 21504 for the targets here
  std::vector<perm::Perm> part1_stab_seeds; // known elements fixing combined point 0
  std::vector<perm::Perm> part2_stab_seeds; // known elements fixing combined point n1
  std::vector<std::uint32_t> spot_vertices; // extra part-1 base vertices for tower reruns
};

// Local-structure verification: valencies and double counts, the
// distance-two graph (connected, 14-regular, one triangle per edge),
// transitivity and the induced actions at a vertex and a triangle, the
// kernel on the neighbourhood, and both stabilizer towers.
rep::Report check_axioms(const GraphInputs &in);

void export_edges(const Delta &d, std::ostream &os);

} // namespace amal::graph
