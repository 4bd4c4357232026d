#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "amal/coset_enum.hpp"
#include "amal/mataction.hpp"
#include "amal/permgroup.hpp"
#include "amal/presentation.hpp"
#include "amal/report.hpp"

namespace amal::lab {

[[noreturn]] void fail(const std::string &msg);

// The concrete realization of the n = 4 pair on the 31 nonzero vectors of
// F_2^5: the line stabilizer g1 = <a1..a12>, the plane stabilizer
// g2 = <a1..a11, a13>, their intersection b = <a1..a11>, and the named
// subgroups the verification suites interrogate.
struct Context {
  mat::GeneratorTable table; // n = 4
  std::uint32_t degree = 31;
  std::vector<perm::Perm> a; // a[1..13]; a[0] is unused
  perm::PermGroup g1, g2, b;

  // subgroup generator lists (indices into a):
  std::vector<perm::Perm> core_gens;             // O2(g1): a1 a2 a4 a7 a8 a9 a10
  std::vector<perm::Perm> translations_gens;     // a1 a2 a4 a7 (regular 2^4)
  std::vector<perm::Perm> dual_translations_gens; // a7 a8 a9 a10
  std::vector<perm::Perm> mixed_abelian_gens;    // a7 a4 a8 a9
  std::vector<perm::Perm> diagonal_abelian_gens; // a7 a4 a1a9 a2a8
  std::vector<perm::Perm> plane_line_gens;       // a7 a4
  std::vector<perm::Perm> core2_gens;            // O2(g2): a1 a2 a4 a5 a6 a7 a8 a9
  std::vector<perm::Perm> levi_gens;             // a3 a5 a6 a11 a12
  std::vector<perm::Perm> linear_part_g2_gens;   // a3 a5 a6 a8 a9 a10 a11 a13

  mat::WordTable shared_words; // breadth-first words over <a1..a11> (3072)

  perm::Perm perm_of_word(const std::vector<std::size_t> &gen_ids) const;
  gf2::Matrix matrix_of_genword(const fp::Word &w) const; // letters over a1..a13
};

Context build_context();

// A verified automorphism of b, tabulated element-wise.
struct Twist {
  std::string name;       // id, alpha, beta, alphabeta
  perm::GenMap map;       // images of a1..a11
  perm::HomTable table;   // exhaustive over the 3072 elements
  std::vector<fp::Word> gen_words; // sigma(a_i) as words in a1..a11 (1-based index i-1)

  perm::Perm apply(const perm::Perm &p) const { return table.apply(p); }
};

struct Twists {
  Twist id, alpha, beta, alphabeta;
  const Twist &by_name(const std::string &name) const;
};

// alpha multiplies by the central involution outside the unique index-2
// subgroup above the core; beta is the table map a1 -> a1 a7 a9,
// a2 -> a2 a7 a8. Both are verified exhaustively; construction fails
// loudly if verification fails.
Twists build_twists(const Context &ctx);

rep::Report structure_suite_g1(const Context &ctx);
rep::Report structure_suite_g2(const Context &ctx);
rep::Report structure_suite_b(const Context &ctx);
rep::Report module_suite(const Context &ctx);
rep::Report complement_suite(const Context &ctx);
rep::Report twist_suite(const Context &ctx, const Twists &tw);
rep::Report faithfulness_suite(const Context &ctx, const Twists &tw);

// The thirteen-generator presentation of the universal completion of the
// twisted amalgam: involutions, the four power relations, commutator
// relations [a_i, a_j] w(i, j) for the remaining pairs below 13, and the
// twisted relations [a_i, a13] w for i <= 11. Every relator is evaluated
// back into matrices as a self-test.
fp::Presentation derive_presentation(const Context &ctx, const Twist &sigma);

// Relators of p involving only the named generators, reindexed.
fp::Presentation restrict_presentation(const fp::Presentation &p,
                                       const std::vector<std::string> &gen_names);

std::vector<fp::Word> mathieu_extra_relators(const fp::Presentation &p);
std::vector<fp::Word> held_extra_relators(const fp::Presentation &p);

// Subgroup generator words for the completion runs.
std::vector<fp::Word> generator_words(const fp::Presentation &p,
                                      const std::vector<std::string> &names);

// Certified order of the permutation image of a closed table: the chain
// product must reach index * stabilizer_bound, where stabilizer_bound is a
// proven upper bound for the order of the subgroup image (from a closed
// enumeration of the subgroup's own presentation over the trivial
// subgroup). Returns 0 if certification fails.
std::uint64_t certified_image_order(const fp::CosetTable &t,
                                    const std::vector<fp::Word> &subgroup_words,
                                    std::uint64_t stabilizer_bound);

} // namespace amal::lab
