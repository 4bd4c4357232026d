#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "amal/gf2.hpp"
#include "amal/perm.hpp"
#include "amal/permgroup.hpp"
#include "amal/presentation.hpp"

namespace amal::mod {

[[noreturn]] void fail(const std::string &msg);

// GF(2)-coordinates for an elementary abelian section P/K of a small
// group of permutations: every element of P receives the coordinate
// vector of its coset; basis_reps realize the standard basis.
struct Section {
  int dim = 0;
  std::vector<perm::Perm> basis_reps;
  std::unordered_map<std::string, gf2::word_t> coord_of;

  gf2::word_t coords(const perm::Perm &p) const;
  bool has(const perm::Perm &p) const { return coord_of.count(p.key()) != 0; }
  perm::Perm rep(gf2::word_t v) const; // product of basis reps
};

// Fails if the quotient is not elementary abelian or K is not closed.
Section make_section(const std::vector<perm::Perm> &p_elements,
                     const std::vector<perm::Perm> &k_elements);

// Conjugation action of one group element on a section, as a matrix.
// Fails if the actor does not normalize the section.
gf2::Matrix action_matrix(const Section &s, const perm::Perm &actor);

// An elementary abelian section together with acting matrices.
struct GroupModule {
  int dim = 0;
  std::vector<gf2::Matrix> actors;
};

// Builds the module and checks each actor is invertible and that the
// action map is multiplicative on generator pairs.
GroupModule conjugation_module(const Section &s, const std::vector<perm::Perm> &actors);

std::vector<gf2::Subspace> invariant_subspaces(const GroupModule &m); // dim <= 7
// Cyclic submodules from every seed vector, closed under joins; complete
// because every invariant subspace is a sum of the cyclic ones it contains.
std::vector<gf2::Subspace> invariant_subspaces_spinning(const GroupModule &m);

// q(coset of a) = 1 iff a^2 = z, on P/<z> for a central involution z.
// Verified exhaustively: well-defined on coset representatives, and the
// polar form coincides with the commutator form.
gf2::QuadraticForm squaring_form(const Section &s, const std::vector<perm::Perm> &p_elements,
                                 const perm::Perm &z);

// |{ totally singular, shared-stabilizer-invariant subspaces of half
// dimension in the central quotient of the extraspecial core }| for the
// pair of parabolic-type subgroups of AGL_n(2).
int count_invariant_isotropic(int n); // 4 <= n <= 6

// The 64-element module of pairs (v, f), v in the natural 3-dimensional
// module and f in its dual, with twisted addition
//   (v,f) + (w,g) = (v + w + eps(f,g), f + g),
// eps(f,g) the unique nonzero vector of ker f ∩ ker g (0 if f = g or
// either is zero). The unique invariant quadratic form takes value 1
// exactly when f != 0 and f(v) = 0.
namespace extmod {
using Elem = std::uint32_t; // packed: low 3 bits v, next 3 bits f
gf2::word_t eps(gf2::word_t f, gf2::word_t g);
Elem add(Elem x, Elem y);
int quad(Elem x);
Elem act(Elem x, const gf2::Matrix &m, const gf2::Matrix &m_inv_t);
} // namespace extmod

struct ExtModuleChecks {
  bool abelian_axioms = false;  // commutativity, associativity, self-inverse
  bool action_preserves_addition = false;
  bool quad_invariant = false;
  int invariant_subspace_count = 0;  // expected 3
  bool natural_part_is_the_proper_submodule = false;
  int split_comparison_count = 0;    // invariant subspaces of V ⊕ V*, expected 4
  int quad_on_fixed_line_diagonal = 0;   // q on (v, f1) with v in ker f1: expected 1
  int quad_on_shifted_diagonal = 0;      // q on (u1+v, f1): expected 1
  bool witness_lines_invariant = false;  // both diagonals are S3-submodules
};
ExtModuleChecks verify_ext_module();

// Complement classification in a group with an extraspecial normal
// 2-subgroup: a generating pair for the quotient is located inside a fixed
// frame subgroup (first found in breadth-first element order), the lifts
// are multiplied by all pairs from the core, the quotient relators are
// checked into the centre, and the surviving subgroups are grouped into
// conjugacy classes by orbit closure.
struct ComplementInputs {
  perm::PermGroup ambient;                     // G, |G| <= 2^16
  std::vector<perm::Perm> core_elements;       // Q, |Q| <= 2^7, normal in G
  perm::Perm centre;                           // z spanning Z(Q)
  std::vector<perm::Perm> frame_gens;          // complement frame L, L ∩ Q = 1
  fp::Presentation quotient_presentation;      // two-generator presentation of G/Q
  // two elementary abelian normal subgroups for the semisimplicity flags
  std::vector<perm::Perm> first_module_gens;   // contains z
  std::vector<perm::Perm> second_module_gens;  // contains z
};

struct ComplementClass {
  std::size_t size = 0;                     // subgroups in the class
  perm::Fingerprint preimage;               // of the order-2|L| preimage
  bool first_module_semisimple = false;     // invariant complement to <z> exists
  bool second_module_semisimple = false;
  std::vector<perm::Perm> rep_pair;         // the lifted generating pair
};

struct ComplementClassification {
  std::vector<ComplementClass> classes;
  std::size_t distinct_subgroups = 0;
  bool sweep_closed_under_conjugation = false;
};

ComplementClassification classify_complements(const ComplementInputs &in);

} // namespace amal::mod
