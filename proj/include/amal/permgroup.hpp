#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "amal/perm.hpp"

namespace amal::perm {

// Isomorphism-invariant discriminator for small groups. A necessary
// condition only: equal fingerprints do not certify isomorphism, and the
// verification suites report matches as "fingerprint-consistent".
struct Fingerprint {
  std::uint64_t order = 0;
  std::map<std::uint64_t, std::uint64_t> element_order_histogram;
  std::uint64_t center_order = 0;
  int derived_length = 0; // strict steps of the derived series until it stabilizes
  bool solvable = false;
  std::vector<std::uint64_t> abelian_invariants; // elementary divisors of G/G'
  std::uint64_t involution_count = 0;

  bool operator==(const Fingerprint &) const = default;
  std::string summary() const;
};

// A permutation group held as generators plus a lazily built base and
// strong generating set (deterministic Schreier-Sims).
//
// Chain completeness is always established exactly, by one of two routes:
//   - full verification: every Schreier generator sifts to the identity
//     (checked on the whole domain), or
//   - order certification: the product of fundamental orbit lengths
//     reaches a caller-supplied *proven* upper bound on |G|; since the
//     product never exceeds |<strong gens>| <= |G| <= bound, equality
//     certifies the chain at every level.
// The second route is what makes stabilizer towers on domains with ~10^5
// points tractable; bounds come from coset-table indices multiplied by
// presented-subgroup orders, or from a parent group's certified order.
class PermGroup {
public:
  PermGroup() = default;
  PermGroup(std::uint32_t degree, std::vector<Perm> gens);
  PermGroup(const PermGroup &other);
  PermGroup &operator=(const PermGroup &other);
  PermGroup(PermGroup &&) = default;
  PermGroup &operator=(PermGroup &&) = default;
  ~PermGroup() = default;

  std::uint32_t degree() const { return degree_; }
  const std::vector<Perm> &generators() const { return gens_; }

  // Chain configuration; must be called before the chain is first built.
  void set_base_prefix(std::vector<std::uint32_t> points);
  void set_order_bound(std::uint64_t proven_upper_bound);
  void seed_stabilizer_elements(std::vector<Perm> elems); // known group elements
  void set_known_order(std::uint64_t order); // trusted, skips chain for order()

  std::uint64_t order() const;
  bool contains(const Perm &g) const;
  void ensure_chain() const; // freeze point: build now, share read-only after

  std::vector<std::uint32_t> orbit_of(std::uint32_t point) const;

  // Pointwise stabilizer of the first k prescribed base points.
  std::uint64_t prefix_stabilizer_order(std::size_t k) const;
  PermGroup prefix_stabilizer_group(std::size_t k) const;
  // Pointwise stabilizer of an arbitrary point list (rebuilds a chain).
  PermGroup stabilizer(const std::vector<std::uint32_t> &points) const;

  // Every element, breadth-first from the identity; fails above the limit.
  std::vector<Perm> elements(std::uint64_t limit = (1ull << 20)) const;

  PermGroup center() const;           // |G| <= 2^20
  PermGroup derived_subgroup() const;
  PermGroup frattini_subgroup() const; // 2-groups: <squares, commutators>^G
  PermGroup normal_closure(const std::vector<Perm> &seeds) const;
  bool is_normal_subgroup_elements(const std::vector<Perm> &sub_elements) const;

  Fingerprint fingerprint() const; // |G| <= 2^20

private:
  struct Level {
    std::uint32_t base = 0;
    std::vector<std::uint32_t> orbit;                    // BFS order, orbit[0] = base
    std::unordered_map<std::uint32_t, std::uint32_t> pos; // point -> orbit index
    std::vector<std::int32_t> via_gen;                   // registry id, -1 at base
    std::vector<std::uint32_t> via_from;
  };
  struct Chain {
    std::vector<Perm> registry, registry_inv;
    std::vector<std::size_t> depth; // gen id -> number of leading bases it fixes
    std::unordered_map<std::string, std::size_t> gen_keys;
    std::vector<Level> levels;
    std::size_t prefix_levels = 0;
    bool certified = false;
  };

  using Word = std::vector<std::int32_t>; // letter +-(id+1) into the registry

  void build_chain() const;
  std::uint64_t chain_order() const;
  std::uint32_t apply_word(const Word &w, std::uint32_t p) const;
  Perm materialize(const Word &w) const;
  Word trace_transversal(const Level &lv, std::uint32_t p) const;
  void append_inverse_transversal(Word &w, const Level &lv, std::uint32_t p) const;
  std::size_t register_gen(const Perm &g) const;
  void add_strong_generator(std::size_t id, std::size_t level_index) const;
  void rebuild_orbit(std::size_t level_index) const;
  std::vector<std::size_t> level_gen_ids(std::size_t level_index) const;
  bool certified_by_bound() const;
  bool cheap_passes() const;          // stage 1: exact orbit tests only
  bool verification_find_one() const; // stage 2: full residue checks
  // Sift as word; on failure returns the level index where it got stuck.
  std::optional<std::size_t> sift_word(Word &w, std::size_t from_level) const;

  std::uint32_t degree_ = 0;
  std::vector<Perm> gens_;
  std::vector<std::uint32_t> base_prefix_;
  std::optional<std::uint64_t> order_bound_;
  std::optional<std::uint64_t> known_order_;
  std::vector<Perm> seeds_;
  mutable std::unique_ptr<Chain> chain_;
};

// The permutation action of g on the right cosets of the subgroup with the
// given elements (which must be the full element list of a subgroup of g).
// Returns the image group on [index] points; coset 0 is the subgroup.
struct CosetAction {
  PermGroup image;
  std::vector<Perm> coset_reps;
};
CosetAction coset_action(const PermGroup &g, const std::vector<Perm> &subgroup_elements,
                         std::uint64_t max_index = 100000);

// A generator-image map, the seed of a (potential) homomorphism.
struct GenMap {
  std::vector<Perm> domain_gens;
  std::vector<Perm> images;
};

// Element-wise extension of a GenMap over the whole (small) domain group,
// built breadth-first with consistency checks on every product.
struct HomTable {
  bool valid = false;
  std::string failure;
  std::uint64_t domain_order = 0;
  bool bijective = false;
  std::unordered_map<std::string, Perm> map; // domain element key -> image

  const Perm &apply(const Perm &g) const;
};

HomTable build_hom_table(const GenMap &m, std::uint64_t max_order = (1ull << 16));
bool verify_homomorphism(const GenMap &m, const PermGroup &domain);

// Partition of subgroups (given as full element lists) into conjugacy
// classes of g, by orbit closure under generator conjugation. Witnesses
// conjugate the class representative onto each member.
struct SubgroupClasses {
  struct Member {
    std::size_t input_index;
    Perm witness;
  };
  std::vector<std::vector<Member>> classes;
  // true if every conjugate encountered was itself one of the inputs
  bool inputs_closed_under_conjugation = false;
};
SubgroupClasses subgroup_conjugacy_classes(const PermGroup &g,
                                           const std::vector<std::vector<Perm>> &subgroups);

} // namespace amal::perm
