#include <doctest.h>

#include <random>
#include <unordered_set>

#include "amal/mataction.hpp"
#include "amal/permgroup.hpp"

using namespace amal;
using perm::Perm;
using perm::PermGroup;

namespace {

PermGroup symmetric3() {
  Perm t = Perm::from_images({1, 0, 2});
  Perm c = Perm::from_images({1, 2, 0});
  return PermGroup(3, {t, c});
}

std::vector<Perm> line_stab_perms() {
  mat::GeneratorTable table = mat::build_generators(4);
  std::vector<Perm> out;
  for (std::size_t i : table.line_stab_gens)
    out.push_back(mat::to_permutation(table.matrices[i]));
  return out;
}

std::vector<Perm> shared_perms() {
  mat::GeneratorTable table = mat::build_generators(4);
  std::vector<Perm> out;
  for (std::size_t i : table.shared_gens)
    out.push_back(mat::to_permutation(table.matrices[i]));
  return out;
}

} // namespace

TEST_SUITE("perm") {

TEST_CASE("product composes left to right") {
  Perm p = Perm::from_images({1, 2, 0});
  Perm q = Perm::from_images({0, 2, 1});
  CHECK((p * q)[0] == q[p[0]]);
  CHECK((p * p.inverse()).is_identity());
  CHECK(p.element_order() == 3);
  CHECK(Perm::from_images({1, 0, 2}).element_order() == 2);
}

TEST_CASE("trivial group has order one") {
  PermGroup g(5, {});
  CHECK(g.order() == 1);
  CHECK(g.contains(Perm(5)));
}

TEST_CASE("symmetric group on three points") {
  PermGroup s3 = symmetric3();
  CHECK(s3.order() == 6);
  auto fp = s3.fingerprint();
  CHECK(fp.order == 6);
  CHECK(fp.involution_count == 3);
  CHECK(fp.center_order == 1);
  CHECK(fp.solvable);
  CHECK(fp.abelian_invariants == std::vector<std::uint64_t>{2});
}

TEST_CASE("line stabilizer order matches breadth-first closure") {
  PermGroup g(31, line_stab_perms());
  CHECK(g.order() == 21504);
  CHECK(g.elements(40000).size() == 21504); // independent closure oracle
}

TEST_CASE("shared subgroup order matches closure") {
  PermGroup b(31, shared_perms());
  CHECK(b.order() == 3072);
  CHECK(b.elements(8192).size() == 3072);
}

TEST_CASE("order is base independent") {
  auto gens = shared_perms();
  PermGroup b(31, gens);
  auto elems = b.elements(8192);
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    // a random two-generator subgroup, rebuilt with a random base prefix
    const Perm &x = elems[rng() % elems.size()];
    const Perm &y = elems[rng() % elems.size()];
    PermGroup h(31, {x, y});
    std::uint64_t order = h.order();
    PermGroup h2(31, {x, y});
    std::vector<std::uint32_t> prefix;
    for (int i = 0; i < 5; ++i)
      prefix.push_back(rng() % 31);
    h2.set_base_prefix(prefix);
    CHECK(h2.order() == order);
  }
}

TEST_CASE("membership agrees with exhaustive closure") {
  auto gens = shared_perms();
  PermGroup sub(31, {gens[2], gens[4]}); // <a3, a5>
  auto sub_elems = sub.elements(4096);
  std::unordered_set<std::string> keys;
  for (const auto &e : sub_elems)
    keys.insert(e.key());
  PermGroup b(31, gens);
  std::uint64_t inside = 0;
  for (const auto &e : b.elements(8192)) {
    bool claimed = sub.contains(e);
    CHECK(claimed == (keys.count(e.key()) != 0));
    if (claimed)
      ++inside;
  }
  CHECK(inside == sub.order());
}

TEST_CASE("orbit-stabilizer identity at random points") {
  PermGroup g(31, line_stab_perms());
  std::mt19937 rng(7);
  for (int trial = 0; trial < 8; ++trial) {
    std::uint32_t p = rng() % 31;
    std::uint64_t orbit = g.orbit_of(p).size();
    std::uint64_t stab = g.stabilizer({p}).order();
    CHECK(orbit * stab == g.order());
  }
}

TEST_CASE("stabilizer of the empty list is the whole group") {
  PermGroup g = symmetric3();
  CHECK(g.stabilizer({}).order() == 6);
  CHECK(g.stabilizer({0}).order() == 2);
}

TEST_CASE("fixed vector of the matrix action") {
  // every generator fixes the first basis vector, point 0
  PermGroup g(31, line_stab_perms());
  CHECK(g.orbit_of(0).size() == 1);
  CHECK(g.stabilizer({0}).order() == g.order());
}

TEST_CASE("center of an abelian group is everything") {
  Perm c = Perm::from_images({1, 2, 3, 0});
  PermGroup g(4, {c});
  CHECK(g.center().order() == 4);
}

TEST_CASE("normal closure and derived subgroup of s3") {
  PermGroup s3 = symmetric3();
  CHECK(s3.derived_subgroup().order() == 3);
  Perm t = Perm::from_images({1, 0, 2});
  CHECK(s3.normal_closure({t}).order() == 6);
  CHECK_THROWS(s3.frattini_subgroup()); // 2-groups only
  PermGroup v4(4, {Perm::from_images({1, 0, 3, 2}), Perm::from_images({2, 3, 0, 1})});
  CHECK(v4.frattini_subgroup().order() == 1);
}

TEST_CASE("coset action of the line stabilizer on the shared subgroup") {
  PermGroup g(31, line_stab_perms());
  PermGroup b(31, shared_perms());
  auto ca = perm::coset_action(g, b.elements(4096));
  CHECK(ca.image.degree() == 7);
  CHECK(ca.image.order() == 168);
  // two-transitivity: the ordered-pair orbit is everything
  std::unordered_set<std::uint64_t> pairs;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> queue{{0, 1}};
  pairs.insert(1);
  while (!queue.empty()) {
    auto [x, y] = queue.back();
    queue.pop_back();
    for (const auto &p : ca.image.generators()) {
      std::uint64_t key = std::uint64_t(p[x]) * 7 + p[y];
      if (pairs.insert(key).second)
        queue.emplace_back(p[x], p[y]);
    }
  }
  CHECK(pairs.size() == 42);
}

TEST_CASE("subgroup conjugacy classes of point stabilizers") {
  PermGroup s3 = symmetric3();
  std::vector<std::vector<Perm>> subs;
  subs.push_back(s3.stabilizer({0}).elements(4));
  subs.push_back(s3.stabilizer({1}).elements(4));
  auto classes = perm::subgroup_conjugacy_classes(s3, subs);
  CHECK(classes.classes.size() == 1);
  // the witness really conjugates one onto the other
  const auto &cls = classes.classes[0];
  CHECK(cls.size() == 2);
  std::unordered_set<std::string> target;
  for (const auto &e : subs[cls[1].input_index])
    target.insert(e.key());
  for (const auto &e : subs[cls[0].input_index])
    CHECK(target.count(Perm::conjugate(e, cls[1].witness).key()));
}

TEST_CASE("single subgroup forms a single class") {
  PermGroup s3 = symmetric3();
  std::vector<std::vector<Perm>> subs{s3.stabilizer({2}).elements(4)};
  auto classes = perm::subgroup_conjugacy_classes(s3, subs);
  CHECK(classes.classes.size() == 1);
  CHECK(classes.classes[0].size() == 1);
}

} // TEST_SUITE
