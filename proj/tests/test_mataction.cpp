#include <doctest.h>

#include <random>

#include "amal/mataction.hpp"
#include "amal/permgroup.hpp"

using namespace amal;

namespace {

std::uint64_t gl2_order(int n) {
  std::uint64_t o = 1;
  for (int i = 0; i < n; ++i)
    o *= (std::uint64_t(1) << n) - (std::uint64_t(1) << i);
  return o;
}

std::uint64_t one_spaces(int n) { return (std::uint64_t(1) << n) - 1; }

perm::PermGroup group_of(const mat::GeneratorTable &t, const std::vector<std::size_t> &ids) {
  std::vector<perm::Perm> gens;
  for (std::size_t i : ids)
    gens.push_back(mat::to_permutation(t.matrices[i]));
  return perm::PermGroup(gens[0].degree(), gens);
}

} // namespace

TEST_SUITE("mataction") {

TEST_CASE("the thirteen fixed generator positions") {
  mat::GeneratorTable t = mat::build_generators(4);
  REQUIRE(t.names.size() == 13);
  const std::pair<int, int> expected[13] = {{2, 1}, {3, 1}, {3, 2}, {4, 1}, {4, 2},
                                            {4, 3}, {5, 1}, {5, 2}, {5, 3}, {5, 4},
                                            {2, 3}, {3, 4}, {4, 5}};
  for (int i = 0; i < 13; ++i)
    CHECK(t.positions[i] == expected[i]);
  CHECK(t.line_stab_gens.size() == 12);   // a1..a12
  CHECK(t.plane_stab_gens.size() == 12);  // a1..a11, a13
  CHECK(t.shared_gens.size() == 11);      // a1..a11
  CHECK(t.line_stab_gens.back() == 11);
  CHECK(t.plane_stab_gens.back() == 12);
}

TEST_CASE("matrix to permutation basics") {
  mat::GeneratorTable t = mat::build_generators(4);
  CHECK(mat::to_permutation(gf2::Matrix::identity(5)).is_identity());
  perm::Perm a7 = mat::to_permutation(t.matrix_of("a7"));
  CHECK((a7 * a7).is_identity());
  perm::Perm a3 = mat::to_permutation(t.matrix_of("a3"));
  perm::Perm a11 = mat::to_permutation(t.matrix_of("a11"));
  CHECK((a3 * a11).element_order() == 3);
  gf2::Matrix singular(5, 5);
  CHECK_THROWS(mat::to_permutation(singular));
}

TEST_CASE("conversion is a homomorphism on random products") {
  mat::GeneratorTable t = mat::build_generators(4);
  std::mt19937 rng(31337);
  for (int trial = 0; trial < 100; ++trial) {
    gf2::Matrix m = gf2::Matrix::identity(5);
    gf2::Matrix n = gf2::Matrix::identity(5);
    for (int k = 0; k < 6; ++k) {
      m = m * t.matrices[rng() % 13];
      n = n * t.matrices[rng() % 13];
    }
    CHECK(mat::to_permutation(m * n) ==
          mat::to_permutation(m) * mat::to_permutation(n));
  }
}

TEST_CASE("orders and indices for n = 4") {
  mat::GeneratorTable t = mat::build_generators(4);
  perm::PermGroup b4 = group_of(t, t.line_stab_gens);
  perm::PermGroup c4 = group_of(t, t.plane_stab_gens);
  perm::PermGroup shared = group_of(t, t.shared_gens);
  CHECK(b4.order() == 21504);
  CHECK(c4.order() == 9216);
  CHECK(shared.order() == 3072);
  CHECK(b4.order() / shared.order() == 7);
  CHECK(c4.order() / shared.order() == 3);
  // orbit-stabilizer oracle: |AGL_4(2)| / 15 one-spaces
  std::uint64_t agl4 = (1u << 4) * gl2_order(4);
  CHECK(b4.order() == agl4 / one_spaces(4));
}

TEST_CASE("orders for n = 3 and n = 5 from the orbit-stabilizer oracle") {
  {
    mat::GeneratorTable t = mat::build_generators(3);
    std::uint64_t agl3 = (1u << 3) * gl2_order(3);
    CHECK(group_of(t, t.line_stab_gens).order() == agl3 / one_spaces(3));
    // 2-subspaces of F_2^3: (7 * 6) / (3 * 2) = 7
    CHECK(group_of(t, t.plane_stab_gens).order() == agl3 / 7);
  }
  {
    mat::GeneratorTable t = mat::build_generators(5);
    std::uint64_t agl5 = (1u << 5) * gl2_order(5);
    CHECK(group_of(t, t.line_stab_gens).order() == agl5 / one_spaces(5));
    // 2-subspaces of F_2^5: (31 * 30) / (3 * 2) = 155
    CHECK(group_of(t, t.plane_stab_gens).order() == agl5 / 155);
  }
  CHECK_THROWS(mat::build_generators(2));
  CHECK_THROWS(mat::build_generators(9));
}

TEST_CASE("word table factors every shared element") {
  mat::GeneratorTable t = mat::build_generators(4);
  mat::WordTable wt(t, t.shared_gens, 3072);
  CHECK(wt.size() == 3072);
  CHECK(wt.factor(gf2::Matrix::identity(5)).empty());
  gf2::Matrix a4a6 = t.matrix_of("a4") * t.matrix_of("a6");
  auto w = wt.factor(a4a6);
  CHECK(wt.evaluate(w) == a4a6);
  CHECK(w.size() == 2);
  // exhaustive: factorization evaluates back for all 3072 elements
  for (const auto &m : wt.elements())
    CHECK(wt.evaluate(wt.factor(m)) == m);
  // an element outside the shared subgroup does not factor
  CHECK_FALSE(wt.contains(t.matrix_of("a12")));
  CHECK_THROWS(wt.factor(t.matrix_of("a12")));
}

} // TEST_SUITE
