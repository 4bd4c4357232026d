#include <doctest.h>

#include <set>

#include "amal/mataction.hpp"
#include "amal/repmod.hpp"

using namespace amal;

namespace {

struct CoreFixture {
  mat::GeneratorTable table = mat::build_generators(4);
  std::vector<perm::Perm> a;
  std::vector<perm::Perm> core_elements;
  perm::Perm z;
  mod::Section section;

  CoreFixture() {
    for (int i = 0; i < 13; ++i)
      a.push_back(mat::to_permutation(table.matrices[i]));
    z = a[6]; // a7
    std::vector<perm::Perm> core_gens{a[0], a[1], a[3], a[6], a[7], a[8], a[9]};
    perm::PermGroup core(31, core_gens);
    core_elements = core.elements(256);
    section = mod::make_section(core_elements, {perm::Perm(31), z});
  }
};

} // namespace

TEST_SUITE("repmod") {

TEST_CASE("section coordinates of the central quotient") {
  CoreFixture f;
  CHECK(f.section.dim == 6);
  CHECK(f.section.coords(f.z) == 0);
  // coordinates add along products of representatives
  gf2::word_t c1 = f.section.coords(f.a[0]);
  gf2::word_t c2 = f.section.coords(f.a[1]);
  CHECK(f.section.coords(f.a[0] * f.a[1]) == (c1 ^ c2));
}

TEST_CASE("a section with a non-normal kernel is rejected") {
  CoreFixture f;
  // a3 is not central in the line stabilizer frame; using it as the
  // kernel of a section of a nonabelian overgroup must fail
  std::vector<perm::Perm> gens{f.a[0], f.a[2], f.a[6]};
  perm::PermGroup g(31, gens);
  CHECK_THROWS(mod::make_section(g.elements(4096), {perm::Perm(31), f.a[2]}));
}

TEST_CASE("squaring form of an elementary abelian group is zero") {
  CoreFixture f;
  std::vector<perm::Perm> trans{f.a[0], f.a[1], f.a[3], f.a[6]};
  perm::PermGroup e(31, trans);
  auto elems = e.elements(32);
  mod::Section s = mod::make_section(elems, {perm::Perm(31), f.z});
  gf2::QuadraticForm q = mod::squaring_form(s, elems, f.z);
  CHECK(q.diag == 0);
  for (int i = 0; i < q.dim; ++i)
    CHECK(q.gram.row(i) == 0);
}

TEST_CASE("squaring form of the extraspecial core has plus type") {
  CoreFixture f;
  gf2::QuadraticForm q = mod::squaring_form(f.section, f.core_elements, f.z);
  CHECK(q.dim == 6);
  CHECK(q.singular_nonzero_count() == 35); // plus type in dimension six
}

TEST_CASE("trivial acting group leaves every subspace invariant") {
  mod::GroupModule m;
  m.dim = 3;
  m.actors = {gf2::Matrix::identity(3)};
  CHECK(mod::invariant_subspaces(m).size() == 16); // gaussian total for d = 3
}

TEST_CASE("spinning enumeration agrees with the filtered enumeration") {
  CoreFixture f;
  std::vector<perm::Perm> actors;
  for (int i = 0; i < 12; ++i)
    actors.push_back(f.a[i]);
  mod::GroupModule m = mod::conjugation_module(f.section, actors);
  auto full = mod::invariant_subspaces(m);
  auto spun = mod::invariant_subspaces_spinning(m);
  std::set<std::string> a, b;
  for (const auto &s : full)
    a.insert(s.key());
  for (const auto &s : spun)
    b.insert(s.key());
  CHECK(a == b);
  CHECK(full.size() == 4);
}

TEST_CASE("invariant isotropic counts across the family") {
  CHECK(mod::count_invariant_isotropic(4) == 4);
  CHECK(mod::count_invariant_isotropic(5) == 3);
  CHECK(mod::count_invariant_isotropic(6) == 3);
  CHECK_THROWS(mod::count_invariant_isotropic(7));
}

TEST_CASE("the twisted extension module") {
  mod::ExtModuleChecks c = mod::verify_ext_module();
  CHECK(c.abelian_axioms);
  CHECK(c.action_preserves_addition);
  CHECK(c.quad_invariant);
  CHECK(c.invariant_subspace_count == 3);
  CHECK(c.natural_part_is_the_proper_submodule);
  CHECK(c.split_comparison_count == 4);
  CHECK(c.quad_on_fixed_line_diagonal == 1);
  CHECK(c.quad_on_shifted_diagonal == 1);
  CHECK(c.witness_lines_invariant);
}

TEST_CASE("eps lands in both kernels") {
  for (gf2::word_t fm = 1; fm < 8; ++fm)
    for (gf2::word_t g = 1; g < 8; ++g) {
      if (fm == g)
        continue;
      gf2::word_t v = mod::extmod::eps(fm, g);
      CHECK(v != 0);
      CHECK(gf2::parity(fm & v) == 0);
      CHECK(gf2::parity(g & v) == 0);
    }
}

} // TEST_SUITE
