#include <doctest.h>

#include <set>

#include "amal/amalgams.hpp"
#include "amal/coset_enum.hpp"

using namespace amal;

namespace {

const lab::Context &context() {
  static lab::Context ctx = lab::build_context();
  return ctx;
}

const lab::Twists &twists() {
  static lab::Twists tw = lab::build_twists(context());
  return tw;
}

fp::Word parsed_word(const std::string &expr) {
  std::string names = "gens:";
  for (int i = 1; i <= 13; ++i)
    names += " a" + std::to_string(i);
  fp::Presentation p = fp::parse_presentation(names + "\nrel: " + expr + "\n");
  return p.relators[0];
}

// the relator beginning with the commutator of generators i and j
fp::Word relator_for_pair(const fp::Presentation &p, int i, int j) {
  for (const auto &r : p.relators) {
    if (r.letters.size() >= 4 && r.letters[0] == -i && r.letters[1] == -j &&
        r.letters[2] == i && r.letters[3] == j)
      return r;
  }
  throw std::runtime_error("pair relator not found");
}

} // namespace

TEST_SUITE("amalgams") {

TEST_CASE("context groups and closure oracles") {
  const lab::Context &ctx = context();
  CHECK(ctx.g1.order() == 21504);
  CHECK(ctx.g2.order() == 9216);
  CHECK(ctx.b.order() == 3072);
  CHECK(ctx.g2.elements(16384).size() == 9216); // breadth-first oracle
}

TEST_CASE("identity map verifies and verified maps compose") {
  const lab::Context &ctx = context();
  perm::GenMap id_map;
  for (int i = 1; i <= 11; ++i) {
    id_map.domain_gens.push_back(ctx.a[i]);
    id_map.images.push_back(ctx.a[i]);
  }
  CHECK(perm::verify_homomorphism(id_map, ctx.b));

  const lab::Twists &tw = twists();
  perm::GenMap composed;
  for (int i = 1; i <= 11; ++i) {
    composed.domain_gens.push_back(ctx.a[i]);
    composed.images.push_back(tw.beta.apply(tw.alpha.apply(ctx.a[i])));
  }
  CHECK(perm::verify_homomorphism(composed, ctx.b));
  for (int i = 1; i <= 11; ++i)
    CHECK(composed.images[i - 1] == tw.alphabeta.apply(ctx.a[i]));
}

TEST_CASE("twist certificates") {
  const lab::Twists &tw = twists();
  for (const lab::Twist *t : {&tw.id, &tw.alpha, &tw.beta, &tw.alphabeta}) {
    CHECK(t->table.valid);
    CHECK(t->table.bijective);
    CHECK(t->table.domain_order == 3072);
  }
}

TEST_CASE("derived twisted relators match the printed words") {
  const lab::Context &ctx = context();
  const lab::Twists &tw = twists();
  fp::Presentation beta = lab::derive_presentation(ctx, tw.beta);
  fp::Presentation ab = lab::derive_presentation(ctx, tw.alphabeta);
  CHECK(relator_for_pair(beta, 1, 13) == parsed_word("[a1,a13]*a4*a6"));
  CHECK(relator_for_pair(beta, 2, 13) == parsed_word("[a2,a13]*a4*a5"));
  CHECK(relator_for_pair(ab, 3, 13) == parsed_word("[a3,a13]*a4"));
  CHECK(relator_for_pair(ab, 11, 13) == parsed_word("[a11,a13]*a4"));
}

TEST_CASE("the twisted commutator factors as the printed tail") {
  const lab::Context &ctx = context();
  const lab::Twists &tw = twists();
  // [beta(a1), a13] evaluates to the matrix of a4 a6, and the word table
  // factors it exactly that way
  gf2::Matrix b_a1 = ctx.matrix_of_genword(tw.beta.gen_words[0]);
  const gf2::Matrix &m13 = ctx.table.matrices[12];
  gf2::Matrix c = b_a1.inverse() * m13.inverse() * b_a1 * m13;
  CHECK(c == ctx.table.matrix_of("a4") * ctx.table.matrix_of("a6"));
  auto w = ctx.shared_words.factor(c);
  REQUIRE(w.size() == 2);
  CHECK(ctx.table.names[w[0]] == "a4");
  CHECK(ctx.table.names[w[1]] == "a6");
}

TEST_CASE("presentation shape") {
  const lab::Context &ctx = context();
  fp::Presentation p = lab::derive_presentation(ctx, twists().alphabeta);
  CHECK(p.gens.size() == 13);
  CHECK(p.relators.size() == 13 + 66 + 11);
  fp::Presentation line = lab::restrict_presentation(
      p, {"a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "a9", "a10", "a11", "a12"});
  CHECK(line.gens.size() == 12);
  CHECK(line.relators.size() == 12 + 66);
  fp::Presentation shared = lab::restrict_presentation(
      p, {"a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "a9", "a10", "a11"});
  CHECK(shared.relators.size() == 11 + 55);
}

TEST_CASE("derivation is deterministic") {
  const lab::Context &ctx = context();
  fp::Presentation p1 = lab::derive_presentation(ctx, twists().beta);
  fp::Presentation p2 = lab::derive_presentation(ctx, twists().beta);
  CHECK(p1.print() == p2.print());
  CHECK(p1.content_hash() == p2.content_hash());
}

TEST_CASE("structure suites pass") {
  const lab::Context &ctx = context();
  CHECK(lab::structure_suite_g1(ctx).all_passed());
  CHECK(lab::structure_suite_g2(ctx).all_passed());
  CHECK(lab::structure_suite_b(ctx).all_passed());
}

TEST_CASE("module and complement suites pass") {
  const lab::Context &ctx = context();
  CHECK(lab::module_suite(ctx).all_passed());
  CHECK(lab::complement_suite(ctx).all_passed());
}

TEST_CASE("twist and faithfulness suites pass") {
  const lab::Context &ctx = context();
  const lab::Twists &tw = twists();
  CHECK(lab::twist_suite(ctx, tw).all_passed());
  CHECK(lab::faithfulness_suite(ctx, tw).all_passed());
}

TEST_CASE("reports are stable across reruns") {
  const lab::Context &ctx = context();
  rep::Report a = lab::structure_suite_g1(ctx);
  rep::Report b = lab::structure_suite_g1(ctx);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].id == b.checks[i].id);
    CHECK(a.checks[i].status == b.checks[i].status);
    CHECK(a.checks[i].actual == b.checks[i].actual);
  }
}

} // TEST_SUITE
