#include <doctest.h>

#include <sstream>

#include "amal/amalgams.hpp"
#include "amal/cosetgraph.hpp"

using namespace amal;

namespace {

struct MathieuGraph {
  fp::CosetTable t1, t2;
  graph::Delta delta;
  std::uint64_t order = 0;
  std::vector<fp::Word> sub1, sub2;

  MathieuGraph() {
    lab::Context ctx = lab::build_context();
    lab::Twists tw = lab::build_twists(ctx);
    fp::Presentation p = lab::derive_presentation(ctx, tw.alphabeta);
    for (const auto &w : lab::mathieu_extra_relators(p))
      p.relators.push_back(w);
    std::vector<std::string> line{"a1", "a2", "a3", "a4", "a5", "a6",
                                  "a7", "a8", "a9", "a10", "a11", "a12"};
    std::vector<std::string> plane{"a1", "a2", "a3", "a4", "a5", "a6",
                                   "a7", "a8", "a9", "a10", "a11", "a13"};
    sub1 = lab::generator_words(p, line);
    sub2 = lab::generator_words(p, plane);
    t1 = *fp::todd_coxeter(p, sub1).table;
    t2 = *fp::todd_coxeter(p, sub2).table;
    order = lab::certified_image_order(t1, sub1, 21504);
    delta = graph::build_delta(t1, t2);
  }
};

const MathieuGraph &fixture() {
  static MathieuGraph g;
  return g;
}

} // namespace

TEST_SUITE("cosetgraph") {

TEST_CASE("bipartite shape and valencies") {
  const auto &f = fixture();
  CHECK(f.delta.n1 == 11385);
  CHECK(f.delta.n2 == 26565);
  CHECK(f.delta.val1 == 7);
  CHECK(f.delta.val2 == 3);
  CHECK(f.order == 244823040);
}

TEST_CASE("distance-two component") {
  const auto &f = fixture();
  graph::Gamma g = graph::gamma_component(f.delta);
  CHECK(g.regular);
  CHECK(g.valency == 14);
  CHECK(g.n == 11385);
}

TEST_CASE("subgroup word images fix the base cosets") {
  const auto &f = fixture();
  for (const auto &w : f.sub1)
    CHECK(graph::combined_word_image(f.t1, f.t2, w)[0] == 0);
  for (const auto &w : f.sub2)
    CHECK(graph::combined_word_image(f.t1, f.t2, w)[f.delta.n1] == f.delta.n1);
}

TEST_CASE("induced action rejects an unclosed point set") {
  const auto &f = fixture();
  std::vector<std::uint32_t> not_closed{0, 1};
  CHECK_THROWS(graph::induced_on_points(f.delta.action, not_closed));
}

TEST_CASE("table mismatch is rejected") {
  const auto &f = fixture();
  fp::Presentation s3 = fp::parse_presentation("gens: x y\nrel: x^2\nrel: y^2\nrel: (x*y)^3\n");
  fp::CosetTable other = *fp::todd_coxeter(s3, {}).table;
  CHECK_THROWS(graph::build_delta(f.t1, other));
}

TEST_CASE("edge export emits one line per edge") {
  const auto &f = fixture();
  std::ostringstream os;
  graph::export_edges(f.delta, os);
  std::uint64_t lines = 0;
  for (char c : os.str())
    if (c == '\n')
      ++lines;
  CHECK(lines == std::uint64_t(f.delta.n1) * 7);
}

TEST_CASE("full axiom suite for the smaller completion") {
  const auto &f = fixture();
  graph::GraphInputs in;
  in.delta = &f.delta;
  in.completion_order = f.order;
  in.vertex_stab_order = 21504;
  for (const auto &w : f.sub1)
    in.part1_stab_seeds.push_back(graph::combined_word_image(f.t1, f.t2, w));
  for (const auto &w : f.sub2)
    in.part2_stab_seeds.push_back(graph::combined_word_image(f.t1, f.t2, w));
  in.spot_vertices = {191, 4093, 9999};
  rep::Report r = graph::check_axioms(in);
  for (const auto &c : r.checks)
    CHECK_MESSAGE(c.status == "pass", c.id, " expected ", c.expected, " got ", c.actual);
}

} // TEST_SUITE
