#include <doctest.h>

#include <cstdio>

#include "amal/coset_enum.hpp"
#include "amal/permgroup.hpp"

using namespace amal;

namespace {

fp::Presentation s3_presentation() {
  return fp::parse_presentation("gens: x y\nrel: x^2\nrel: y^2\nrel: (x*y)^3\n");
}

} // namespace

TEST_SUITE("coset_enum") {

TEST_CASE("index three over a point stabilizer") {
  fp::Presentation p = s3_presentation();
  fp::EnumResult r = fp::todd_coxeter(p, {fp::Word::gen(0)});
  REQUIRE(r.stats.closed);
  CHECK(r.table->index() == 3);
  CHECK(r.table->verify(p, {fp::Word::gen(0)}));
}

TEST_CASE("regular representation over the trivial subgroup") {
  fp::Presentation p = s3_presentation();
  fp::EnumResult r = fp::todd_coxeter(p, {});
  REQUIRE(r.stats.closed);
  CHECK(r.table->index() == 6);
  auto perms = r.table->generator_perms();
  perm::PermGroup image(6, perms);
  CHECK(image.order() == 6);
}

TEST_CASE("hlt and felsch produce bit-identical standardized tables") {
  fp::Presentation p = s3_presentation();
  fp::EnumOptions hlt, felsch;
  felsch.strategy = fp::Strategy::felsch;
  fp::EnumResult a = fp::todd_coxeter(p, {}, hlt);
  fp::EnumResult b = fp::todd_coxeter(p, {}, felsch);
  REQUIRE(a.stats.closed);
  REQUIRE(b.stats.closed);
  CHECK(a.table->raw() == b.table->raw());
}

TEST_CASE("non-involutory generators and inverse columns") {
  // alternating group on four points over a point stabilizer
  fp::Presentation p =
      fp::parse_presentation("gens: x y\nrel: x^3\nrel: y^2\nrel: (x*y)^3\n");
  fp::EnumResult r = fp::todd_coxeter(p, {fp::Word::gen(1)});
  REQUIRE(r.stats.closed);
  CHECK(r.table->index() == 6);
  perm::PermGroup image(6, r.table->generator_perms());
  CHECK(image.order() == 12);

  fp::Presentation c6 = fp::parse_presentation("gens: x\nrel: x^6\n");
  fp::EnumResult rc = fp::todd_coxeter(c6, {fp::Word::gen(0).pow(2)});
  REQUIRE(rc.stats.closed);
  CHECK(rc.table->index() == 2);
}

TEST_CASE("exceeding max cosets is an explicit outcome") {
  // the free product C2 * C2 is infinite over the trivial subgroup
  fp::Presentation p = fp::parse_presentation("gens: x y\nrel: x^2\nrel: y^2\n");
  fp::EnumOptions opts;
  opts.max_cosets = 500;
  fp::EnumResult r = fp::todd_coxeter(p, {}, opts);
  CHECK_FALSE(r.stats.closed);
  CHECK_FALSE(r.table.has_value());
  CHECK(r.stats.live > 0);
  CHECK(r.stats.total_defined >= r.stats.live);
}

TEST_CASE("cache round trip with hash validation") {
  fp::Presentation p = s3_presentation();
  fp::EnumResult r = fp::todd_coxeter(p, {fp::Word::gen(0)});
  REQUIRE(r.stats.closed);
  std::string path = "test_cache_tmp.ctb";
  r.table->write_cache(path);
  auto loaded = fp::CosetTable::read_cache(path, r.table->content_hash());
  REQUIRE(loaded.has_value());
  CHECK(loaded->raw() == r.table->raw());
  CHECK(loaded->verify(p, {fp::Word::gen(0)}));
  CHECK_FALSE(fp::CosetTable::read_cache(path, r.table->content_hash() + 1).has_value());
  std::remove(path.c_str());
}

TEST_CASE("tracing words through the table") {
  fp::Presentation p = s3_presentation();
  fp::EnumResult r = fp::todd_coxeter(p, {fp::Word::gen(0)});
  REQUIRE(r.stats.closed);
  // the subgroup word fixes coset 0, relators fix every coset
  CHECK(r.table->trace(0, fp::Word::gen(0)) == 0);
  for (const auto &rel : p.relators)
    for (std::uint32_t c = 0; c < r.table->index(); ++c)
      CHECK(r.table->trace(c, rel) == c);
}

} // TEST_SUITE
