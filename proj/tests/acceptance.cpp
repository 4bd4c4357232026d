// Acceptance suite: one pass/fail line per criterion, exit code 0 only if
// every criterion passes. Expected values are pinned here, in code.

#include <chrono>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

#include "amal/amalgams.hpp"
#include "amal/coset_enum.hpp"
#include "amal/cosetgraph.hpp"
#include "amal/repmod.hpp"

using namespace amal;

namespace {

struct Runner {
  int passed = 0, failed = 0;
  std::vector<std::string> failures;

  void criterion(int number, const std::string &title, bool ok,
                 const std::string &detail) {
    std::ostringstream os;
    os << "criterion " << number << ": " << (ok ? "PASS" : "FAIL") << " - " << title;
    if (!ok)
      os << " [" << detail << "]";
    std::cout << os.str() << std::endl;
    if (ok)
      ++passed;
    else {
      ++failed;
      failures.push_back(os.str());
    }
  }
};

std::string failing_checks(const rep::Report &r) {
  std::string out;
  for (const auto &c : r.checks)
    if (c.status != "pass")
      out += c.id + "(expected " + c.expected + ", got " + c.actual + ") ";
  return out.empty() ? "all checks passed" : out;
}

bool report_ok(const rep::Report &r, std::string &detail) {
  detail = failing_checks(r);
  return r.all_passed();
}

fp::Word parsed_word(const std::string &expr) {
  std::string names = "gens:";
  for (int i = 1; i <= 13; ++i)
    names += " a" + std::to_string(i);
  return fp::parse_presentation(names + "\nrel: " + expr + "\n").relators[0];
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

int main() {
  Runner run;
  auto wall0 = std::chrono::steady_clock::now();
  lab::Context ctx = lab::build_context();
  lab::Twists tw = lab::build_twists(ctx);
  std::string detail;

  // 1. orders and indices, exact integer equality
  {
    bool ok = ctx.g1.order() == 21504 && ctx.g2.order() == 9216 && ctx.b.order() == 3072 &&
              ctx.g1.order() / ctx.b.order() == 7 && ctx.g2.order() / ctx.b.order() == 3;
    std::ostringstream os;
    os << "|g1|=" << ctx.g1.order() << " |g2|=" << ctx.g2.order() << " |b|=" << ctx.b.order();
    run.criterion(1, "orders 21504 / 9216 / 3072 and indices 7 / 3", ok, os.str());
  }

  // 2. structure suites: extraspecial plus core, special core2, the
  //    self-centralizing diagonal, the four elementary abelian normal 2^4s
  {
    rep::Report g1 = lab::structure_suite_g1(ctx);
    rep::Report g2 = lab::structure_suite_g2(ctx);
    rep::Report b = lab::structure_suite_b(ctx);
    bool ok = g1.all_passed() && g2.all_passed() && b.all_passed();
    detail = failing_checks(g1) + "| " + failing_checks(g2) + "| " + failing_checks(b);
    run.criterion(2, "stabilizer structure suites", ok, ok ? "" : detail);
  }

  // 3. module checks: 4 invariant subspaces, the 3-submodule extension
  //    module with its nonsingular witness lines, isotropic counts 4/3/3
  {
    rep::Report m = lab::module_suite(ctx);
    run.criterion(3, "module checks", report_ok(m, detail), detail);
  }

  // 4. complement classification: 4 classes, 3 of order 336 with >= 2
  //    involutions, one with a unique involution, one doubly semisimple
  {
    rep::Report c = lab::complement_suite(ctx);
    run.criterion(4, "complement classification", report_ok(c, detail), detail);
  }

  // 5. twists: verified automorphisms, pairwise non-inner-equivalent
  {
    rep::Report t = lab::twist_suite(ctx, tw);
    run.criterion(5, "twist automorphisms and coset distinctness", report_ok(t, detail),
                  detail);
  }

  // 6. faithfulness: id and alpha unfaithful with the translation witness,
  //    beta and alphabeta faithful
  {
    rep::Report f = lab::faithfulness_suite(ctx, tw);
    run.criterion(6, "faithfulness verdicts", report_ok(f, detail), detail);
  }

  // 7. presentations: restricted sets enumerate to the exact orders and
  //    the four printed twisted relators come out verbatim
  {
    fp::Presentation pb = lab::derive_presentation(ctx, tw.beta);
    fp::Presentation pab = lab::derive_presentation(ctx, tw.alphabeta);
    std::vector<std::string> line{"a1", "a2", "a3", "a4", "a5", "a6",
                                  "a7", "a8", "a9", "a10", "a11", "a12"};
    std::vector<std::string> plane{"a1", "a2", "a3", "a4", "a5", "a6",
                                   "a7", "a8", "a9", "a10", "a11", "a13"};
    std::ostringstream os;
    bool ok = true;
    auto enum_index = [&](const fp::Presentation &p, const char *name,
                          std::uint64_t expect) {
      fp::EnumResult r = fp::todd_coxeter(p, {});
      std::uint64_t got = r.stats.closed ? r.table->index() : 0;
      if (got != expect) {
        ok = false;
        os << name << " closed at " << got << " not " << expect << "; ";
      }
      return got;
    };
    enum_index(lab::restrict_presentation(pab, line), "line set", 21504);
    enum_index(lab::restrict_presentation(pab, plane), "plane set (alphabeta)", 9216);
    enum_index(lab::restrict_presentation(pb, plane), "plane set (beta)", 9216);
    auto check_word = [&](const fp::Presentation &p, int i, int j, const std::string &expr,
                          const char *name) {
      if (!(relator_for_pair(p, i, j) == parsed_word(expr))) {
        ok = false;
        os << name << " differs from " << expr << "; ";
      }
    };
    check_word(pb, 1, 13, "[a1,a13]*a4*a6", "beta (1,13)");
    check_word(pb, 2, 13, "[a2,a13]*a4*a5", "beta (2,13)");
    check_word(pab, 3, 13, "[a3,a13]*a4", "alphabeta (3,13)");
    check_word(pab, 11, 13, "[a11,a13]*a4", "alphabeta (11,13)");
    run.criterion(7, "presentations and verbatim twisted relators", ok, os.str());
  }

  // 8. completions: the two sporadic quotients and the degree-16 image
  fp::CosetTable m24_line, m24_plane;
  std::vector<fp::Word> m24_sub1, m24_sub2;
  std::uint64_t m24_order = 0;
  {
    std::ostringstream os;
    bool ok = true;
    std::vector<std::string> line{"a1", "a2", "a3", "a4", "a5", "a6",
                                  "a7", "a8", "a9", "a10", "a11", "a12"};
    std::vector<std::string> plane{"a1", "a2", "a3", "a4", "a5", "a6",
                                   "a7", "a8", "a9", "a10", "a11", "a13"};

    fp::Presentation pm = lab::derive_presentation(ctx, tw.alphabeta);
    for (const auto &w : lab::mathieu_extra_relators(pm))
      pm.relators.push_back(w);
    m24_sub1 = lab::generator_words(pm, line);
    m24_sub2 = lab::generator_words(pm, plane);
    fp::EnumResult r1 = fp::todd_coxeter(pm, m24_sub1);
    if (!r1.stats.closed || r1.table->index() != 11385) {
      ok = false;
      os << "first quotient index " << (r1.stats.closed ? r1.table->index() : 0) << "; ";
    } else {
      m24_line = *r1.table;
      m24_order = lab::certified_image_order(m24_line, m24_sub1, 21504);
      if (m24_order != 244823040ull) {
        ok = false;
        os << "first quotient order " << m24_order << "; ";
      }
      fp::EnumResult r2 = fp::todd_coxeter(pm, m24_sub2);
      if (!r2.stats.closed || r2.table->index() != 26565) {
        ok = false;
        os << "first quotient plane index; ";
      } else {
        m24_plane = *r2.table;
      }
    }

    fp::Presentation ph = lab::derive_presentation(ctx, tw.alphabeta);
    for (const auto &w : lab::held_extra_relators(ph))
      ph.relators.push_back(w);
    std::vector<fp::Word> hsub = lab::generator_words(ph, line);
    fp::EnumResult rh = fp::todd_coxeter(ph, hsub);
    if (!rh.stats.closed || rh.table->index() != 187425) {
      ok = false;
      os << "second quotient index " << (rh.stats.closed ? rh.table->index() : 0) << "; ";
    } else {
      std::uint64_t ho = lab::certified_image_order(*rh.table, hsub, 21504);
      if (ho != 4030387200ull) {
        ok = false;
        os << "second quotient order " << ho << "; ";
      }
    }

    fp::Presentation pb = lab::derive_presentation(ctx, tw.beta);
    std::vector<fp::Word> a16sub = lab::generator_words(
        pb, {"a3", "a5", "a6", "a8", "a9", "a10", "a11", "a12", "a13"});
    fp::EnumResult ra = fp::todd_coxeter(pb, a16sub);
    if (!ra.stats.closed || ra.table->index() != 16) {
      ok = false;
      os << "degree-16 index " << (ra.stats.closed ? ra.table->index() : 0) << "; ";
    } else {
      auto gens = ra.table->generator_perms();
      bool even = true;
      for (const auto &g : gens)
        if (!g.is_even())
          even = false;
      perm::PermGroup image(16, gens);
      image.set_order_bound(10461394944000ull);
      if (!even || image.order() != 10461394944000ull) {
        ok = false;
        os << "degree-16 image order " << image.order() << (even ? "" : " with odd image")
           << "; ";
      }
    }
    run.criterion(8, "finite completions at indices 11385 / 187425 / 16", ok, os.str());
  }

  // 9. the coset graph of the first completion
  {
    std::ostringstream os;
    bool ok = m24_order == 244823040ull && m24_line.index() == 11385 &&
              m24_plane.index() == 26565;
    if (ok) {
      graph::Delta delta = graph::build_delta(m24_line, m24_plane);
      ok = delta.n1 == 11385 && delta.n2 == 26565;
      graph::GraphInputs in;
      in.delta = &delta;
      in.completion_order = m24_order;
      in.vertex_stab_order = 21504;
      for (const auto &w : m24_sub1)
        in.part1_stab_seeds.push_back(graph::combined_word_image(m24_line, m24_plane, w));
      for (const auto &w : m24_sub2)
        in.part2_stab_seeds.push_back(graph::combined_word_image(m24_line, m24_plane, w));
      in.spot_vertices = {3795, 7590};
      rep::Report g = graph::check_axioms(in);
      ok = ok && g.all_passed();
      os << failing_checks(g);
    } else {
      os << "prerequisite completion missing";
    }
    run.criterion(9, "coset graph towers and local structure", ok, os.str());
  }

  // 10. engine self-consistency: strategy agreement, cache revalidation,
  //     byte-stable reruns
  {
    std::ostringstream os;
    bool ok = true;
    fp::Presentation p = lab::derive_presentation(ctx, tw.alphabeta);
    std::vector<std::string> shared{"a1", "a2", "a3", "a4", "a5", "a6",
                                    "a7", "a8", "a9", "a10", "a11"};
    fp::Presentation pshared = lab::restrict_presentation(p, shared);
    fp::EnumOptions hlt, felsch;
    felsch.strategy = fp::Strategy::felsch;
    // strategy agreement on closing instances of growing size
    {
      fp::EnumResult a = fp::todd_coxeter(pshared, {}, hlt);
      fp::EnumResult b = fp::todd_coxeter(pshared, {}, felsch);
      if (!(a.stats.closed && b.stats.closed && a.table->raw() == b.table->raw())) {
        ok = false;
        os << "strategies disagree on the shared-subgroup set; ";
      }
    }
    {
      std::vector<std::string> line{"a1", "a2", "a3", "a4", "a5", "a6",
                                    "a7", "a8", "a9", "a10", "a11", "a12"};
      fp::Presentation pline = lab::restrict_presentation(p, line);
      fp::EnumResult a = fp::todd_coxeter(pline, {}, hlt);
      fp::EnumResult b = fp::todd_coxeter(pline, {}, felsch);
      if (!(a.stats.closed && b.stats.closed && a.table->raw() == b.table->raw())) {
        ok = false;
        os << "strategies disagree on the 21504-coset instance; ";
      }
    }
    {
      fp::Presentation pm = lab::derive_presentation(ctx, tw.alphabeta);
      for (const auto &w : lab::mathieu_extra_relators(pm))
        pm.relators.push_back(w);
      std::vector<fp::Word> sub = lab::generator_words(
          pm, {"a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "a9", "a10", "a11", "a12"});
      fp::EnumResult a = fp::todd_coxeter(pm, sub, hlt);
      fp::EnumResult b = fp::todd_coxeter(pm, sub, felsch);
      if (!(a.stats.closed && b.stats.closed && a.table->raw() == b.table->raw())) {
        ok = false;
        os << "strategies disagree on the 11385-coset instance; ";
      }
      // cache round trip revalidates
      if (a.stats.closed) {
        std::string path = "acceptance_cache_tmp.ctb";
        a.table->write_cache(path);
        auto loaded = fp::CosetTable::read_cache(path, a.table->content_hash());
        if (!loaded || !(loaded->raw() == a.table->raw()) || !loaded->verify(pm, sub)) {
          ok = false;
          os << "cache reload failed revalidation; ";
        }
        if (fp::CosetTable::read_cache(path, a.table->content_hash() ^ 1).has_value()) {
          ok = false;
          os << "hash mismatch not detected; ";
        }
        std::remove(path.c_str());
      }
    }
    // byte-stable reruns of a suite report
    {
      rep::Report a = lab::structure_suite_g1(ctx);
      rep::Report b = lab::structure_suite_g1(ctx);
      bool same = a.checks.size() == b.checks.size();
      for (std::size_t i = 0; same && i < a.checks.size(); ++i)
        same = a.checks[i].id == b.checks[i].id && a.checks[i].status == b.checks[i].status &&
               a.checks[i].expected == b.checks[i].expected &&
               a.checks[i].actual == b.checks[i].actual;
      if (!same) {
        ok = false;
        os << "suite report not stable across reruns; ";
      }
      fp::Presentation q1 = lab::derive_presentation(ctx, tw.alphabeta);
      if (q1.print() != p.print()) {
        ok = false;
        os << "derived presentation not stable; ";
      }
    }
    run.criterion(10, "engine self-consistency", ok, os.str());
  }

  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
  std::cout << "ACCEPTANCE: " << run.passed << "/" << (run.passed + run.failed)
            << " criteria passed in " << static_cast<int>(wall) << "s" << std::endl;
  return run.failed == 0 ? 0 : 1;
}
