// Command-line driver: runs the verification suites, the coset
// enumerations and the coset-graph checks, and emits one JSON object per
// check plus a trailing summary object.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "amal/amalgams.hpp"
#include "amal/coset_enum.hpp"
#include "amal/cosetgraph.hpp"
#include "amal/report.hpp"

using json = nlohmann::ordered_json;
using namespace amal;

namespace {

constexpr const char *kVersion = "1.0.0";

struct Options {
  std::string out_path;
  std::string cache_dir = ".cache";
  std::uint64_t max_cosets = 5'000'000;
  std::string strategy = "hlt";
  unsigned jobs = 1;
  bool deep = false;
  std::string export_path;
};

struct Session {
  Options opts;
  std::vector<rep::Report> reports;
  std::vector<std::pair<std::string, std::uint64_t>> input_hashes;
  bool resource_exhausted = false;

  void add(rep::Report r, double ms) {
    for (auto &c : r.checks)
      c.elapsed_ms = ms;
    reports.push_back(std::move(r));
  }
};

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

fp::EnumOptions enum_options(const Options &o, fp::Strategy strat) {
  fp::EnumOptions eo;
  eo.max_cosets = o.max_cosets;
  eo.strategy = strat;
  return eo;
}

std::string cache_path(const Options &o, const std::string &name, std::uint64_t hash) {
  std::ostringstream os;
  os << o.cache_dir << "/" << name << "_" << std::hex << hash << ".ctb";
  return os.str();
}

// Enumerate with caching; a cached table is revalidated against the
// presentation before reuse and recomputed on any mismatch.
fp::CosetTable enumerate_cached(Session &s, const std::string &name, const fp::Presentation &p,
                                const std::vector<fp::Word> &subgroup, fp::Strategy strat) {
  std::uint64_t hash = fp::hash_words(p.content_hash(), p, subgroup);
  std::string path = cache_path(s.opts, name, hash);
  if (auto cached = fp::CosetTable::read_cache(path, hash)) {
    if (cached->verify(p, subgroup))
      return *cached;
  }
  fp::EnumResult res = fp::todd_coxeter(p, subgroup, enum_options(s.opts, strat));
  if (!res.table) {
    s.resource_exhausted = true;
    std::ostringstream os;
    os << "exceeded max_cosets: live=" << res.stats.live
       << " total_defined=" << res.stats.total_defined;
    throw std::runtime_error(os.str());
  }
  std::filesystem::create_directories(s.opts.cache_dir);
  res.table->write_cache(path);
  return *res.table;
}

struct CompletionSetup {
  lab::Context ctx;
  lab::Twists twists;

  CompletionSetup() : ctx(lab::build_context()), twists(lab::build_twists(ctx)) {}

  fp::Presentation presentation(const std::string &twist_name) const {
    return lab::derive_presentation(ctx, twists.by_name(twist_name));
  }
  static std::vector<std::string> line_names() {
    return {"a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "a9", "a10", "a11", "a12"};
  }
  static std::vector<std::string> plane_names() {
    return {"a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "a9", "a10", "a11", "a13"};
  }
  static std::vector<std::string> shared_names() {
    return {"a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "a9", "a10", "a11"};
  }
  static std::vector<std::string> a16_subgroup_names() {
    return {"a3", "a5", "a6", "a8", "a9", "a10", "a11", "a12", "a13"};
  }
};

void timed(Session &s, const std::function<rep::Report()> &job) {
  auto t0 = std::chrono::steady_clock::now();
  rep::Report r = job();
  s.add(std::move(r), ms_since(t0));
}

void run_structure(Session &s) {
  lab::Context ctx = lab::build_context();
  timed(s, [&] { return lab::structure_suite_g1(ctx); });
  timed(s, [&] { return lab::structure_suite_g2(ctx); });
  timed(s, [&] { return lab::structure_suite_b(ctx); });
  timed(s, [&] { return lab::module_suite(ctx); });
  timed(s, [&] { return lab::complement_suite(ctx); });
}

void run_amalgams(Session &s) {
  lab::Context ctx = lab::build_context();
  lab::Twists tw = lab::build_twists(ctx);
  timed(s, [&] { return lab::twist_suite(ctx, tw); });
  timed(s, [&] { return lab::faithfulness_suite(ctx, tw); });
}

// subgroup enumerations proving exact presented orders; these double as
// the stabilizer bounds for image-order certification
std::uint64_t presented_order(Session &s, const CompletionSetup &c, const std::string &name,
                              const fp::Presentation &sub, fp::Strategy strat) {
  fp::CosetTable t = enumerate_cached(s, name, sub, {}, strat);
  s.input_hashes.emplace_back(name, sub.content_hash());
  return t.index();
}

void run_complete(Session &s, const std::string &target) {
  CompletionSetup c;
  fp::Strategy strat = s.opts.strategy == "felsch" ? fp::Strategy::felsch : fp::Strategy::hlt;
  bool both = s.opts.strategy == "both";
  auto t0 = std::chrono::steady_clock::now();
  rep::Report r;
  r.suite = "complete." + target;

  auto cross_check = [&](const std::string &name, const fp::Presentation &p,
                         const std::vector<fp::Word> &sub, const fp::CosetTable &table) {
    if (!both)
      return;
    fp::EnumResult alt = fp::todd_coxeter(p, sub, enum_options(s.opts, fp::Strategy::felsch));
    bool same = alt.table && alt.table->raw() == table.raw();
    r.add_true(name + ".strategies_agree", same,
               "hlt and felsch produce the same standardized table");
  };

  if (target == "g1" || target == "g2" || target == "b") {
    fp::Presentation p = c.presentation("alphabeta");
    fp::Presentation sub =
        target == "g1"
            ? lab::restrict_presentation(p, CompletionSetup::line_names())
            : (target == "g2" ? lab::restrict_presentation(p, CompletionSetup::plane_names())
                              : lab::restrict_presentation(p, CompletionSetup::shared_names()));
    fp::CosetTable t = enumerate_cached(s, target, sub, {}, strat);
    std::uint64_t expect = target == "g1" ? 21504 : (target == "g2" ? 9216 : 3072);
    r.add_eq("index_over_trivial", expect, t.index());
    s.input_hashes.emplace_back(target, sub.content_hash());
    cross_check(target, sub, {}, t);
  } else if (target == "m24" || target == "he") {
    fp::Presentation p = c.presentation("alphabeta");
    auto extra = target == "m24" ? lab::mathieu_extra_relators(p) : lab::held_extra_relators(p);
    for (const auto &w : extra)
      p.relators.push_back(w);
    fp::Presentation line = lab::restrict_presentation(p, CompletionSetup::line_names());
    std::uint64_t stab_bound = presented_order(s, c, "g1", line, strat);
    r.add_eq("line_stabilizer_presented_order", 21504, stab_bound);
    std::vector<fp::Word> sub1 = lab::generator_words(p, CompletionSetup::line_names());
    fp::CosetTable t = enumerate_cached(s, target + "_line", p, sub1, strat);
    std::uint64_t expect_index = target == "m24" ? 11385 : 187425;
    std::uint64_t expect_order = target == "m24" ? 244823040ull : 4030387200ull;
    r.add_eq("index", expect_index, t.index());
    std::uint64_t order = lab::certified_image_order(t, sub1, stab_bound);
    r.add_eq("image_order", expect_order, order);
    s.input_hashes.emplace_back(target, p.content_hash());
    cross_check(target, p, sub1, t);
  } else if (target == "a16") {
    fp::Presentation p = c.presentation("beta");
    std::vector<fp::Word> sub = lab::generator_words(p, CompletionSetup::a16_subgroup_names());
    fp::CosetTable t = enumerate_cached(s, "a16", p, sub, strat);
    r.add_eq("index", 16, t.index());
    auto gens = t.generator_perms();
    bool all_even = true;
    for (const auto &g : gens)
      if (!g.is_even())
        all_even = false;
    r.add_true("generators_even", all_even, "every generator image is an even permutation");
    perm::PermGroup image(16, gens);
    image.set_order_bound(10461394944000ull);
    r.add_eq("image_order", 10461394944000ull, image.order());
    s.input_hashes.emplace_back("a16", p.content_hash());
    cross_check("a16", p, sub, t);
  } else {
    throw CLI::ValidationError("unknown completion target " + target);
  }
  s.add(std::move(r), ms_since(t0));
}

void run_graph(Session &s, const std::string &completion) {
  if (completion == "he" && !s.opts.deep)
    throw CLI::ValidationError("the he graph run takes several minutes; pass --deep to enable");
  CompletionSetup c;
  fp::Strategy strat = s.opts.strategy == "felsch" ? fp::Strategy::felsch : fp::Strategy::hlt;
  auto t0 = std::chrono::steady_clock::now();

  fp::Presentation p = c.presentation("alphabeta");
  auto extra =
      completion == "m24" ? lab::mathieu_extra_relators(p) : lab::held_extra_relators(p);
  for (const auto &w : extra)
    p.relators.push_back(w);
  fp::Presentation line = lab::restrict_presentation(p, CompletionSetup::line_names());
  std::uint64_t stab_bound = presented_order(s, c, "g1", line, strat);
  std::vector<fp::Word> sub1 = lab::generator_words(p, CompletionSetup::line_names());
  std::vector<fp::Word> sub2 = lab::generator_words(p, CompletionSetup::plane_names());
  fp::CosetTable t1 = enumerate_cached(s, completion + "_line", p, sub1, strat);
  fp::CosetTable t2 = enumerate_cached(s, completion + "_plane", p, sub2, strat);
  std::uint64_t order = lab::certified_image_order(t1, sub1, stab_bound);

  graph::Delta delta = graph::build_delta(t1, t2);
  graph::GraphInputs in;
  in.delta = &delta;
  in.completion_order = order;
  in.vertex_stab_order = stab_bound;
  for (const auto &w : sub1)
    in.part1_stab_seeds.push_back(graph::combined_word_image(t1, t2, w));
  for (const auto &w : sub2)
    in.part2_stab_seeds.push_back(graph::combined_word_image(t1, t2, w));
  if (completion == "m24")
    in.spot_vertices = {delta.n1 / 3, (2 * delta.n1) / 3};

  rep::Report r = graph::check_axioms(in);
  r.suite = "graph." + completion;
  r.add_eq("completion_order", completion == "m24" ? 244823040ull : 4030387200ull, order);
  if (!s.opts.export_path.empty()) {
    std::ofstream os(s.opts.export_path);
    graph::export_edges(delta, os);
    r.add_true("exported", os.good(), "edge list written to " + s.opts.export_path);
  }
  s.input_hashes.emplace_back("graph_" + completion, p.content_hash());
  s.add(std::move(r), ms_since(t0));
}

void run_all(Session &s) {
  if (s.opts.jobs > 1) {
    auto part1 = std::async(std::launch::async, [&] {
      Session tmp{s.opts, {}, {}, false};
      run_structure(tmp);
      return tmp;
    });
    auto part2 = std::async(std::launch::async, [&] {
      Session tmp{s.opts, {}, {}, false};
      run_amalgams(tmp);
      return tmp;
    });
    for (auto *f : {&part1, &part2}) {
      Session done = f->get();
      for (auto &r : done.reports)
        s.reports.push_back(std::move(r));
      s.resource_exhausted |= done.resource_exhausted;
    }
  } else {
    run_structure(s);
    run_amalgams(s);
  }
  run_complete(s, "g1");
  run_complete(s, "g2");
  run_complete(s, "b");
  run_complete(s, "m24");
  run_complete(s, "a16");
  run_graph(s, "m24");
  if (s.opts.deep) {
    run_complete(s, "he");
    run_graph(s, "he");
  }
}

int emit(Session &s) {
  std::ostringstream out;
  std::uint64_t total = 0, passed = 0, failed = 0, skipped = 0;
  for (const auto &r : s.reports)
    for (const auto &c : r.checks) {
      ++total;
      if (c.status == "pass")
        ++passed;
      else if (c.status == "skip")
        ++skipped;
      else
        ++failed;
      json line;
      line["suite"] = r.suite;
      line["check"] = c.id;
      line["status"] = c.status;
      line["expected"] = c.expected;
      line["actual"] = c.actual;
      line["elapsed_ms"] = c.elapsed_ms;
      out << line.dump() << "\n";
    }
  int exit_code = s.resource_exhausted ? 3 : (failed ? 1 : 0);
  json summary;
  summary["summary"] = true;
  summary["toolkit_version"] = kVersion;
  summary["total"] = total;
  summary["passed"] = passed;
  summary["failed"] = failed;
  summary["skipped"] = skipped;
  json hashes = json::object();
  for (const auto &[name, h] : s.input_hashes) {
    std::ostringstream hs;
    hs << std::hex << h;
    hashes[name] = hs.str();
  }
  summary["inputs"] = hashes;
  summary["exit_code"] = exit_code;
  out << summary.dump() << "\n";

  if (s.opts.out_path.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream f(s.opts.out_path);
    f << out.str();
  }
  return exit_code;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"verification toolkit for a pair of rank-2 amalgams and their completions"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opts;
  if (const char *env = std::getenv("AMALGAM_CACHE"))
    opts.cache_dir = env;
  app.add_option("--out", opts.out_path, "write the report to this path instead of stdout");
  app.add_option("--cache", opts.cache_dir, "coset-table cache directory");
  app.add_option("--max-cosets", opts.max_cosets, "coset table size limit");
  app.add_option("--strategy", opts.strategy, "enumeration strategy: hlt, felsch or both")
      ->check(CLI::IsMember({"hlt", "felsch", "both"}));
  app.add_option("--jobs", opts.jobs, "concurrent independent suite jobs");
  app.add_flag("--deep", opts.deep, "enable the long-running he checks");

  auto *structure = app.add_subcommand("structure", "vertex/edge stabilizer structure suites");
  auto *amalgams = app.add_subcommand("amalgams", "twist and faithfulness suites");
  auto *complete = app.add_subcommand("complete", "coset enumerations");
  std::string target;
  complete->add_option("--target", target, "g1, g2, b, m24, he or a16")->required();
  auto *graphcmd = app.add_subcommand("graph", "coset graph checks");
  std::string completion;
  graphcmd->add_option("--completion", completion, "m24 or he")->required();
  graphcmd->add_option("--export", opts.export_path, "write the edge list to this path");
  auto *allcmd = app.add_subcommand("all", "everything (he parts behind --deep)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Session session;
  session.opts = opts;
  try {
    if (structure->parsed())
      run_structure(session);
    else if (amalgams->parsed())
      run_amalgams(session);
    else if (complete->parsed())
      run_complete(session, target);
    else if (graphcmd->parsed())
      run_graph(session, completion);
    else if (allcmd->parsed())
      run_all(session);
  } catch (const CLI::ValidationError &e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    int code = emit(session);
    return session.resource_exhausted ? 3 : (code ? code : 1);
  }
  return emit(session);
}
