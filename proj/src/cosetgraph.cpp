#include "amal/cosetgraph.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

namespace amal::graph {

void fail(const std::string &msg) { throw std::runtime_error("cosetgraph: " + msg); }

Delta build_delta(const fp::CosetTable &t1, const fp::CosetTable &t2) {
  if (t1.generator_count() != t2.generator_count())
    fail("coset tables disagree on the generator count");
  std::uint32_t g = t1.generator_count();
  Delta d;
  d.n1 = t1.index();
  d.n2 = t2.index();

  for (std::uint32_t i = 0; i < g; ++i) {
    std::vector<std::uint32_t> img(d.n1 + d.n2);
    for (std::uint32_t c = 0; c < d.n1; ++c)
      img[c] = t1.act(c, static_cast<std::int32_t>(i) + 1);
    for (std::uint32_t c = 0; c < d.n2; ++c)
      img[d.n1 + c] = d.n1 + t2.act(c, static_cast<std::int32_t>(i) + 1);
    d.action.push_back(perm::Perm::from_images(std::move(img)));
  }

  // adjacency = orbit of the base edge (coset 0, coset 0)
  std::vector<std::vector<std::uint32_t>> nb1(d.n1), nb2(d.n2);
  std::unordered_set<std::uint64_t> seen;
  std::deque<std::pair<std::uint32_t, std::uint32_t>> queue;
  auto push = [&](std::uint32_t u, std::uint32_t w) {
    std::uint64_t key = std::uint64_t(u) * d.n2 + w;
    if (seen.insert(key).second) {
      queue.emplace_back(u, w);
      nb1[u].push_back(d.n1 + w);
      nb2[w].push_back(u);
      if (seen.size() > std::uint64_t(d.n1) * 64)
        fail("edge orbit exceeds the valency guard");
    }
  };
  push(0, 0);
  while (!queue.empty()) {
    auto [u, w] = queue.front();
    queue.pop_front();
    for (const auto &p : d.action)
      push(p[u], p[d.n1 + w] - d.n1);
  }

  d.val1 = static_cast<std::uint32_t>(nb1[0].size());
  d.val2 = static_cast<std::uint32_t>(nb2[0].size());
  for (auto &row : nb1) {
    if (row.size() != d.val1)
      fail("part-1 valency is not constant");
    std::sort(row.begin(), row.end());
    d.adj1.insert(d.adj1.end(), row.begin(), row.end());
  }
  for (auto &row : nb2) {
    if (row.size() != d.val2)
      fail("part-2 valency is not constant");
    std::sort(row.begin(), row.end());
    d.adj2.insert(d.adj2.end(), row.begin(), row.end());
  }
  return d;
}

Gamma gamma_component(const Delta &d) {
  Gamma g;
  g.n = d.n1;
  std::vector<std::vector<std::uint32_t>> nb(d.n1);
  for (std::uint32_t w = 0; w < d.n2; ++w) {
    const std::uint32_t *row = d.row2(w);
    for (std::uint32_t i = 0; i < d.val2; ++i)
      for (std::uint32_t j = i + 1; j < d.val2; ++j) {
        nb[row[i]].push_back(row[j]);
        nb[row[j]].push_back(row[i]);
      }
  }
  g.regular = true;
  g.valency = static_cast<std::uint32_t>(nb.empty() ? 0 : nb[0].size());
  for (auto &row : nb) {
    std::sort(row.begin(), row.end());
    if (row.size() != g.valency || std::adjacent_find(row.begin(), row.end()) != row.end())
      g.regular = false;
  }
  if (!g.regular)
    return g;
  g.adj.reserve(std::size_t(g.n) * g.valency);
  for (auto &row : nb)
    g.adj.insert(g.adj.end(), row.begin(), row.end());
  return g;
}

perm::Perm combined_word_image(const fp::CosetTable &t1, const fp::CosetTable &t2,
                               const fp::Word &w) {
  std::uint32_t n1 = t1.index(), n2 = t2.index();
  std::vector<std::uint32_t> img(n1 + n2);
  for (std::uint32_t c = 0; c < n1; ++c)
    img[c] = t1.trace(c, w);
  for (std::uint32_t c = 0; c < n2; ++c)
    img[n1 + c] = n1 + t2.trace(c, w);
  return perm::Perm::from_images(std::move(img));
}

perm::PermGroup induced_on_points(const std::vector<perm::Perm> &gens,
                                  const std::vector<std::uint32_t> &points) {
  std::vector<std::int64_t> where(gens.empty() ? 0 : gens[0].degree(), -1);
  for (std::size_t i = 0; i < points.size(); ++i)
    where[points[i]] = static_cast<std::int64_t>(i);
  std::vector<perm::Perm> out;
  for (const auto &g : gens) {
    std::vector<std::uint32_t> img(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      std::int64_t j = where[g[points[i]]];
      if (j < 0)
        fail("generator does not preserve the point set");
      img[i] = static_cast<std::uint32_t>(j);
    }
    out.push_back(perm::Perm::from_images(std::move(img)));
  }
  return perm::PermGroup(static_cast<std::uint32_t>(points.size()), out);
}

namespace {

// breadth-first spheres in the combined bipartite graph
std::vector<std::vector<std::uint32_t>> delta_spheres(const Delta &d, std::uint32_t start,
                                                      int radius) {
  std::vector<int> dist(d.degree(), -1);
  std::vector<std::vector<std::uint32_t>> spheres(radius + 1);
  std::deque<std::uint32_t> queue{start};
  dist[start] = 0;
  spheres[0].push_back(start);
  auto neighbours = [&](std::uint32_t v) {
    if (v < d.n1)
      return std::make_pair(d.row1(v), d.val1);
    return std::make_pair(d.row2(v - d.n1), d.val2);
  };
  while (!queue.empty()) {
    std::uint32_t v = queue.front();
    queue.pop_front();
    if (dist[v] == radius)
      continue;
    auto [row, val] = neighbours(v);
    for (std::uint32_t i = 0; i < val; ++i) {
      std::uint32_t u = row[i];
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        spheres[dist[u]].push_back(u);
        queue.push_back(u);
      }
    }
  }
  return spheres;
}

std::vector<std::vector<std::uint32_t>> gamma_spheres(const Gamma &g, std::uint32_t start,
                                                      int radius) {
  std::vector<int> dist(g.n, -1);
  std::vector<std::vector<std::uint32_t>> spheres(radius + 1);
  std::deque<std::uint32_t> queue{start};
  dist[start] = 0;
  spheres[0].push_back(start);
  while (!queue.empty()) {
    std::uint32_t v = queue.front();
    queue.pop_front();
    if (dist[v] == radius)
      continue;
    const std::uint32_t *row = g.row(v);
    for (std::uint32_t i = 0; i < g.valency; ++i) {
      std::uint32_t u = row[i];
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        spheres[dist[u]].push_back(u);
        queue.push_back(u);
      }
    }
  }
  return spheres;
}

// a group element carrying `from` to `to`, as a product of the generators
perm::Perm transporter(const std::vector<perm::Perm> &gens, std::uint32_t from,
                       std::uint32_t to) {
  std::uint32_t degree = gens[0].degree();
  std::vector<std::int32_t> via(degree, -1), parent(degree, -1);
  std::deque<std::uint32_t> queue{from};
  via[from] = -2;
  while (!queue.empty() && via[to] == -1) {
    std::uint32_t v = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      std::uint32_t u = gens[i][v];
      if (via[u] == -1) {
        via[u] = static_cast<std::int32_t>(i);
        parent[u] = static_cast<std::int32_t>(v);
        queue.push_back(u);
      }
    }
  }
  if (via[to] == -1)
    fail("points lie in different orbits");
  std::vector<std::int32_t> path;
  for (std::uint32_t v = to; v != from; v = static_cast<std::uint32_t>(parent[v]))
    path.push_back(via[v]);
  std::reverse(path.begin(), path.end());
  perm::Perm out(degree);
  for (std::int32_t gi : path)
    out = out * gens[gi];
  return out;
}

std::uint64_t pair_orbit_size(const std::vector<perm::Perm> &gens, std::uint32_t a,
                              std::uint32_t b, std::uint64_t guard) {
  std::unordered_set<std::uint64_t> seen;
  std::deque<std::pair<std::uint32_t, std::uint32_t>> queue;
  std::uint32_t degree = gens[0].degree();
  auto push = [&](std::uint32_t x, std::uint32_t y) {
    std::uint64_t k = std::uint64_t(x) * degree + y;
    if (seen.insert(k).second) {
      if (seen.size() > guard)
        fail("pair orbit exceeds the guard");
      queue.emplace_back(x, y);
    }
  };
  push(a, b);
  while (!queue.empty()) {
    auto [x, y] = queue.front();
    queue.pop_front();
    for (const auto &g : gens)
      push(g[x], g[y]);
  }
  return seen.size();
}

struct Tower {
  std::vector<std::uint64_t> orders;   // stabilizer orders of the nested balls
  std::vector<perm::PermGroup> groups; // the corresponding stabilizers
};

Tower ball_tower(const std::vector<perm::Perm> &action, std::uint64_t group_order,
                 const std::vector<std::vector<std::uint32_t>> &spheres,
                 const std::vector<perm::Perm> &seeds) {
  std::vector<std::uint32_t> prefix;
  std::vector<std::size_t> cuts;
  for (const auto &s : spheres) {
    prefix.insert(prefix.end(), s.begin(), s.end());
    cuts.push_back(prefix.size());
  }
  perm::PermGroup g(action[0].degree(), action);
  g.set_base_prefix(prefix);
  g.set_order_bound(group_order);
  g.seed_stabilizer_elements(seeds);
  Tower t;
  for (std::size_t c : cuts) {
    t.orders.push_back(g.prefix_stabilizer_order(c));
    t.groups.push_back(g.prefix_stabilizer_group(c));
  }
  return t;
}

// the unique nontrivial element of an order-2 group
perm::Perm involution_of(const perm::PermGroup &g) {
  for (const auto &e : g.elements(4))
    if (!e.is_identity())
      return e;
  fail("expected a nontrivial element");
}

bool fixes_all(const perm::Perm &g, const std::vector<std::uint32_t> &points) {
  for (std::uint32_t p : points)
    if (g[p] != p)
      return false;
  return true;
}

} // namespace

rep::Report check_axioms(const GraphInputs &in) {
  const Delta &d = *in.delta;
  rep::Report r;
  r.suite = "graph";

  r.add_eq("delta.part1", in.completion_order / in.vertex_stab_order, d.n1);
  r.add_eq("delta.valency1", 7, d.val1);
  r.add_eq("delta.valency2", 3, d.val2);
  r.add_eq("delta.double_count", std::uint64_t(d.n1) * 7, std::uint64_t(d.n2) * 3);

  Gamma g = gamma_component(d);
  r.add_true("gamma.regular14", g.regular && g.valency == 14,
             "distance-two graph is 14-regular");
  {
    // connectivity
    std::vector<int> dist(g.n, -1);
    std::deque<std::uint32_t> queue{0};
    dist[0] = 0;
    std::uint32_t reached = 1;
    while (!queue.empty()) {
      std::uint32_t v = queue.front();
      queue.pop_front();
      for (std::uint32_t i = 0; i < g.valency; ++i) {
        std::uint32_t u = g.row(v)[i];
        if (dist[u] < 0) {
          dist[u] = dist[v] + 1;
          ++reached;
          queue.push_back(u);
        }
      }
    }
    r.add_eq("gamma.connected", g.n, reached);
  }

  // one triangle per edge: adjacent vertices share exactly one neighbour
  bool unique_triangles = true;
  std::uint64_t edge_count = 0;
  for (std::uint32_t u = 0; u < g.n && unique_triangles; ++u) {
    const std::uint32_t *row = g.row(u);
    for (std::uint32_t i = 0; i < g.valency; ++i) {
      std::uint32_t v = row[i];
      if (v <= u)
        continue;
      ++edge_count;
      const std::uint32_t *rv = g.row(v);
      std::uint32_t common = 0;
      std::uint32_t a = 0, b = 0;
      while (a < g.valency && b < g.valency) {
        if (row[a] < rv[b])
          ++a;
        else if (row[a] > rv[b])
          ++b;
        else {
          ++common;
          ++a;
          ++b;
        }
      }
      if (common != 1) {
        unique_triangles = false;
        break;
      }
    }
  }
  r.add_true("gamma.unique_triangle_per_edge", unique_triangles,
             "every edge lies in exactly one triangle");
  r.add_eq("gamma.triangle_count", d.n2, edge_count / 3);

  // transitivity: one vertex orbit on part 1, one arc orbit on gamma
  perm::PermGroup whole(d.degree(), d.action);
  r.add_eq("gamma.vertex_transitive", d.n1, whole.orbit_of(0).size());
  r.add_eq("gamma.arc_transitive", std::uint64_t(d.n1) * 14,
           pair_orbit_size(d.action, 0, g.row(0)[0], std::uint64_t(d.n1) * 20));

  // towers around the base vertex
  auto dspheres = delta_spheres(d, 0, 5);
  Tower dt = ball_tower(d.action, in.completion_order,
                        {dspheres[0], dspheres[1], dspheres[2], dspheres[3]},
                        in.part1_stab_seeds);
  r.add_eq("delta.stab_vertex", in.vertex_stab_order, dt.orders[0]);
  r.add_eq("delta.stab_ball1", 128, dt.orders[1]);
  r.add_eq("delta.stab_ball2", 16, dt.orders[2]);
  r.add_eq("delta.stab_ball3", 2, dt.orders[3]);
  // the two last terms come from the order-2 group directly
  std::uint64_t g4 = 0, g5 = 0;
  if (dt.orders[3] == 2) {
    perm::Perm e = involution_of(dt.groups[3]);
    bool fix4 = fixes_all(e, dspheres[4]);
    bool fix5 = fix4 && fixes_all(e, dspheres[5]);
    g4 = fix4 ? 2 : 1;
    g5 = fix5 ? 2 : 1;
  }
  r.add_eq("delta.stab_ball4", 2, g4);
  r.add_eq("delta.stab_ball5", 1, g5);
  {
    bool quotients = dt.orders[0] / dt.orders[1] == 168 && dt.orders[1] / dt.orders[2] == 8 &&
                     dt.orders[2] / dt.orders[3] == 8 && dt.orders[3] / g4 == 1 && g4 / g5 == 2 &&
                     g5 == 1;
    r.add_true("delta.tower_quotients_168_8_8_1_2_1", quotients,
               "ball stabilizer quotient orders are 168, 8, 8, 1, 2, 1");
  }

  auto gspheres = gamma_spheres(g, 0, 3);
  Tower gt = ball_tower(d.action, in.completion_order,
                        {gspheres[0], gspheres[1], gspheres[2]}, in.part1_stab_seeds);
  r.add_eq("gamma.stab_ball1", 16, gt.orders[1]);
  r.add_eq("gamma.stab_ball2", 2, gt.orders[2]);
  std::uint64_t q3 = 0;
  if (gt.orders[2] == 2) {
    perm::Perm e = involution_of(gt.groups[2]);
    q3 = fixes_all(e, gspheres[3]) ? 2 : 1;
  }
  r.add_eq("gamma.stab_ball3", 1, q3);

  // induced actions at the base vertex: the 7 triangles through x and the
  // kernel on the 14 neighbours
  {
    const perm::PermGroup &gx = dt.groups[0];
    std::vector<std::uint32_t> wpoints(dspheres[1].begin(), dspheres[1].end());
    std::sort(wpoints.begin(), wpoints.end());
    perm::PermGroup on7 = induced_on_points(gx.generators(), wpoints);
    r.add_eq("vertex.triangle_action_order", 168, on7.order());
    r.add_eq("vertex.triangle_action_two_transitive", 42,
             pair_orbit_size(on7.generators(), 0, 1, 10000));
    std::vector<std::uint32_t> orbit14 = gx.orbit_of(gspheres[1][0]);
    r.add_eq("vertex.transitive_on_gamma_neighbours", 14, orbit14.size());
  }
  {
    // kernel of the triangle action, induced on the 14 neighbours
    std::vector<std::uint32_t> gpts(gspheres[1].begin(), gspheres[1].end());
    std::sort(gpts.begin(), gpts.end());
    perm::PermGroup induced = induced_on_points(dt.groups[1].generators(), gpts);
    std::uint64_t n = induced.order();
    bool exponent_two = true;
    for (const auto &e : induced.elements(16))
      if (!(e * e).is_identity())
        exponent_two = false;
    r.add_eq("triangle_kernel.order", 8, n);
    r.add_true("triangle_kernel.elementary_abelian", exponent_two && n == 8,
               "kernel on the neighbourhood is elementary abelian of order 8");
  }
  {
    // the triangle stabilizer: the three neighbours of a part-2 vertex
    // have that vertex as their only common neighbour, so its stabilizer
    // is the full setwise stabilizer of the triangle
    std::uint32_t w = d.n1; // part-2 combined index 0
    const std::uint32_t *tri = d.row2(0);
    std::vector<std::uint32_t> common;
    for (std::uint32_t i = 0; i < d.val1; ++i) {
      std::uint32_t cand = d.row1(tri[0])[i];
      bool in_all = true;
      for (std::uint32_t k = 1; k < d.val2; ++k) {
        const std::uint32_t *rk = d.row1(tri[k]);
        if (!std::binary_search(rk, rk + d.val1, cand))
          in_all = false;
      }
      if (in_all)
        common.push_back(cand);
    }
    r.add_true("triangle.unique_common_neighbour", common.size() == 1 && common[0] == w,
               "the triangle determines its part-2 vertex");
    perm::PermGroup gw =
        ball_tower(d.action, in.completion_order, {{w}}, in.part2_stab_seeds).groups[0];
    std::vector<std::uint32_t> tpts(tri, tri + d.val2);
    std::sort(tpts.begin(), tpts.end());
    perm::PermGroup on3 = induced_on_points(gw.generators(), tpts);
    r.add_eq("triangle.stabilizer_induces_s3", 6, on3.order());
  }

  // tower reruns at further base vertices (conjugated seeds keep it cheap)
  for (std::uint32_t x : in.spot_vertices) {
    perm::Perm move = transporter(d.action, 0, x);
    std::vector<perm::Perm> seeds;
    for (const auto &s : in.part1_stab_seeds)
      seeds.push_back(perm::Perm::conjugate(s, move));
    auto sp = delta_spheres(d, x, 3);
    Tower t = ball_tower(d.action, in.completion_order, {sp[0], sp[1], sp[2], sp[3]}, seeds);
    bool same = t.orders[0] == in.vertex_stab_order && t.orders[1] == 128 &&
                t.orders[2] == 16 && t.orders[3] == 2;
    r.add_true("delta.tower_at_vertex_" + std::to_string(x), same,
               "ball stabilizer orders repeat at another base vertex");
  }
  return r;
}

void export_edges(const Delta &d, std::ostream &os) {
  for (std::uint32_t u = 0; u < d.n1; ++u) {
    const std::uint32_t *row = d.row1(u);
    for (std::uint32_t i = 0; i < d.val1; ++i)
      os << u << " " << row[i] << "\n";
  }
}

} // namespace amal::graph
