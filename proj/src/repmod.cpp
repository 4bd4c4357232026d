#include "amal/repmod.hpp"

#include <algorithm>
#include <stdexcept>

#include "amal/mataction.hpp"

namespace amal::mod {

void fail(const std::string &msg) { throw std::runtime_error("repmod: " + msg); }

gf2::word_t Section::coords(const perm::Perm &p) const {
  auto it = coord_of.find(p.key());
  if (it == coord_of.end())
    fail("element is outside the coordinatized section");
  return it->second;
}

perm::Perm Section::rep(gf2::word_t v) const {
  if (basis_reps.empty())
    fail("section has no basis");
  perm::Perm out(basis_reps[0].degree());
  for (int i = 0; i < dim; ++i)
    if ((v >> i) & 1u)
      out = out * basis_reps[i];
  return out;
}

Section make_section(const std::vector<perm::Perm> &p_elements,
                     const std::vector<perm::Perm> &k_elements) {
  if (p_elements.empty() || k_elements.empty())
    fail("empty element list");
  Section s;
  for (const auto &k : k_elements) {
    if (!s.coord_of.emplace(k.key(), 0).second)
      fail("duplicate element in the kernel list");
  }
  // grow a basis: the first unseen element starts a new coordinate, and
  // the known set doubles by right multiplication with it
  for (const auto &e : p_elements) {
    if (s.coord_of.count(e.key()))
      continue;
    int bit = s.dim;
    s.basis_reps.push_back(e);
    ++s.dim;
    if (s.dim > 24)
      fail("section dimension exceeds the supported range");
    std::vector<std::pair<std::string, gf2::word_t>> snapshot(s.coord_of.begin(),
                                                              s.coord_of.end());
    std::unordered_map<std::string, const perm::Perm *> by_key;
    for (const auto &x : p_elements)
      by_key.emplace(x.key(), &x);
    for (const auto &[key, c] : snapshot) {
      auto it = by_key.find(key);
      if (it == by_key.end())
        fail("kernel is not contained in the section group");
      perm::Perm prod = *it->second * e;
      auto ins = s.coord_of.emplace(prod.key(), c | (gf2::word_t(1) << bit));
      if (!ins.second && ins.first->second != (c | (gf2::word_t(1) << bit)))
        fail("section quotient is not well-defined (kernel not normal?)");
    }
  }
  if (s.coord_of.size() != p_elements.size())
    fail("section coordinates do not cover the group");
  // elementary abelian checks: every square lands in the kernel and the
  // coordinates are additive against basis representatives
  for (const auto &e : p_elements)
    if (s.coords(e * e) != 0)
      fail("section quotient is not elementary abelian");
  for (const auto &e : p_elements) {
    gf2::word_t ce = s.coords(e);
    for (int i = 0; i < s.dim; ++i) {
      perm::Perm prod = e * s.basis_reps[i];
      if (s.coords(prod) != (ce ^ (gf2::word_t(1) << i)))
        fail("section coordinates are not additive");
    }
  }
  return s;
}

gf2::Matrix action_matrix(const Section &s, const perm::Perm &actor) {
  gf2::Matrix m(s.dim, s.dim);
  perm::Perm inv = actor.inverse();
  for (int i = 0; i < s.dim; ++i) {
    perm::Perm conj = inv * s.basis_reps[i] * actor;
    if (!s.has(conj))
      fail("actor does not normalize the section");
    m.row_ref(i) = s.coords(conj);
  }
  return m;
}

GroupModule conjugation_module(const Section &s, const std::vector<perm::Perm> &actors) {
  GroupModule m;
  m.dim = s.dim;
  for (const auto &a : actors)
    m.actors.push_back(action_matrix(s, a));
  for (const auto &mat : m.actors)
    if (!mat.is_invertible())
      fail("actor matrix is singular");
  // multiplicativity on generator pairs
  for (std::size_t i = 0; i < actors.size(); ++i)
    for (std::size_t j = 0; j < actors.size(); ++j) {
      gf2::Matrix prod = action_matrix(s, actors[i] * actors[j]);
      if (!(m.actors[i] * m.actors[j] == prod))
        fail("conjugation action is not multiplicative");
    }
  return m;
}

namespace {

bool subspace_invariant(const gf2::Subspace &s, const GroupModule &m) {
  for (const auto &a : m.actors)
    for (int i = 0; i < s.dim(); ++i)
      if (!s.contains(a.apply_row(s.basis_row(i))))
        return false;
  return true;
}

} // namespace

std::vector<gf2::Subspace> invariant_subspaces(const GroupModule &m) {
  std::vector<gf2::Subspace> out;
  for (const auto &s : gf2::all_subspaces(m.dim))
    if (subspace_invariant(s, m))
      out.push_back(s);
  return out;
}

std::vector<gf2::Subspace> invariant_subspaces_spinning(const GroupModule &m) {
  if (m.dim > 16)
    fail("spinning enumeration supports dim <= 16");
  std::vector<gf2::Subspace> found;
  std::unordered_map<std::string, bool> seen;
  auto push = [&](const gf2::Subspace &s) {
    std::string k = s.key();
    if (!seen.count(k)) {
      seen.emplace(std::move(k), true);
      found.push_back(s);
      return true;
    }
    return false;
  };
  push(gf2::Subspace(m.dim)); // zero subspace
  for (gf2::word_t seed = 1; seed < (gf2::word_t(1) << m.dim); ++seed) {
    std::vector<gf2::word_t> basis{seed};
    gf2::Subspace s = gf2::Subspace::span(basis, m.dim);
    bool grew = true;
    while (grew) {
      grew = false;
      for (int i = 0; i < s.dim() && !grew; ++i)
        for (const auto &a : m.actors) {
          gf2::word_t w = a.apply_row(s.basis_row(i));
          if (!s.contains(w)) {
            s = gf2::Subspace::sum(s, gf2::Subspace::span({w}, m.dim));
            grew = true;
            break;
          }
        }
    }
    push(s);
  }
  // close under joins: every invariant subspace is a sum of cyclic ones
  bool grew = true;
  while (grew) {
    grew = false;
    std::size_t n = found.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        gf2::Subspace s = gf2::Subspace::sum(found[i], found[j]);
        if (push(s))
          grew = true;
      }
  }
  return found;
}

gf2::QuadraticForm squaring_form(const Section &s, const std::vector<perm::Perm> &p_elements,
                                 const perm::Perm &z) {
  if (z.is_identity() || !(z * z).is_identity())
    fail("z must be an involution");
  for (const auto &e : p_elements)
    if (!(e * z == z * e))
      fail("z is not central in the section group");
  gf2::QuadraticForm q;
  q.dim = s.dim;
  q.gram = gf2::Matrix(s.dim, s.dim);
  auto value_of = [&](const perm::Perm &g) {
    perm::Perm sq = g * g;
    if (sq.is_identity())
      return 0;
    if (sq == z)
      return 1;
    fail("square lands outside the centre line");
  };
  for (int i = 0; i < s.dim; ++i)
    if (value_of(s.basis_reps[i]))
      q.diag |= gf2::word_t(1) << i;
  for (int i = 0; i < s.dim; ++i)
    for (int j = i + 1; j < s.dim; ++j) {
      perm::Perm c = s.basis_reps[i].inverse() * s.basis_reps[j].inverse() * s.basis_reps[i] *
                     s.basis_reps[j];
      int bij;
      if (c.is_identity())
        bij = 0;
      else if (c == z)
        bij = 1;
      else
        fail("commutator lands outside the centre line");
      if (bij) {
        q.gram.set(i, j, true);
        q.gram.set(j, i, true);
      }
    }
  // exhaustive well-definedness: q and its polar form agree with squaring
  // and commutators on every pair of coset representatives
  std::uint64_t total = std::uint64_t(1) << s.dim;
  for (std::uint64_t u = 0; u < total; ++u) {
    perm::Perm ru = s.rep(u);
    if (q.value(u) != value_of(ru))
      fail("squaring form disagrees with squares on a representative");
    for (std::uint64_t v = u + 1; v < total; ++v) {
      perm::Perm rv = s.rep(v);
      perm::Perm c = ru.inverse() * rv.inverse() * ru * rv;
      int expected = c.is_identity() ? 0 : (c == z ? 1 : -1);
      if (expected < 0)
        fail("commutator form is not centre-valued");
      if (q.polar(u, v) != expected)
        fail("polar form disagrees with the commutator form");
    }
  }
  return q;
}

int count_invariant_isotropic(int n) {
  if (n < 4 || n > 6)
    fail("isotropic count supports 4 <= n <= 6");
  mat::GeneratorTable table = mat::build_generators(n);
  // extraspecial core: all translations (column-1 roots) and the bottom-row roots
  std::vector<perm::Perm> core_gens;
  perm::Perm centre_perm;
  for (std::size_t i = 0; i < table.positions.size(); ++i) {
    auto [row, col] = table.positions[i];
    if (col == 1 || (row == n + 1 && col >= 2 && col <= n))
      core_gens.push_back(mat::to_permutation(table.matrices[i]));
    if (row == n + 1 && col == 1)
      centre_perm = mat::to_permutation(table.matrices[i]);
  }
  if (centre_perm.degree() == 0)
    fail("centre translation not found in the table");
  perm::PermGroup core(core_gens[0].degree(), core_gens);
  std::uint64_t expected = std::uint64_t(1) << (2 * n - 1);
  auto core_elements = core.elements(expected * 2);
  if (core_elements.size() != expected)
    fail("extraspecial core has an unexpected order");
  std::vector<perm::Perm> kernel{perm::Perm(core_gens[0].degree()), centre_perm};
  Section s = make_section(core_elements, kernel);
  if (s.dim != 2 * (n - 1))
    fail("central quotient has an unexpected dimension");
  std::vector<perm::Perm> actors;
  for (std::size_t idx : table.shared_gens)
    actors.push_back(mat::to_permutation(table.matrices[idx]));
  GroupModule m = conjugation_module(s, actors);
  gf2::QuadraticForm q = squaring_form(s, core_elements, centre_perm);
  std::vector<gf2::Subspace> inv =
      (m.dim <= 7) ? invariant_subspaces(m) : invariant_subspaces_spinning(m);
  int count = 0;
  for (const auto &u : inv)
    if (u.dim() == n - 1 && gf2::is_totally_singular(u, q))
      ++count;
  return count;
}

namespace extmod {

gf2::word_t eps(gf2::word_t f, gf2::word_t g) {
  if (f == g || f == 0 || g == 0)
    return 0;
  for (gf2::word_t v = 1; v < 8; ++v)
    if (gf2::parity(f & v) == 0 && gf2::parity(g & v) == 0)
      return v;
  fail("functionals with trivial common kernel");
}

Elem add(Elem x, Elem y) {
  gf2::word_t v = x & 7, f = (x >> 3) & 7;
  gf2::word_t w = y & 7, g = (y >> 3) & 7;
  gf2::word_t nv = v ^ w ^ eps(f, g);
  gf2::word_t nf = f ^ g;
  return static_cast<Elem>(nv | (nf << 3));
}

int quad(Elem x) {
  gf2::word_t v = x & 7, f = (x >> 3) & 7;
  return (f != 0 && gf2::parity(f & v) == 0) ? 1 : 0;
}

Elem act(Elem x, const gf2::Matrix &m, const gf2::Matrix &m_inv_t) {
  gf2::word_t v = x & 7, f = (x >> 3) & 7;
  gf2::word_t nv = m.apply_row(v);
  gf2::word_t nf = m_inv_t.apply_row(f); // dual action keeps f(v) invariant
  return static_cast<Elem>(nv | (nf << 3));
}

} // namespace extmod

ExtModuleChecks verify_ext_module() {
  using extmod::act;
  using extmod::add;
  using extmod::quad;
  ExtModuleChecks out;

  out.abelian_axioms = true;
  for (extmod::Elem x = 0; x < 64 && out.abelian_axioms; ++x) {
    if (add(x, x) != 0 || add(x, 0) != x)
      out.abelian_axioms = false;
    for (extmod::Elem y = 0; y < 64 && out.abelian_axioms; ++y) {
      if (add(x, y) != add(y, x))
        out.abelian_axioms = false;
      for (extmod::Elem z = 0; z < 64; ++z)
        if (add(add(x, y), z) != add(x, add(y, z))) {
          out.abelian_axioms = false;
          break;
        }
    }
  }

  // generators of the linear group on the natural module
  gf2::Matrix t(3, 3), c(3, 3);
  t.row_ref(0) = 1 | 2; // transvection e1 -> e1 + e2
  t.row_ref(1) = 2;
  t.row_ref(2) = 4;
  c.row_ref(0) = 2; // 3-cycle of the basis
  c.row_ref(1) = 4;
  c.row_ref(2) = 1;
  std::vector<gf2::Matrix> gens{t, c};
  std::vector<gf2::Matrix> gens_inv_t{t.inverse().transpose(), c.inverse().transpose()};

  out.action_preserves_addition = true;
  out.quad_invariant = true;
  for (std::size_t gi = 0; gi < gens.size(); ++gi)
    for (extmod::Elem x = 0; x < 64; ++x) {
      if (quad(act(x, gens[gi], gens_inv_t[gi])) != quad(x))
        out.quad_invariant = false;
      for (extmod::Elem y = 0; y < 64; ++y)
        if (act(add(x, y), gens[gi], gens_inv_t[gi]) !=
            add(act(x, gens[gi], gens_inv_t[gi]), act(y, gens[gi], gens_inv_t[gi])))
          out.action_preserves_addition = false;
    }

  // coordinatize the 64-element group and count invariant subspaces
  std::vector<extmod::Elem> basis;
  std::vector<extmod::Elem> elem_of(64, 0);
  std::vector<int> coord_of(64, -1);
  coord_of[0] = 0;
  elem_of[0] = 0;
  std::size_t known = 1;
  for (extmod::Elem e = 1; e < 64; ++e) {
    if (coord_of[e] >= 0)
      continue;
    int bit = static_cast<int>(basis.size());
    basis.push_back(e);
    for (int c0 = 0; c0 < (1 << bit); ++c0) {
      extmod::Elem x = elem_of[c0];
      extmod::Elem nx = add(x, e);
      coord_of[nx] = c0 | (1 << bit);
      elem_of[c0 | (1 << bit)] = nx;
      ++known;
    }
  }
  if (basis.size() != 6 || known != 64)
    fail("module coordinatization failed");

  GroupModule m;
  m.dim = 6;
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    gf2::Matrix am(6, 6);
    for (int i = 0; i < 6; ++i)
      am.row_ref(i) =
          static_cast<gf2::word_t>(coord_of[act(basis[i], gens[gi], gens_inv_t[gi])]);
    m.actors.push_back(am);
  }
  auto inv = invariant_subspaces(m);
  out.invariant_subspace_count = static_cast<int>(inv.size());

  // the natural part {(v, 0)} should be the proper nontrivial submodule
  std::vector<gf2::word_t> nat_coords;
  for (extmod::Elem v = 1; v < 8; ++v)
    nat_coords.push_back(static_cast<gf2::word_t>(coord_of[v]));
  gf2::Subspace nat = gf2::Subspace::span(nat_coords, 6);
  out.natural_part_is_the_proper_submodule = false;
  for (const auto &s : inv)
    if (s.dim() > 0 && s.dim() < 6 && s == nat)
      out.natural_part_is_the_proper_submodule = true;

  // contrast: the split sum V ⊕ V* has four invariant subspaces
  GroupModule split;
  split.dim = 6;
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    gf2::Matrix am(6, 6);
    for (int i = 0; i < 3; ++i)
      am.row_ref(i) = gens[gi].apply_row(gf2::word_t(1) << i);
    for (int i = 0; i < 3; ++i)
      am.row_ref(3 + i) = gens_inv_t[gi].apply_row(gf2::word_t(1) << i) << 3;
    split.actors.push_back(am);
  }
  out.split_comparison_count = static_cast<int>(invariant_subspaces(split).size());

  // witness lines: with v = e1 fixed and U = <e2, e3>, the stabilizer
  // S3-frame permutes the three 2-spaces <v, u_i>; the twisted diagonals
  // {(v, f_i)} and {(u_i + v, f_i)} are S3-invariant and nonsingular
  gf2::word_t v = 1;
  gf2::word_t us[3] = {2, 4, 6};
  gf2::word_t fs[3];
  for (int i = 0; i < 3; ++i) {
    fs[i] = 0;
    for (gf2::word_t fm = 1; fm < 8; ++fm)
      if (gf2::parity(fm & v) == 0 && gf2::parity(fm & us[i]) == 0)
        fs[i] = fm;
  }
  auto pack = [](gf2::word_t vv, gf2::word_t ff) {
    return static_cast<extmod::Elem>(vv | (ff << 3));
  };
  std::vector<extmod::Elem> u2{0, pack(v, fs[0]), pack(v, fs[1]), pack(v, fs[2])};
  std::vector<extmod::Elem> u3{0, pack(v ^ us[0], fs[0]), pack(v ^ us[1], fs[1]),
                               pack(v ^ us[2], fs[2])};
  auto is_subgroup = [&](const std::vector<extmod::Elem> &set) {
    for (auto x : set)
      for (auto y : set)
        if (std::find(set.begin(), set.end(), add(x, y)) == set.end())
          return false;
    return true;
  };
  gf2::Matrix swap23(3, 3), rot(3, 3);
  swap23.row_ref(0) = 1;
  swap23.row_ref(1) = 4;
  swap23.row_ref(2) = 2;
  rot.row_ref(0) = 1;
  rot.row_ref(1) = 4; // e2 -> e3
  rot.row_ref(2) = 6; // e3 -> e2 + e3
  std::vector<gf2::Matrix> s3{swap23, rot};
  auto invariant_set = [&](const std::vector<extmod::Elem> &set) {
    for (const auto &g : s3) {
      gf2::Matrix git = g.inverse().transpose();
      for (auto x : set)
        if (std::find(set.begin(), set.end(), act(x, g, git)) == set.end())
          return false;
    }
    return true;
  };
  out.witness_lines_invariant =
      is_subgroup(u2) && is_subgroup(u3) && invariant_set(u2) && invariant_set(u3);
  out.quad_on_fixed_line_diagonal = quad(pack(v, fs[0]));
  out.quad_on_shifted_diagonal = quad(pack(v ^ us[0], fs[0]));
  return out;
}

ComplementClassification classify_complements(const ComplementInputs &in) {
  const perm::PermGroup &g = in.ambient;
  if (g.order() > (1u << 16))
    fail("complement classification requires |G| <= 2^16");
  if (in.core_elements.size() > 128)
    fail("core exceeds 2^7");
  if (in.quotient_presentation.gens.size() != 2)
    fail("quotient presentation must have two generators");
  const perm::Perm &z = in.centre;
  std::uint32_t deg = g.degree();
  perm::Perm id(deg);

  auto eval_word = [&](const fp::Word &w, const perm::Perm &x, const perm::Perm &y) {
    perm::Perm out(deg);
    for (std::int32_t l : w.letters) {
      const perm::Perm &base = (std::abs(l) == 1) ? x : y;
      out = out * (l > 0 ? base : base.inverse());
    }
    return out;
  };

  // locate the quotient generating pair inside the frame, first found in
  // breadth-first element order
  perm::PermGroup frame(deg, in.frame_gens);
  auto frame_elems = frame.elements(1u << 16);
  std::uint64_t frame_order = frame_elems.size();
  perm::Perm xhat, yhat;
  bool found = false;
  for (std::size_t i = 0; i < frame_elems.size() && !found; ++i)
    for (std::size_t j = 0; j < frame_elems.size() && !found; ++j) {
      const perm::Perm &u = frame_elems[i], &v = frame_elems[j];
      bool ok = true;
      for (const auto &r : in.quotient_presentation.relators)
        if (!eval_word(r, u, v).is_identity()) {
          ok = false;
          break;
        }
      if (!ok)
        continue;
      perm::PermGroup sub(deg, {u, v});
      if (sub.order() == frame_order) {
        xhat = u;
        yhat = v;
        found = true;
      }
    }
  if (!found)
    fail("no generating pair satisfies the quotient presentation inside the frame");

  // sweep all pairs from the core
  std::unordered_map<std::string, bool> core_keys;
  for (const auto &q : in.core_elements)
    core_keys.emplace(q.key(), true);
  auto in_centre_line = [&](const perm::Perm &p) { return p.is_identity() || p == z; };

  std::unordered_map<std::string, std::size_t> subgroup_index;
  std::vector<std::vector<perm::Perm>> subgroups;
  std::vector<std::pair<perm::Perm, perm::Perm>> pairs;
  auto subgroup_key = [](const std::vector<perm::Perm> &elems) {
    std::vector<std::string> keys;
    for (const auto &e : elems)
      keys.push_back(e.key());
    std::sort(keys.begin(), keys.end());
    std::string out;
    for (auto &k : keys)
      out += k;
    return out;
  };

  std::uint64_t expected_preimage = 2 * frame_order;
  for (const auto &u : in.core_elements)
    for (const auto &v : in.core_elements) {
      perm::Perm x = u * xhat;
      perm::Perm y = v * yhat;
      bool ok = true;
      for (const auto &r : in.quotient_presentation.relators)
        if (!in_centre_line(eval_word(r, x, y))) {
          ok = false;
          break;
        }
      if (!ok)
        continue;
      perm::PermGroup s(deg, {x, y, z});
      auto elems = s.elements(expected_preimage * 2);
      if (elems.size() != expected_preimage)
        fail("complement preimage has an unexpected order");
      std::size_t in_core = 0;
      for (const auto &e : elems)
        if (core_keys.count(e.key()))
          ++in_core;
      if (in_core != 2)
        fail("candidate preimage meets the core beyond the centre line");
      std::string key = subgroup_key(elems);
      if (!subgroup_index.count(key)) {
        subgroup_index.emplace(key, subgroups.size());
        subgroups.push_back(std::move(elems));
        pairs.emplace_back(x, y);
      }
    }

  perm::SubgroupClasses classes = perm::subgroup_conjugacy_classes(g, subgroups);

  ComplementClassification out;
  out.distinct_subgroups = subgroups.size();
  out.sweep_closed_under_conjugation = classes.inputs_closed_under_conjugation;

  Section first = make_section(
      perm::PermGroup(deg, in.first_module_gens).elements(64), {id});
  Section second = make_section(
      perm::PermGroup(deg, in.second_module_gens).elements(64), {id});

  auto semisimple_flag = [&](const Section &sec, const perm::Perm &x, const perm::Perm &y) {
    GroupModule m = conjugation_module(sec, {x, y});
    gf2::word_t zc = sec.coords(z);
    for (const auto &s : invariant_subspaces(m))
      if (s.dim() == sec.dim - 1 && !s.contains(zc))
        return true;
    return false;
  };

  for (const auto &cls : classes.classes) {
    ComplementClass info;
    info.size = cls.size();
    std::size_t rep_idx = cls.front().input_index;
    const auto &[x, y] = pairs[rep_idx];
    info.rep_pair = {x, y};
    perm::PermGroup pre(deg, {x, y, z});
    pre.set_known_order(expected_preimage);
    info.preimage = pre.fingerprint();
    info.first_module_semisimple = semisimple_flag(first, x, y);
    info.second_module_semisimple = semisimple_flag(second, x, y);
    out.classes.push_back(std::move(info));
  }
  return out;
}

} // namespace amal::mod
