#include "amal/coset_enum.hpp"

#include <cstdio>
#include <deque>
#include <stdexcept>

namespace amal::fp {

namespace {

constexpr std::uint32_t kUndef = 0xffffffffu;

// The enumerator proper. Coset 0 is the subgroup. The table keeps explicit
// inverse columns; dead rows are left in place (their entries stay valid
// under rep()) and are reclaimed by compaction, which keeps the
// coincidence routine free of back-reference bookkeeping.
struct Enumerator {
  std::uint32_t ngens;
  std::uint32_t ncols;
  std::uint64_t max_cosets;
  bool felsch;

  std::vector<std::vector<std::uint32_t>> relator_cols;          // scanning order
  std::vector<std::vector<std::vector<std::uint32_t>>> edp;      // per col: rotations starting with it
  std::vector<std::vector<std::uint32_t>> subgroup_cols;

  std::vector<std::uint32_t> tab; // row-major, ncols per coset
  std::vector<std::uint32_t> up;  // union-find parent
  std::uint64_t alive = 0;
  std::uint64_t total_defined = 0;
  std::uint64_t lookaheads = 0;
  std::deque<std::uint32_t> coincidence_queue;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> deductions; // (coset, col)

  struct NeedSpace {};

  static std::uint32_t inv_col(std::uint32_t c) { return c ^ 1u; }

  std::uint32_t rep(std::uint32_t k) {
    while (up[k] != k) {
      up[k] = up[up[k]];
      k = up[k];
    }
    return k;
  }
  bool live(std::uint32_t k) const { return up[k] == k; }

  std::uint32_t entry(std::uint32_t coset, std::uint32_t col) {
    std::uint32_t v = tab[std::size_t(coset) * ncols + col];
    if (v == kUndef)
      return kUndef;
    v = rep(v);
    tab[std::size_t(coset) * ncols + col] = v;
    return v;
  }
  void set_entry(std::uint32_t coset, std::uint32_t col, std::uint32_t v) {
    tab[std::size_t(coset) * ncols + col] = v;
  }

  std::uint32_t cosets_allocated() const { return static_cast<std::uint32_t>(up.size()); }

  std::uint32_t new_coset() {
    if (up.size() >= max_cosets)
      throw NeedSpace{};
    std::uint32_t c = static_cast<std::uint32_t>(up.size());
    up.push_back(c);
    tab.resize(tab.size() + ncols, kUndef);
    ++alive;
    ++total_defined;
    return c;
  }

  void define(std::uint32_t a, std::uint32_t col) {
    std::uint32_t b = new_coset();
    set_entry(a, col, b);
    set_entry(b, inv_col(col), a);
    if (felsch)
      deductions.emplace_back(a, col);
  }

  void merge(std::uint32_t a, std::uint32_t b) {
    a = rep(a);
    b = rep(b);
    if (a == b)
      return;
    if (a > b)
      std::swap(a, b);
    up[b] = a;
    --alive;
    coincidence_queue.push_back(b);
  }

  // install or reconcile the edge e . col = d (both live reps)
  void process_edge(std::uint32_t e, std::uint32_t d, std::uint32_t col) {
    std::uint32_t f = entry(e, col);
    if (f != kUndef) {
      merge(f, d);
      return;
    }
    std::uint32_t g = entry(d, inv_col(col));
    if (g != kUndef) {
      set_entry(e, col, d);
      merge(g, e);
      return;
    }
    set_entry(e, col, d);
    set_entry(d, inv_col(col), e);
    if (felsch)
      deductions.emplace_back(e, col);
  }

  void coincidence(std::uint32_t a, std::uint32_t b) {
    merge(a, b);
    while (!coincidence_queue.empty()) {
      std::uint32_t dead = coincidence_queue.front();
      coincidence_queue.pop_front();
      for (std::uint32_t c = 0; c < ncols; ++c) {
        std::uint32_t d = tab[std::size_t(dead) * ncols + c];
        if (d == kUndef)
          continue;
        process_edge(rep(dead), rep(d), c);
      }
    }
  }

  // Two-pointer scan of a relator (or subgroup word) from coset a.
  // fill = define new cosets across gaps (HLT); otherwise only complete
  // deductions and coincidences.
  void scan(std::uint32_t a, const std::vector<std::uint32_t> &w, bool fill) {
    if (w.empty())
      return;
    std::int64_t i = 0;
    std::int64_t j = static_cast<std::int64_t>(w.size()) - 1;
    std::uint32_t f = a;
    std::uint32_t b = a;
    while (true) {
      while (i <= j) {
        std::uint32_t nf = entry(f, w[i]);
        if (nf == kUndef)
          break;
        f = nf;
        ++i;
      }
      if (i > j) {
        if (f != b)
          coincidence(f, b);
        return;
      }
      while (j >= i) {
        std::uint32_t nb = entry(b, inv_col(w[j]));
        if (nb == kUndef)
          break;
        b = nb;
        --j;
      }
      if (j < i) {
        // forward and backward scans met: the cosets coincide
        coincidence(f, b);
        return;
      }
      if (j == i) {
        // exactly one gap: a deduction
        process_edge(f, b, w[i]);
        return;
      }
      if (!fill)
        return;
      define(f, w[i]);
    }
  }

  void process_deductions() {
    while (!deductions.empty()) {
      auto [a, c] = deductions.back();
      deductions.pop_back();
      if (!live(a))
        a = rep(a);
      std::uint32_t b = entry(a, c);
      if (b == kUndef)
        continue;
      for (const auto &w : edp[c])
        if (live(a))
          scan(a, w, false);
      for (const auto &w : edp[inv_col(c)])
        if (live(b))
          scan(b, w, false);
    }
  }

  void lookahead_pass() {
    ++lookaheads;
    for (std::uint32_t a = 0; a < cosets_allocated(); ++a) {
      if (!live(a))
        continue;
      for (const auto &w : relator_cols) {
        scan(a, w, false);
        if (!live(a))
          break;
      }
    }
    if (felsch)
      process_deductions();
  }

  // renumber live cosets contiguously, preserving order; returns old->new
  std::vector<std::uint32_t> compact() {
    std::vector<std::uint32_t> remap(up.size(), kUndef);
    std::uint32_t next = 0;
    for (std::uint32_t c = 0; c < cosets_allocated(); ++c)
      if (live(c))
        remap[c] = next++;
    std::vector<std::uint32_t> ntab(std::size_t(next) * ncols, kUndef);
    for (std::uint32_t c = 0; c < cosets_allocated(); ++c) {
      if (!live(c))
        continue;
      for (std::uint32_t col = 0; col < ncols; ++col) {
        std::uint32_t v = tab[std::size_t(c) * ncols + col];
        if (v != kUndef)
          ntab[std::size_t(remap[c]) * ncols + col] = remap[rep(v)];
      }
    }
    tab = std::move(ntab);
    up.resize(next);
    for (std::uint32_t c = 0; c < next; ++c)
      up[c] = c;
    return remap;
  }

  bool has_incomplete_live_row() {
    for (std::uint32_t c = 0; c < cosets_allocated(); ++c) {
      if (!live(c))
        continue;
      for (std::uint32_t col = 0; col < ncols; ++col)
        if (entry(c, col) == kUndef)
          return true;
    }
    return false;
  }

  bool hlt_run() {
    std::uint32_t start = new_coset(); // coset 0
    (void)start;
    for (const auto &w : subgroup_cols)
      scan(0, w, true);
    // Coincidences can merge two incomplete rows into one that still has
    // holes behind the scan front, so sweep until every live row is full.
    while (true) {
      std::uint32_t a = 0;
      while (a < cosets_allocated()) {
        if (!live(a)) {
          ++a;
          continue;
        }
        bool retried = false;
        while (true) {
          try {
            for (const auto &w : relator_cols) {
              scan(a, w, true);
              if (!live(a))
                break;
            }
            if (live(a))
              for (std::uint32_t c = 0; c < ncols; ++c)
                if (entry(a, c) == kUndef)
                  define(a, c);
            break;
          } catch (NeedSpace &) {
            std::uint64_t before = alive;
            lookahead_pass();
            std::vector<std::uint32_t> remap = compact();
            std::uint32_t resume = cosets_allocated();
            for (std::uint32_t x = a; x < remap.size(); ++x)
              if (remap[x] != kUndef) {
                resume = remap[x];
                break;
              }
            a = resume;
            if (alive + ncols >= max_cosets || (retried && alive == before))
              return false;
            retried = true;
            if (a >= cosets_allocated())
              break;
          }
        }
        ++a;
      }
      if (!has_incomplete_live_row())
        return true;
    }
  }

  bool felsch_run() {
    std::uint32_t start = new_coset();
    (void)start;
    for (const auto &w : subgroup_cols) {
      scan(0, w, true);
      process_deductions();
    }
    std::uint32_t a = 0;
    std::uint32_t col = 0;
    while (true) {
      // advance the cursor to the first undefined entry of a live coset
      while (a < cosets_allocated()) {
        if (!live(a) || col >= ncols) {
          ++a;
          col = 0;
          continue;
        }
        if (entry(a, col) == kUndef)
          break;
        ++col;
      }
      if (a >= cosets_allocated()) {
        // merged rows may have left holes behind the cursor
        if (!has_incomplete_live_row())
          return true;
        a = 0;
        col = 0;
        continue;
      }
      try {
        define(a, col);
      } catch (NeedSpace &) {
        std::uint64_t before = alive;
        lookahead_pass();
        compact();
        a = 0;
        col = 0;
        if (alive + 1 >= max_cosets && alive == before)
          return false;
        continue;
      }
      process_deductions();
    }
  }
};

std::vector<std::uint32_t> word_to_cols(const Word &w) {
  std::vector<std::uint32_t> cols;
  cols.reserve(w.letters.size());
  for (std::int32_t l : w.letters) {
    if (l > 0)
      cols.push_back(2u * static_cast<std::uint32_t>(l - 1));
    else
      cols.push_back(2u * static_cast<std::uint32_t>(-l - 1) + 1u);
  }
  return cols;
}

} // namespace

CosetTable::CosetTable(std::uint32_t ngens, std::uint32_t ncosets, std::vector<std::uint32_t> flat,
                       std::uint64_t content_hash)
    : ngens_(ngens), ncosets_(ncosets), tab_(std::move(flat)), hash_(content_hash) {
  if (tab_.size() != std::size_t(ncosets_) * 2 * ngens_)
    fail("coset table has the wrong shape");
}

std::uint32_t CosetTable::act(std::uint32_t coset, std::int32_t letter) const {
  std::uint32_t col = letter > 0 ? 2u * static_cast<std::uint32_t>(letter - 1)
                                 : 2u * static_cast<std::uint32_t>(-letter - 1) + 1u;
  return tab_[std::size_t(coset) * 2 * ngens_ + col];
}

std::uint32_t CosetTable::trace(std::uint32_t coset, const Word &w) const {
  for (std::int32_t l : w.letters)
    coset = act(coset, l);
  return coset;
}

std::vector<perm::Perm> CosetTable::generator_perms() const {
  std::vector<perm::Perm> out;
  for (std::uint32_t g = 0; g < ngens_; ++g) {
    std::vector<std::uint32_t> img(ncosets_);
    for (std::uint32_t c = 0; c < ncosets_; ++c)
      img[c] = tab_[std::size_t(c) * 2 * ngens_ + 2 * g];
    out.push_back(perm::Perm::from_images(std::move(img))); // validates bijectivity
  }
  return out;
}

bool CosetTable::verify(const Presentation &p, const std::vector<Word> &subgroup_words) const {
  if (p.gens.size() != ngens_)
    return false;
  for (std::uint32_t c = 0; c < ncosets_; ++c) {
    for (std::uint32_t col = 0; col < 2 * ngens_; ++col) {
      std::uint32_t v = tab_[std::size_t(c) * 2 * ngens_ + col];
      if (v >= ncosets_)
        return false;
      if (tab_[std::size_t(v) * 2 * ngens_ + (col ^ 1u)] != c)
        return false;
    }
  }
  for (const auto &r : p.relators)
    for (std::uint32_t c = 0; c < ncosets_; ++c)
      if (trace(c, r) != c)
        return false;
  for (const auto &w : subgroup_words)
    if (trace(0, w) != 0)
      return false;
  return true;
}

void CosetTable::write_cache(const std::string &path) const {
  std::FILE *f = std::fopen(path.c_str(), "wb");
  if (!f)
    fail("cannot open cache file for writing: " + path);
  auto put32 = [&](std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    std::fwrite(b, 1, 4, f);
  };
  std::fwrite("CTB1", 1, 4, f);
  put32(ngens_);
  put32(ncosets_);
  for (std::uint32_t v : tab_)
    put32(v);
  put32(static_cast<std::uint32_t>(hash_ & 0xffffffffu));
  put32(static_cast<std::uint32_t>(hash_ >> 32));
  std::fclose(f);
}

std::optional<CosetTable> CosetTable::read_cache(const std::string &path,
                                                 std::uint64_t expected_hash) {
  std::FILE *f = std::fopen(path.c_str(), "rb");
  if (!f)
    return std::nullopt;
  auto get32 = [&](std::uint32_t &v) {
    unsigned char b[4];
    if (std::fread(b, 1, 4, f) != 4)
      return false;
    v = std::uint32_t(b[0]) | (std::uint32_t(b[1]) << 8) | (std::uint32_t(b[2]) << 16) |
        (std::uint32_t(b[3]) << 24);
    return true;
  };
  char magic[4];
  if (std::fread(magic, 1, 4, f) != 4 || std::string(magic, 4) != "CTB1") {
    std::fclose(f);
    return std::nullopt;
  }
  std::uint32_t ngens = 0, ncosets = 0;
  if (!get32(ngens) || !get32(ncosets) || ngens == 0 || ncosets == 0 ||
      std::uint64_t(ncosets) * 2 * ngens > (std::uint64_t(1) << 32)) {
    std::fclose(f);
    return std::nullopt;
  }
  std::vector<std::uint32_t> tab(std::size_t(ncosets) * 2 * ngens);
  for (auto &v : tab)
    if (!get32(v)) {
      std::fclose(f);
      return std::nullopt;
    }
  std::uint32_t lo = 0, hi = 0;
  bool ok = get32(lo) && get32(hi);
  std::fclose(f);
  if (!ok)
    return std::nullopt;
  std::uint64_t hash = std::uint64_t(lo) | (std::uint64_t(hi) << 32);
  if (hash != expected_hash)
    return std::nullopt;
  return CosetTable(ngens, ncosets, std::move(tab), hash);
}

EnumResult todd_coxeter(const Presentation &p, const std::vector<Word> &subgroup_words,
                        const EnumOptions &opts) {
  if (p.gens.empty())
    fail("presentation has no generators");
  if (opts.max_cosets < 1)
    fail("max_cosets must be at least 1");
  Enumerator e;
  e.ngens = static_cast<std::uint32_t>(p.gens.size());
  e.ncols = 2 * e.ngens;
  e.max_cosets = opts.max_cosets;
  e.felsch = opts.strategy == Strategy::felsch;

  for (const auto &r : p.relators) {
    Word w = r;
    w.free_reduce();
    // cyclic reduction
    while (w.letters.size() >= 2 && w.letters.front() == -w.letters.back()) {
      w.letters.erase(w.letters.begin());
      w.letters.pop_back();
    }
    if (!w.empty())
      e.relator_cols.push_back(word_to_cols(w));
  }
  for (const auto &w : subgroup_words) {
    Word r = w;
    r.free_reduce();
    if (!r.empty())
      e.subgroup_cols.push_back(word_to_cols(r));
  }
  e.edp.resize(e.ncols);
  for (const auto &w : e.relator_cols)
    for (std::size_t k = 0; k < w.size(); ++k) {
      std::vector<std::uint32_t> rot(w.begin() + k, w.end());
      rot.insert(rot.end(), w.begin(), w.begin() + k);
      e.edp[rot[0]].push_back(std::move(rot));
    }

  bool closed = false;
  try {
    closed = e.felsch ? e.felsch_run() : e.hlt_run();
  } catch (Enumerator::NeedSpace &) {
    // ran out of room before the main loops could react (tiny limits)
    closed = false;
  }
  EnumResult out;
  out.stats.total_defined = e.total_defined;
  out.stats.live = e.alive;
  out.stats.lookaheads = e.lookaheads;
  out.stats.closed = closed;
  if (!closed)
    return out;

  e.compact();
  std::uint32_t n = static_cast<std::uint32_t>(e.alive);
  // standardize: renumber by first appearance, row-major, columns in
  // stored order g0, g0^-1, g1, ...
  std::vector<std::uint32_t> to_new(n, kUndef), to_old(n, kUndef);
  to_new[0] = 0;
  to_old[0] = 0;
  std::uint32_t next = 1;
  for (std::uint32_t nr = 0; nr < n; ++nr) {
    if (to_old[nr] == kUndef)
      fail("standardization found an unreachable coset");
    std::uint32_t old = to_old[nr];
    for (std::uint32_t c = 0; c < e.ncols; ++c) {
      std::uint32_t v = e.tab[std::size_t(old) * e.ncols + c];
      if (v == kUndef)
        fail("closed table has an undefined entry");
      if (to_new[v] == kUndef) {
        to_new[v] = next;
        to_old[next] = v;
        ++next;
      }
    }
  }
  std::vector<std::uint32_t> flat(std::size_t(n) * e.ncols);
  for (std::uint32_t nr = 0; nr < n; ++nr)
    for (std::uint32_t c = 0; c < e.ncols; ++c)
      flat[std::size_t(nr) * e.ncols + c] = to_new[e.tab[std::size_t(to_old[nr]) * e.ncols + c]];

  std::uint64_t hash = hash_words(p.content_hash(), p, subgroup_words);
  CosetTable table(e.ngens, n, std::move(flat), hash);
  if (!table.verify(p, subgroup_words))
    fail("internal error: closed table failed verification");
  out.table = std::move(table);
  return out;
}

} // namespace amal::fp
