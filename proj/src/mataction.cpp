#include "amal/mataction.hpp"

#include <algorithm>
#include <stdexcept>

namespace amal::mat {

namespace {
[[noreturn]] void fail(const std::string &msg) { throw std::runtime_error("mataction: " + msg); }
} // namespace

std::size_t GeneratorTable::index_of(const std::string &name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name)
      return i;
  fail("unknown generator " + name);
}

const gf2::Matrix &GeneratorTable::matrix_of(const std::string &name) const {
  return matrices[index_of(name)];
}

GeneratorTable build_generators(int n) {
  if (n < 3 || n > 8)
    fail("generator table requires 3 <= n <= 8");
  GeneratorTable t;
  t.n = n;
  int d = n + 1;
  auto add = [&](int row, int col) {
    t.names.push_back("a" + std::to_string(t.names.size() + 1));
    t.positions.emplace_back(row, col);
    gf2::Matrix m = gf2::Matrix::identity(d);
    m.set(row - 1, col - 1, true);
    t.matrices.push_back(std::move(m));
  };
  // subdiagonal block, row-major
  for (int row = 2; row <= d; ++row)
    for (int col = 1; col < row; ++col)
      add(row, col);
  // superdiagonal tail
  for (int i = 2; i <= n; ++i)
    add(i, i + 1);

  std::size_t total = t.names.size();
  std::size_t supers = static_cast<std::size_t>(n - 1);
  std::size_t lower = total - supers;
  for (std::size_t i = 0; i < total; ++i) {
    bool is_super = i >= lower;
    // superdiagonal generator (i, i+1) has block index k = i - 1 in 1..n-1
    std::size_t k = is_super ? (i - lower + 1) : 0;
    bool in_line_stab = !is_super || k <= static_cast<std::size_t>(n - 2);
    bool in_plane_stab = !is_super || k <= static_cast<std::size_t>(n - 3) ||
                         k == static_cast<std::size_t>(n - 1);
    if (in_line_stab)
      t.line_stab_gens.push_back(i);
    if (in_plane_stab)
      t.plane_stab_gens.push_back(i);
    if (in_line_stab && in_plane_stab)
      t.shared_gens.push_back(i);
  }
  return t;
}

perm::Perm to_permutation(const gf2::Matrix &m) {
  if (m.rows() != m.cols())
    fail("matrix is not square");
  if (!m.is_invertible())
    fail("matrix is singular");
  int d = m.rows();
  std::uint64_t npts = (std::uint64_t(1) << d) - 1;
  std::vector<std::uint32_t> img(npts);
  for (std::uint64_t v = 1; v <= npts; ++v)
    img[v - 1] = static_cast<std::uint32_t>(m.apply_row(v) - 1);
  return perm::Perm::from_images(std::move(img));
}

WordTable::WordTable(const GeneratorTable &table, const std::vector<std::size_t> &gen_ids,
                     std::size_t expected_size)
    : table_(&table) {
  gf2::Matrix id = gf2::Matrix::identity(table.n + 1);
  order_.push_back(id);
  parent_.emplace(id.key(), std::make_pair(-1, -1));
  for (std::size_t i = 0; i < order_.size(); ++i) {
    for (std::size_t gi : gen_ids) {
      gf2::Matrix next = order_[i] * table.matrices[gi];
      std::string k = next.key();
      if (!parent_.count(k)) {
        parent_.emplace(std::move(k),
                        std::make_pair(static_cast<std::int32_t>(i), static_cast<std::int32_t>(gi)));
        order_.push_back(std::move(next));
        if (expected_size && order_.size() > expected_size)
          fail("word table exceeded the expected group order");
      }
    }
  }
  if (expected_size && order_.size() != expected_size)
    fail("word table closed at an unexpected group order");
}

bool WordTable::contains(const gf2::Matrix &m) const { return parent_.count(m.key()) != 0; }

std::vector<std::size_t> WordTable::factor(const gf2::Matrix &m) const {
  auto it = parent_.find(m.key());
  if (it == parent_.end())
    fail("element is not in the tabulated group");
  std::vector<std::size_t> word;
  std::pair<std::int32_t, std::int32_t> cur = it->second;
  while (cur.first >= 0) {
    word.push_back(static_cast<std::size_t>(cur.second));
    cur = parent_.at(order_[cur.first].key());
  }
  std::reverse(word.begin(), word.end());
  return word;
}

gf2::Matrix WordTable::evaluate(const std::vector<std::size_t> &word) const {
  gf2::Matrix m = gf2::Matrix::identity(table_->n + 1);
  for (std::size_t gi : word)
    m = m * table_->matrices[gi];
  return m;
}

} // namespace amal::mat
