#include "amal/gf2.hpp"

#include <algorithm>
#include <stdexcept>

namespace amal::gf2 {

void fail(const std::string &msg) { throw std::runtime_error("gf2: " + msg); }

Matrix::Matrix(int rows, int cols) : rows_(rows, 0), cols_(cols) {
  if (cols < 0 || cols > 64)
    fail("column count out of range (1..64)");
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    m.rows_[i] = word_t(1) << i;
  return m;
}

Matrix Matrix::from_rows(std::vector<word_t> rows, int cols) {
  Matrix m;
  m.rows_ = std::move(rows);
  m.cols_ = cols;
  if (cols < 0 || cols > 64)
    fail("column count out of range (1..64)");
  if (cols < 64)
    for (word_t r : m.rows_)
      if (r >> cols)
        fail("row has bits beyond the column count");
  return m;
}

void Matrix::set(int r, int c, bool v) {
  if (v)
    rows_[r] |= word_t(1) << c;
  else
    rows_[r] &= ~(word_t(1) << c);
}

word_t Matrix::apply_row(word_t v) const {
  word_t out = 0;
  word_t rest = v;
  while (rest) {
    int i = __builtin_ctzll(rest);
    rest &= rest - 1;
    out ^= rows_[i];
  }
  return out;
}

Matrix Matrix::operator*(const Matrix &rhs) const {
  if (cols_ != rhs.rows())
    fail("dimension mismatch in matrix product");
  Matrix out(rows(), rhs.cols());
  for (int i = 0; i < rows(); ++i)
    out.rows_[i] = rhs.apply_row(rows_[i]);
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows());
  for (int i = 0; i < rows(); ++i) {
    word_t r = rows_[i];
    while (r) {
      int j = __builtin_ctzll(r);
      r &= r - 1;
      out.rows_[j] |= word_t(1) << i;
    }
  }
  return out;
}

bool Matrix::is_identity() const {
  if (rows() != cols_)
    return false;
  for (int i = 0; i < rows(); ++i)
    if (rows_[i] != word_t(1) << i)
      return false;
  return true;
}

Matrix Matrix::inverse() const {
  if (rows() != cols_)
    fail("inverse of a non-square matrix");
  int n = rows();
  std::vector<word_t> a(rows_);
  std::vector<word_t> u(n);
  for (int i = 0; i < n; ++i)
    u[i] = word_t(1) << i;
  int row = 0;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = row; r < n; ++r)
      if ((a[r] >> col) & 1u) {
        piv = r;
        break;
      }
    if (piv < 0)
      fail("matrix is singular");
    std::swap(a[piv], a[row]);
    std::swap(u[piv], u[row]);
    for (int r = 0; r < n; ++r)
      if (r != row && ((a[r] >> col) & 1u)) {
        a[r] ^= a[row];
        u[r] ^= u[row];
      }
    ++row;
  }
  return Matrix::from_rows(std::move(u), n);
}

bool Matrix::is_invertible() const {
  if (rows() != cols_)
    return false;
  return rref(*this).second == cols_;
}

std::string Matrix::key() const {
  std::string k;
  k.reserve(rows_.size() * 8 + 2);
  k.push_back(static_cast<char>(cols_));
  for (word_t r : rows_)
    for (int b = 0; b < 8; ++b)
      k.push_back(static_cast<char>((r >> (8 * b)) & 0xff));
  return k;
}

std::pair<Matrix, int> rref(const Matrix &m) {
  std::vector<word_t> rows(m.row_data());
  int n = static_cast<int>(rows.size());
  int row = 0;
  for (int col = 0; col < m.cols() && row < n; ++col) {
    int piv = -1;
    for (int r = row; r < n; ++r)
      if ((rows[r] >> col) & 1u) {
        piv = r;
        break;
      }
    if (piv < 0)
      continue;
    std::swap(rows[piv], rows[row]);
    for (int r = 0; r < n; ++r)
      if (r != row && ((rows[r] >> col) & 1u))
        rows[r] ^= rows[row];
    ++row;
  }
  rows.resize(row);
  return {Matrix::from_rows(std::move(rows), m.cols()), row};
}

Subspace::Subspace(int ambient_dim) : basis_(0, ambient_dim), ambient_(ambient_dim) {
  if (ambient_dim < 1 || ambient_dim > 64)
    fail("ambient dimension out of range (1..64)");
}

Subspace Subspace::span(const std::vector<word_t> &vectors, int ambient_dim) {
  return span(Matrix::from_rows(vectors, ambient_dim));
}

Subspace Subspace::span(const Matrix &rows) {
  Subspace s(rows.cols());
  s.basis_ = rref(rows).first;
  return s;
}

word_t Subspace::reduce(word_t v) const {
  for (int i = 0; i < basis_.rows(); ++i) {
    word_t b = basis_.row(i);
    word_t pivot = b & ~(b - 1); // lowest set bit
    if (v & pivot)
      v ^= b;
  }
  return v;
}

bool Subspace::contains(const Subspace &other) const {
  if (other.ambient_ != ambient_)
    fail("ambient-dimension mismatch");
  for (int i = 0; i < other.dim(); ++i)
    if (!contains(other.basis_row(i)))
      return false;
  return true;
}

std::vector<word_t> Subspace::elements() const {
  if (dim() > 24)
    fail("subspace too large to enumerate");
  std::vector<word_t> out;
  out.reserve(std::size_t(1) << dim());
  out.push_back(0);
  for (int i = 0; i < dim(); ++i) {
    std::size_t n = out.size();
    for (std::size_t j = 0; j < n; ++j)
      out.push_back(out[j] ^ basis_.row(i));
  }
  return out;
}

std::string Subspace::key() const {
  std::string k = basis_.key();
  k.push_back(static_cast<char>(ambient_));
  return k;
}

Subspace Subspace::sum(const Subspace &a, const Subspace &b) {
  if (a.ambient_ != b.ambient_)
    fail("ambient-dimension mismatch");
  std::vector<word_t> rows;
  rows.reserve(a.dim() + b.dim());
  for (int i = 0; i < a.dim(); ++i)
    rows.push_back(a.basis_row(i));
  for (int i = 0; i < b.dim(); ++i)
    rows.push_back(b.basis_row(i));
  return span(rows, a.ambient_);
}

// Zassenhaus: eliminate [a|a; b|0]; rows with zero left half carry an
// intersection basis in the right half.
Subspace Subspace::intersection(const Subspace &a, const Subspace &b) {
  if (a.ambient_ != b.ambient_)
    fail("ambient-dimension mismatch");
  struct Pair {
    word_t left, right;
  };
  std::vector<Pair> rows;
  for (int i = 0; i < a.dim(); ++i)
    rows.push_back({a.basis_row(i), a.basis_row(i)});
  for (int i = 0; i < b.dim(); ++i)
    rows.push_back({b.basis_row(i), 0});
  int n = static_cast<int>(rows.size());
  int row = 0;
  for (int col = 0; col < a.ambient_ && row < n; ++col) {
    int piv = -1;
    for (int r = row; r < n; ++r)
      if ((rows[r].left >> col) & 1u) {
        piv = r;
        break;
      }
    if (piv < 0)
      continue;
    std::swap(rows[piv], rows[row]);
    for (int r = 0; r < n; ++r)
      if (r != row && ((rows[r].left >> col) & 1u)) {
        rows[r].left ^= rows[row].left;
        rows[r].right ^= rows[row].right;
      }
    ++row;
  }
  std::vector<word_t> inter;
  for (int r = row; r < n; ++r)
    if (rows[r].left == 0 && rows[r].right != 0)
      inter.push_back(rows[r].right);
  return span(inter, a.ambient_);
}

std::vector<Subspace> all_subspaces(int d) {
  if (d < 1 || d > 7)
    fail("all_subspaces requires 1 <= d <= 7");
  std::vector<Subspace> out;
  out.emplace_back(d); // zero subspace
  for (int k = 1; k <= d; ++k) {
    // choose pivot columns p_0 < ... < p_{k-1}, then fill free entries:
    // row i may have arbitrary bits at non-pivot columns right of p_i.
    std::vector<int> piv(k);
    for (int i = 0; i < k; ++i)
      piv[i] = i;
    while (true) {
      std::vector<int> free_pos; // (row, col) pairs, flattened
      for (int i = 0; i < k; ++i)
        for (int c = piv[i] + 1; c < d; ++c) {
          bool is_piv = false;
          for (int j = 0; j < k; ++j)
            if (piv[j] == c)
              is_piv = true;
          if (!is_piv) {
            free_pos.push_back(i);
            free_pos.push_back(c);
          }
        }
      int nfree = static_cast<int>(free_pos.size() / 2);
      for (word_t fill = 0; fill < (word_t(1) << nfree); ++fill) {
        std::vector<word_t> rows(k, 0);
        for (int i = 0; i < k; ++i)
          rows[i] = word_t(1) << piv[i];
        for (int f = 0; f < nfree; ++f)
          if ((fill >> f) & 1u)
            rows[free_pos[2 * f]] |= word_t(1) << free_pos[2 * f + 1];
        Subspace s(d);
        out.push_back(Subspace::span(rows, d));
      }
      // next pivot combination
      int i = k - 1;
      while (i >= 0 && piv[i] == d - k + i)
        --i;
      if (i < 0)
        break;
      ++piv[i];
      for (int j = i + 1; j < k; ++j)
        piv[j] = piv[j - 1] + 1;
    }
  }
  return out;
}

QuotientMap quotient_map(const Subspace &kernel) {
  QuotientMap qm{kernel, {}};
  word_t pivots = 0;
  for (int i = 0; i < kernel.dim(); ++i) {
    word_t b = kernel.basis_row(i);
    pivots |= b & ~(b - 1);
  }
  for (int c = 0; c < kernel.ambient_dim(); ++c)
    if (!((pivots >> c) & 1u))
      qm.coord_bits.push_back(c);
  return qm;
}

word_t QuotientMap::project(word_t v) const {
  word_t residue = kernel.reduce(v);
  word_t out = 0;
  for (std::size_t i = 0; i < coord_bits.size(); ++i)
    if ((residue >> coord_bits[i]) & 1u)
      out |= word_t(1) << i;
  return out;
}

Subspace QuotientMap::lift(const Subspace &sub_in_quotient) const {
  if (sub_in_quotient.ambient_dim() != quotient_dim())
    fail("quotient subspace has the wrong ambient dimension");
  std::vector<word_t> rows;
  for (int i = 0; i < kernel.dim(); ++i)
    rows.push_back(kernel.basis_row(i));
  for (int i = 0; i < sub_in_quotient.dim(); ++i) {
    word_t q = sub_in_quotient.basis_row(i);
    word_t v = 0;
    for (std::size_t b = 0; b < coord_bits.size(); ++b)
      if ((q >> b) & 1u)
        v |= word_t(1) << coord_bits[b];
    rows.push_back(v);
  }
  return Subspace::span(rows, kernel.ambient_dim());
}

int QuadraticForm::value(word_t v) const {
  int q = parity(diag & v);
  word_t rest = v;
  while (rest) {
    int i = __builtin_ctzll(rest);
    rest &= rest - 1;
    q ^= parity(gram.row(i) & rest); // pairs i < j only
  }
  return q;
}

int QuadraticForm::polar(word_t u, word_t v) const {
  int b = 0;
  word_t rest = u;
  while (rest) {
    int i = __builtin_ctzll(rest);
    rest &= rest - 1;
    b ^= parity(gram.row(i) & v);
  }
  return b;
}

int QuadraticForm::singular_nonzero_count() const {
  if (dim > 24)
    fail("form dimension too large for exhaustive count");
  int count = 0;
  for (word_t v = 1; v < (word_t(1) << dim); ++v)
    if (value(v) == 0)
      ++count;
  return count;
}

bool is_totally_singular(const Subspace &s, const QuadraticForm &q) {
  if (s.ambient_dim() != q.dim)
    fail("form/subspace dimension mismatch");
  // q vanishes on a span iff it vanishes on the basis and the polar form
  // vanishes on basis pairs (char 2: q(u+v) = q(u) + q(v) + B(u,v)).
  for (int i = 0; i < s.dim(); ++i) {
    if (q.value(s.basis_row(i)) != 0)
      return false;
    for (int j = i + 1; j < s.dim(); ++j)
      if (q.polar(s.basis_row(i), s.basis_row(j)) != 0)
        return false;
  }
  return true;
}

} // namespace amal::gf2
