#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

// Exact linear algebra over GF(2) for dimensions up to 64.
// Rows are bit-packed, one machine word per row, so every kernel is a
// handful of word operations.

namespace amal::gf2 {

using word_t = std::uint64_t;

[[noreturn]] void fail(const std::string &msg);

inline int parity(word_t w) { return __builtin_parityll(w); }
inline int popcount(word_t w) { return __builtin_popcountll(w); }

class Matrix {
public:
  Matrix() = default;
  Matrix(int rows, int cols);
  static Matrix identity(int n);
  static Matrix from_rows(std::vector<word_t> rows, int cols);

  int rows() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }
  bool get(int r, int c) const { return (rows_[r] >> c) & 1u; }
  void set(int r, int c, bool v);
  word_t row(int r) const { return rows_[r]; }
  word_t &row_ref(int r) { return rows_[r]; }
  const std::vector<word_t> &row_data() const { return rows_; }

  // v * M for a row vector v of dimension rows().
  word_t apply_row(word_t v) const;

  Matrix operator*(const Matrix &rhs) const;
  bool operator==(const Matrix &rhs) const = default;

  Matrix transpose() const;
  Matrix inverse() const; // fails on a singular matrix
  bool is_identity() const;
  bool is_invertible() const;

  std::string key() const; // compact bytes, usable as a hash-map key

private:
  std::vector<word_t> rows_;
  int cols_ = 0;
};

// Reduced row echelon form and rank; row space is preserved.
std::pair<Matrix, int> rref(const Matrix &m);

// A subspace of F_2^ambient in canonical form: the basis is the reduced
// row echelon form with pivot-ascending rows, so equal subspaces compare
// equal bitwise.
class Subspace {
public:
  explicit Subspace(int ambient_dim); // zero subspace
  static Subspace span(const std::vector<word_t> &vectors, int ambient_dim);
  static Subspace span(const Matrix &rows);

  int dim() const { return basis_.rows(); }
  int ambient_dim() const { return ambient_; }
  const Matrix &basis() const { return basis_; }
  word_t basis_row(int i) const { return basis_.row(i); }

  word_t reduce(word_t v) const; // residue after reduction by the basis
  bool contains(word_t v) const { return reduce(v) == 0; }
  bool contains(const Subspace &other) const;

  std::vector<word_t> elements() const; // all 2^dim vectors (dim <= 24)

  bool operator==(const Subspace &rhs) const = default;
  std::string key() const;

  static Subspace sum(const Subspace &a, const Subspace &b);
  static Subspace intersection(const Subspace &a, const Subspace &b);

private:
  Matrix basis_; // rref, full row rank
  int ambient_ = 0;
};

// Every subspace of F_2^d exactly once, canonical form, d <= 7.
std::vector<Subspace> all_subspaces(int d);

// Coordinates for the quotient of the ambient space by a subspace: the
// quotient is identified with the non-pivot coordinates of the kernel's
// canonical basis. lift returns the full preimage of a quotient subspace.
struct QuotientMap {
  Subspace kernel;
  std::vector<int> coord_bits; // ambient bit positions carrying the quotient

  int quotient_dim() const { return static_cast<int>(coord_bits.size()); }
  word_t project(word_t v) const;
  Subspace lift(const Subspace &sub_in_quotient) const;
};

QuotientMap quotient_map(const Subspace &kernel);

// A quadratic form on F_2^dim stored as its polar bilinear form (Gram
// matrix, necessarily alternating) plus the diagonal values q(e_i).
struct QuadraticForm {
  int dim = 0;
  Matrix gram;  // symmetric with zero diagonal
  word_t diag = 0;

  int value(word_t v) const;
  int polar(word_t u, word_t v) const;
  // Number of nonzero singular vectors; 2^(dim-1) + 2^(dim/2 - 1) - 1
  // for a plus-type form in even dimension.
  int singular_nonzero_count() const;
};

bool is_totally_singular(const Subspace &s, const QuadraticForm &q);

} // namespace amal::gf2
