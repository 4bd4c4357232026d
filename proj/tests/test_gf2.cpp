#include <doctest.h>

#include <random>
#include <set>

#include "amal/gf2.hpp"

using namespace amal;

namespace {

// independent oracle: the number of k-dimensional subspaces of F_2^d,
// computed as the Gaussian binomial by direct products
std::uint64_t gaussian_binomial(int d, int k) {
  std::uint64_t num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= (std::uint64_t(1) << (d - i)) - 1;
    den *= (std::uint64_t(1) << (k - i)) - 1;
  }
  return num / den;
}

std::uint64_t gaussian_total(int d) {
  std::uint64_t total = 0;
  for (int k = 0; k <= d; ++k)
    total += gaussian_binomial(d, k);
  return total;
}

// oracle: rank via exhaustive span enumeration
int rank_by_span(const std::vector<gf2::word_t> &rows) {
  std::set<gf2::word_t> span{0};
  for (gf2::word_t r : rows) {
    std::set<gf2::word_t> next = span;
    for (gf2::word_t v : span)
      next.insert(v ^ r);
    span = next;
  }
  int rank = 0;
  while ((std::size_t(1) << rank) < span.size())
    ++rank;
  return rank;
}

gf2::Matrix random_invertible(int d, std::mt19937 &rng) {
  // random row operations applied to the identity stay invertible
  gf2::Matrix m = gf2::Matrix::identity(d);
  for (int step = 0; step < 40; ++step) {
    int i = static_cast<int>(rng() % d);
    int j = static_cast<int>(rng() % d);
    if (i != j)
      m.row_ref(i) ^= m.row(j);
  }
  return m;
}

} // namespace

TEST_SUITE("gf2") {

TEST_CASE("rref of the identity") {
  auto [r, rank] = gf2::rref(gf2::Matrix::identity(3));
  CHECK(r == gf2::Matrix::identity(3));
  CHECK(rank == 3);
}

TEST_CASE("rref of a zero matrix") {
  auto [r, rank] = gf2::rref(gf2::Matrix(2, 4));
  CHECK(rank == 0);
}

TEST_CASE("rank agrees with exhaustive span enumeration") {
  // third row is the sum of the first two
  std::vector<gf2::word_t> rows{0b0011, 0b0110, 0b0101};
  auto [r, rank] = gf2::rref(gf2::Matrix::from_rows(rows, 4));
  CHECK(rank == 2);
  CHECK(rank == rank_by_span(rows));
}

TEST_CASE("rref of random invertible matrices is the identity") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 50; ++trial) {
    gf2::Matrix m = random_invertible(8, rng);
    auto [r, rank] = gf2::rref(m);
    CHECK(rank == 8);
    CHECK(r == gf2::Matrix::identity(8));
    CHECK((m * m.inverse()).is_identity());
  }
}

TEST_CASE("subspace basics") {
  gf2::Subspace a = gf2::Subspace::span({0b0001}, 4);
  gf2::Subspace b = gf2::Subspace::span({0b0010}, 4);
  CHECK(gf2::Subspace::intersection(a, a) == a);
  CHECK(gf2::Subspace::sum(a, b).dim() == 2);
  CHECK(gf2::Subspace::sum(a, b).contains(0b0011));
  CHECK(a.contains(0b0001));
  CHECK_FALSE(a.contains(0b0010));
}

TEST_CASE("ambient dimension mismatch is an error") {
  gf2::Subspace a = gf2::Subspace::span({0b1}, 3);
  gf2::Subspace b = gf2::Subspace::span({0b1}, 4);
  CHECK_THROWS(gf2::Subspace::sum(a, b));
  CHECK_THROWS(gf2::Subspace::intersection(a, b));
}

TEST_CASE("modular dimension law on random subspace pairs") {
  std::mt19937 rng(999);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<gf2::word_t> ra, rb;
    for (int i = 0; i < 3; ++i) {
      ra.push_back(rng() & 0x3f);
      rb.push_back(rng() & 0x3f);
    }
    gf2::Subspace a = gf2::Subspace::span(ra, 6);
    gf2::Subspace b = gf2::Subspace::span(rb, 6);
    int s = gf2::Subspace::sum(a, b).dim();
    int i = gf2::Subspace::intersection(a, b).dim();
    CHECK(s + i == a.dim() + b.dim());
    CHECK(gf2::Subspace::sum(a, b).contains(a));
    CHECK(a.contains(gf2::Subspace::intersection(a, b)));
  }
}

TEST_CASE("all subspaces match the gaussian binomial totals") {
  CHECK(gf2::all_subspaces(1).size() == 2);
  CHECK(gf2::all_subspaces(4).size() == 67);
  CHECK(gaussian_total(4) == 67);
  auto six = gf2::all_subspaces(6);
  CHECK(six.size() == 2825);
  CHECK(gaussian_total(6) == 2825);
  std::set<std::string> keys;
  for (const auto &s : six)
    keys.insert(s.key());
  CHECK(keys.size() == six.size()); // canonical form, no duplicates
  CHECK_THROWS(gf2::all_subspaces(8));
}

TEST_CASE("plane-translation line is the intersection of two of the four") {
  // coordinates of the extraspecial core: a1 a2 a4 a7 a8 a9 a10
  gf2::Subspace translations = gf2::Subspace::span({1, 2, 4, 8}, 7);
  gf2::Subspace mixed = gf2::Subspace::span({8, 4, 16, 32}, 7);
  gf2::Subspace line = gf2::Subspace::intersection(translations, mixed);
  CHECK(line.dim() == 2);
  CHECK(line == gf2::Subspace::span({8, 4}, 7));
}

TEST_CASE("quotient map: project and lift round trips") {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<gf2::word_t> kr;
    for (int i = 0; i < 2; ++i)
      kr.push_back(rng() & 0x3f);
    gf2::Subspace k = gf2::Subspace::span(kr, 6);
    gf2::QuotientMap qm = gf2::quotient_map(k);
    CHECK(qm.quotient_dim() == 6 - k.dim());
    // kernel projects to zero; lift of a projected overspace recovers it
    for (int i = 0; i < k.dim(); ++i)
      CHECK(qm.project(k.basis_row(i)) == 0);
    std::vector<gf2::word_t> sr = kr;
    sr.push_back(rng() & 0x3f);
    sr.push_back(rng() & 0x3f);
    gf2::Subspace s = gf2::Subspace::span(sr, 6); // contains k
    std::vector<gf2::word_t> proj;
    for (int i = 0; i < s.dim(); ++i)
      proj.push_back(qm.project(s.basis_row(i)));
    gf2::Subspace lifted = qm.lift(gf2::Subspace::span(proj, qm.quotient_dim()));
    CHECK(lifted == s);
    CHECK(lifted.dim() == k.dim() + static_cast<int>(
        gf2::Subspace::span(proj, qm.quotient_dim()).dim()));
  }
}

TEST_CASE("quadratic form values and polarization") {
  // hyperbolic plane: q(x, y) = xy
  gf2::QuadraticForm q;
  q.dim = 2;
  q.gram = gf2::Matrix(2, 2);
  q.gram.set(0, 1, true);
  q.gram.set(1, 0, true);
  q.diag = 0;
  CHECK(q.value(0b00) == 0);
  CHECK(q.value(0b01) == 0);
  CHECK(q.value(0b10) == 0);
  CHECK(q.value(0b11) == 1);
  CHECK(q.polar(1, 2) == 1);
  for (gf2::word_t v = 0; v < 4; ++v)
    CHECK(q.polar(v, v) == 0); // alternating
  CHECK(q.singular_nonzero_count() == 2);
  CHECK(gf2::is_totally_singular(gf2::Subspace(2), q));
  CHECK(gf2::is_totally_singular(gf2::Subspace::span({0b01}, 2), q));
  CHECK_FALSE(gf2::is_totally_singular(gf2::Subspace::span({0b01, 0b10}, 2), q));
}

} // TEST_SUITE
