#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace amal::perm {

[[noreturn]] void fail(const std::string &msg);

// A permutation of {0..n-1}. Products compose left to right:
// (p * q)[x] = q[p[x]], matching the action convention x^(pq) = (x^p)^q.
class Perm {
public:
  Perm() = default;
  explicit Perm(std::uint32_t degree); // identity
  static Perm from_images(std::vector<std::uint32_t> images);

  std::uint32_t degree() const { return static_cast<std::uint32_t>(img_.size()); }
  std::uint32_t operator[](std::uint32_t p) const { return img_[p]; }
  const std::vector<std::uint32_t> &images() const { return img_; }

  Perm operator*(const Perm &rhs) const;
  Perm inverse() const;
  bool is_identity() const;
  bool is_even() const;
  std::uint64_t element_order() const;

  bool operator==(const Perm &rhs) const = default;

  // h^{-1} g h
  static Perm conjugate(const Perm &g, const Perm &h);

  std::string key() const; // compact byte string for hashing

private:
  std::vector<std::uint32_t> img_;
};

} // namespace amal::perm
