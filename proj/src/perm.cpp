#include "amal/perm.hpp"

#include <numeric>
#include <stdexcept>

namespace amal::perm {

void fail(const std::string &msg) { throw std::runtime_error("perm: " + msg); }

Perm::Perm(std::uint32_t degree) : img_(degree) {
  std::iota(img_.begin(), img_.end(), 0u);
}

Perm Perm::from_images(std::vector<std::uint32_t> images) {
  std::vector<bool> seen(images.size(), false);
  for (std::uint32_t v : images) {
    if (v >= images.size() || seen[v])
      fail("image list is not a bijection");
    seen[v] = true;
  }
  Perm p;
  p.img_ = std::move(images);
  return p;
}

Perm Perm::operator*(const Perm &rhs) const {
  if (degree() != rhs.degree())
    fail("degree mismatch in product");
  Perm out;
  out.img_.resize(degree());
  for (std::uint32_t i = 0; i < degree(); ++i)
    out.img_[i] = rhs.img_[img_[i]];
  return out;
}

Perm Perm::inverse() const {
  Perm out;
  out.img_.resize(degree());
  for (std::uint32_t i = 0; i < degree(); ++i)
    out.img_[img_[i]] = i;
  return out;
}

bool Perm::is_identity() const {
  for (std::uint32_t i = 0; i < degree(); ++i)
    if (img_[i] != i)
      return false;
  return true;
}

bool Perm::is_even() const {
  std::vector<bool> seen(degree(), false);
  std::uint32_t transpositions = 0;
  for (std::uint32_t i = 0; i < degree(); ++i) {
    if (seen[i])
      continue;
    std::uint32_t len = 0;
    for (std::uint32_t j = i; !seen[j]; j = img_[j]) {
      seen[j] = true;
      ++len;
    }
    transpositions += len - 1;
  }
  return (transpositions & 1u) == 0;
}

std::uint64_t Perm::element_order() const {
  std::vector<bool> seen(degree(), false);
  std::uint64_t ord = 1;
  for (std::uint32_t i = 0; i < degree(); ++i) {
    if (seen[i])
      continue;
    std::uint64_t len = 0;
    for (std::uint32_t j = i; !seen[j]; j = img_[j]) {
      seen[j] = true;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

Perm Perm::conjugate(const Perm &g, const Perm &h) {
  Perm out;
  out.img_.resize(g.degree());
  // (h^{-1} g h)[x]: x = h[y] -> out[h[y]] = h[g[y]]
  for (std::uint32_t y = 0; y < g.degree(); ++y)
    out.img_[h.img_[y]] = h.img_[g.img_[y]];
  return out;
}

std::string Perm::key() const {
  std::string k;
  if (degree() <= 255) {
    k.reserve(degree());
    for (std::uint32_t v : img_)
      k.push_back(static_cast<char>(v));
  } else {
    k.reserve(degree() * 4);
    for (std::uint32_t v : img_)
      for (int b = 0; b < 4; ++b)
        k.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
  }
  return k;
}

} // namespace amal::perm
