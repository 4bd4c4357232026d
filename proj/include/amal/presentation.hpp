#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace amal::fp {

[[noreturn]] void fail(const std::string &msg);

struct ParseError : std::exception {
  int line = 0, col = 0;
  std::string message;
  std::string rendered;
  ParseError(int line, int col, std::string msg);
  const char *what() const noexcept override { return rendered.c_str(); }
};

// A word in abstract generators: letter +(i+1) is generator i, -(i+1) its
// inverse. Free reduction cancels adjacent inverse pairs to a confluent
// normal form.
struct Word {
  std::vector<std::int32_t> letters;

  static Word gen(std::size_t index) { return Word{{static_cast<std::int32_t>(index) + 1}}; }
  Word inverse() const;
  Word operator*(const Word &rhs) const;
  Word pow(int e) const;
  static Word commutator(const Word &a, const Word &b); // a^-1 b^-1 a b
  void free_reduce();
  bool empty() const { return letters.empty(); }
  bool operator==(const Word &rhs) const = default;
};

struct Presentation {
  std::vector<std::string> gens;
  std::vector<Word> relators;

  std::size_t gen_index(const std::string &name) const;
  std::string print_word(const Word &w) const;
  std::string print() const; // round-trips through parse_presentation
  std::uint64_t content_hash() const;
};

// Grammar (line oriented, '#' starts a comment, whitespace insignificant):
//   file    := header, relator lines
//   header  := "gens:" name+
//   relator := "rel:" expr
//   expr    := term ("*" term)*
//   term    := atom ("^" int)?
//   atom    := name | "(" expr ")" | "[" expr "," expr "]"
// where [x,y] denotes x^-1 y^-1 x y.
Presentation parse_presentation(const std::string &text);

std::uint64_t hash_words(std::uint64_t seed, const Presentation &p, const std::vector<Word> &words);

} // namespace amal::fp
