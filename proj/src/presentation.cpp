#include "amal/presentation.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace amal::fp {

void fail(const std::string &msg) { throw std::runtime_error("fp: " + msg); }

ParseError::ParseError(int line_, int col_, std::string msg)
    : line(line_), col(col_), message(std::move(msg)) {
  std::ostringstream os;
  os << "parse error at line " << line << ", column " << col << ": " << message;
  rendered = os.str();
}

Word Word::inverse() const {
  Word out;
  out.letters.reserve(letters.size());
  for (auto it = letters.rbegin(); it != letters.rend(); ++it)
    out.letters.push_back(-*it);
  return out;
}

Word Word::operator*(const Word &rhs) const {
  Word out = *this;
  out.letters.insert(out.letters.end(), rhs.letters.begin(), rhs.letters.end());
  out.free_reduce();
  return out;
}

Word Word::pow(int e) const {
  Word base = e < 0 ? inverse() : *this;
  int n = e < 0 ? -e : e;
  Word out;
  for (int i = 0; i < n; ++i)
    out = out * base;
  return out;
}

Word Word::commutator(const Word &a, const Word &b) {
  return a.inverse() * b.inverse() * a * b;
}

void Word::free_reduce() {
  std::vector<std::int32_t> out;
  out.reserve(letters.size());
  for (std::int32_t l : letters) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  letters = std::move(out);
}

std::size_t Presentation::gen_index(const std::string &name) const {
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i] == name)
      return i;
  fail("unknown generator " + name);
}

std::string Presentation::print_word(const Word &w) const {
  std::string out;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    std::int32_t l = w.letters[i];
    if (i)
      out += "*";
    out += gens[static_cast<std::size_t>(std::abs(l)) - 1];
    if (l < 0)
      out += "^-1";
  }
  return out;
}

std::string Presentation::print() const {
  std::string out = "gens:";
  for (const auto &g : gens)
    out += " " + g;
  out += "\n";
  for (const auto &r : relators)
    out += "rel: " + print_word(r) + "\n";
  return out;
}

std::uint64_t fnv1a(std::uint64_t h, const std::string &s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t Presentation::content_hash() const {
  return fnv1a(1469598103934665603ull, print());
}

std::uint64_t hash_words(std::uint64_t seed, const Presentation &p, const std::vector<Word> &words) {
  std::uint64_t h = seed;
  for (const auto &w : words)
    h = fnv1a(h, p.print_word(w) + ";");
  return h;
}

namespace {

struct Lexer {
  const std::string &text;
  std::size_t i = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string &t) : text(t) {}

  void advance() {
    if (i < text.size() && text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  }
  char peek() const { return i < text.size() ? text[i] : '\0'; }
  bool at_end() const { return i >= text.size(); }

  void skip_space_same_line() {
    while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r'))
      advance();
    if (peek() == '#')
      while (!at_end() && peek() != '\n')
        advance();
  }
};

struct ExprParser {
  Lexer &lx;
  const Presentation &pres;

  void skip() { lx.skip_space_same_line(); }

  bool name_char(char c) const {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  }

  Word parse_expr() {
    Word w = parse_term();
    skip();
    while (lx.peek() == '*') {
      lx.advance();
      skip();
      w = w * parse_term();
      skip();
    }
    return w;
  }

  Word parse_term() {
    Word a = parse_atom();
    skip();
    if (lx.peek() == '^') {
      lx.advance();
      skip();
      int sign = 1;
      if (lx.peek() == '-') {
        sign = -1;
        lx.advance();
      }
      if (!(lx.peek() >= '0' && lx.peek() <= '9'))
        throw ParseError(lx.line, lx.col, "expected an integer exponent after '^'");
      long v = 0;
      while (lx.peek() >= '0' && lx.peek() <= '9') {
        v = v * 10 + (lx.peek() - '0');
        if (v > 1000000)
          throw ParseError(lx.line, lx.col, "exponent too large");
        lx.advance();
      }
      a = a.pow(static_cast<int>(sign * v));
    }
    return a;
  }

  Word parse_atom() {
    skip();
    char c = lx.peek();
    if (c == '(') {
      int l = lx.line, co = lx.col;
      lx.advance();
      Word w;
      try {
        w = parse_expr();
      } catch (ParseError &) {
        skip();
        if (lx.at_end() || lx.peek() == '\n')
          throw ParseError(l, co, "unclosed parenthesis");
        throw;
      }
      skip();
      if (lx.peek() != ')')
        throw ParseError(l, co, "unclosed parenthesis");
      lx.advance();
      return w;
    }
    if (c == '[') {
      int l = lx.line, co = lx.col;
      lx.advance();
      Word a = parse_expr();
      skip();
      if (lx.peek() != ',')
        throw ParseError(lx.line, lx.col, "expected ',' in commutator");
      lx.advance();
      Word b = parse_expr();
      skip();
      if (lx.peek() != ']')
        throw ParseError(l, co, "unclosed commutator bracket");
      lx.advance();
      return Word::commutator(a, b);
    }
    if (name_char(c) && !(c >= '0' && c <= '9')) {
      int l = lx.line, co = lx.col;
      std::string name;
      while (name_char(lx.peek())) {
        name.push_back(lx.peek());
        lx.advance();
      }
      for (std::size_t i = 0; i < pres.gens.size(); ++i)
        if (pres.gens[i] == name)
          return Word::gen(i);
      throw ParseError(l, co, "unknown generator name '" + name + "'");
    }
    throw ParseError(lx.line, lx.col, "expected a generator, '(' or '['");
  }
};

} // namespace

Presentation parse_presentation(const std::string &text) {
  Presentation p;
  Lexer lx(text);
  bool have_header = false;
  while (!lx.at_end()) {
    lx.skip_space_same_line();
    if (lx.at_end())
      break;
    if (lx.peek() == '\n') {
      lx.advance();
      continue;
    }
    int l = lx.line, co = lx.col;
    std::string keyword;
    while (!lx.at_end() && lx.peek() != ':' && lx.peek() != '\n') {
      keyword.push_back(lx.peek());
      lx.advance();
    }
    while (!keyword.empty() && (keyword.back() == ' ' || keyword.back() == '\t'))
      keyword.pop_back();
    if (lx.peek() != ':')
      throw ParseError(l, co, "expected 'gens:' or 'rel:' line");
    lx.advance();
    if (keyword == "gens") {
      if (have_header)
        throw ParseError(l, co, "duplicate 'gens:' header");
      have_header = true;
      while (true) {
        lx.skip_space_same_line();
        if (lx.at_end() || lx.peek() == '\n')
          break;
        std::string name;
        int nl = lx.line, nc = lx.col;
        while (!lx.at_end() && lx.peek() != ' ' && lx.peek() != '\t' && lx.peek() != '\n' &&
               lx.peek() != '\r' && lx.peek() != '#') {
          name.push_back(lx.peek());
          lx.advance();
        }
        if (name.empty())
          break;
        for (const auto &g : p.gens)
          if (g == name)
            throw ParseError(nl, nc, "duplicate generator name '" + name + "'");
        p.gens.push_back(name);
        lx.skip_space_same_line();
      }
      if (p.gens.empty())
        throw ParseError(l, co, "empty generator list");
    } else if (keyword == "rel") {
      if (!have_header)
        throw ParseError(l, co, "relator before the 'gens:' header");
      ExprParser ep{lx, p};
      ep.skip();
      if (lx.at_end() || lx.peek() == '\n')
        throw ParseError(l, co, "empty relator");
      Word w = ep.parse_expr();
      ep.skip();
      if (!lx.at_end() && lx.peek() != '\n')
        throw ParseError(lx.line, lx.col, "trailing junk after relator");
      w.free_reduce();
      if (w.empty())
        throw ParseError(l, co, "relator reduces to the empty word");
      p.relators.push_back(std::move(w));
    } else {
      throw ParseError(l, co, "unknown line keyword '" + keyword + "'");
    }
    while (!lx.at_end() && lx.peek() != '\n')
      lx.advance();
    if (!lx.at_end())
      lx.advance();
  }
  if (!have_header)
    throw ParseError(1, 1, "missing 'gens:' header");
  return p;
}

} // namespace amal::fp
