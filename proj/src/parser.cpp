#include "modal/parser.hpp"

#include <cctype>
#include <vector>

namespace modal {

namespace {

enum class Tok { Bot, Var, Const, LParen, RParen, Arrow, Or, And, Not, Box, Dia, End };

struct Token {
  Tok kind;
  std::uint32_t index;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto digits = [&](std::size_t start) {
    std::size_t j = start;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == start) throw ParseError("expected digits", start);
    if (j - start > 9) throw ParseError("index too large", start);
    return std::make_pair(static_cast<std::uint32_t>(std::stoul(std::string(s.substr(start, j - start)))), j);
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t pos = i;
    if (s.substr(i, 3) == "bot" && (i + 3 == s.size() || !std::isalnum(static_cast<unsigned char>(s[i + 3])))) {
      out.push_back({Tok::Bot, 0, pos});
      i += 3;
    } else if (c == 'p' || c == 'c') {
      auto [idx, j] = digits(i + 1);
      out.push_back({c == 'p' ? Tok::Var : Tok::Const, idx, pos});
      i = j;
    } else if (c == '(') {
      out.push_back({Tok::LParen, 0, pos});
      ++i;
    } else if (c == ')') {
      out.push_back({Tok::RParen, 0, pos});
      ++i;
    } else if (s.substr(i, 2) == "->") {
      out.push_back({Tok::Arrow, 0, pos});
      i += 2;
    } else if (s.substr(i, 2) == "[]") {
      out.push_back({Tok::Box, 0, pos});
      i += 2;
    } else if (s.substr(i, 2) == "<>") {
      out.push_back({Tok::Dia, 0, pos});
      i += 2;
    } else if (c == '|') {
      out.push_back({Tok::Or, 0, pos});
      ++i;
    } else if (c == '&') {
      out.push_back({Tok::And, 0, pos});
      ++i;
    } else if (c == '!') {
      out.push_back({Tok::Not, 0, pos});
      ++i;
    } else {
      throw ParseError(std::string("unknown token '") + c + "'", pos);
    }
  }
  out.push_back({Tok::End, 0, s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula run() {
    Formula f = impl();
    if (peek().kind != Tok::End) throw ParseError("unexpected trailing input", peek().pos);
    return f;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++i_;
    return true;
  }

  Formula impl() {
    Formula lhs = disjunction();
    if (accept(Tok::Arrow)) return Formula::implies(lhs, impl());
    return lhs;
  }

  Formula disjunction() {
    Formula acc = conjunction();
    while (accept(Tok::Or)) acc = disj(acc, conjunction());
    return acc;
  }

  Formula conjunction() {
    Formula acc = unary();
    while (accept(Tok::And)) acc = conj(acc, unary());
    return acc;
  }

  Formula unary() {
    if (accept(Tok::Not)) return neg(unary());
    if (accept(Tok::Box)) return Formula::box(unary());
    if (accept(Tok::Dia)) return dia(unary());
    return primary();
  }

  Formula primary() {
    const Token t = peek();
    switch (t.kind) {
      case Tok::Bot: ++i_; return Formula::bottom();
      case Tok::Var: ++i_; return Formula::var(t.index);
      case Tok::Const: ++i_; return Formula::constant(t.index);
      case Tok::LParen: {
        ++i_;
        Formula f = impl();
        if (!accept(Tok::RParen)) throw ParseError("expected ')'", peek().pos);
        return f;
      }
      case Tok::End: throw ParseError("unexpected end of input", t.pos);
      default: throw ParseError("unexpected token", t.pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

// Precedence levels: implication 1, disjunction 2, conjunction 3, unary/atomic 4.
struct Printed {
  std::string text;
  int prec;
};

Printed print(const Formula& f);

std::string at_least(const Formula& f, int prec) {
  Printed p = print(f);
  return p.prec >= prec ? p.text : "(" + p.text + ")";
}

Printed print(const Formula& f) {
  if (f.is_atom()) return {atom_name(f.atom_value()), 4};
  if (f.is_box()) return {"[]" + at_least(f.body(), 4), 4};
  if (auto d = as_dia(f)) return {"<>" + at_least(*d, 4), 4};
  if (auto c = as_conj(f)) return {at_least(c->first, 3) + " & " + at_least(c->second, 4), 3};
  if (auto n = as_neg(f)) return {"!" + at_least(*n, 4), 4};
  if (auto d = as_disj(f)) return {at_least(d->first, 2) + " | " + at_least(d->second, 3), 2};
  return {at_least(f.lhs(), 2) + " -> " + at_least(f.rhs(), 1), 1};
}

}  // namespace

Formula parse(std::string_view text) { return Parser(lex(text)).run(); }

std::string render(const Formula& f) { return print(f).text; }

}  // namespace modal
