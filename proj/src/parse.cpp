#include "jetdbar/parse.hpp"

#include <cctype>

namespace jetdbar {

std::optional<Var> lookup_variable(std::string_view token, const NameTable& names) {
  std::size_t split = token.size();
  while (split > 0 && std::isdigit(static_cast<unsigned char>(token[split - 1]))) --split;
  if (split == 0 || split == token.size()) return std::nullopt;
  std::string_view stem = token.substr(0, split);
  int index = std::stoi(std::string(token.substr(split))) - 1;
  if (index < 0 || index >= kMaxAxis) return std::nullopt;
  for (int k = 0; k < kNumKinds; ++k) {
    auto kind = static_cast<VarKind>(k);
    if (names.name(kind) == stem) return Var{kind, index};
  }
  return std::nullopt;
}

namespace {

class Parser {
public:
  Parser(std::string_view text, const NameTable& names) : text_(text), names_(names) {}

  RatFunc parse() {
    RatFunc r = expr();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
    return r;
  }

private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatFunc expr() {
    RatFunc r;
    bool negate = false;
    skip_space();
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    r = term();
    if (negate) r = -r;
    while (true) {
      if (accept('+')) {
        r += term();
      } else if (accept('-')) {
        r -= term();
      } else {
        break;
      }
    }
    return r;
  }

  RatFunc term() {
    RatFunc r = factor();
    while (true) {
      if (accept('*')) {
        r *= factor();
      } else if (accept('/')) {
        std::size_t at = pos_;
        RatFunc d = factor();
        if (d.is_zero()) throw ParseError("division by zero", at);
        r *= d.inverse();
      } else {
        break;
      }
    }
    return r;
  }

  RatFunc factor() {
    skip_space();
    if (accept('-')) return -factor();
    RatFunc base = primary();
    if (accept('^')) {
      skip_space();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) throw ParseError("expected exponent", pos_);
      int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
      RatFunc r(1);
      for (int k = 0; k < e; ++k) r *= base;
      return r;
    }
    return base;
  }

  RatFunc primary() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RatFunc r = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      mpz_class v(std::string(text_.substr(start, pos_ - start)));
      return RatFunc(GaussRational(mpq_class(v)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string_view tok = text_.substr(start, pos_ - start);
      if (tok == "i") return RatFunc(GaussRational::i());
      auto v = lookup_variable(tok, names_);
      if (!v) throw ParseError("unknown variable '" + std::string(tok) + "'", start);
      return RatFunc(Poly::var(*v));
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  std::string_view text_;
  const NameTable& names_;
  std::size_t pos_ = 0;
};

}  // namespace

RatFunc parse_rational(std::string_view text, const NameTable& names) {
  return Parser(text, names).parse();
}

Poly parse_poly(std::string_view text, const NameTable& names) {
  RatFunc r = parse_rational(text, names);
  if (!r.is_polynomial()) throw ParseError("expected a polynomial", 0);
  return r.numerator();
}

}  // namespace jetdbar
