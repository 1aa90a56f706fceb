#include "radonlp/polyalg/parser.hpp"

#include <cctype>

namespace radonlp {

namespace {

enum class Tok { Int, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End, Bad };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
};

const char* describe(Tok k) {
  switch (k) {
    case Tok::Int: return "integer";
    case Tok::Ident: return "variable";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Caret: return "'^'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::End: return "end of input";
    case Tok::Bad: return "invalid character";
  }
  return "?";
}

constexpr unsigned kMaxExponent = 4096;

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars) : text_(text), vars_(vars) { advance(); }

  MultiPoly parse() {
    MultiPoly p = expr();
    if (cur_.kind != Tok::End) fail({"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"});
    return p;
  }

 private:
  void advance() {
    std::size_t i = next_;
    while (i < text_.size() && std::isspace(static_cast<unsigned char>(text_[i]))) ++i;
    cur_ = Token{Tok::End, i, {}};
    if (i >= text_.size()) {
      next_ = i;
      return;
    }
    char c = text_[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
      cur_ = Token{Tok::Int, i, std::string(text_.substr(i, j - i))};
      next_ = j;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_' || text_[j] == '\''))
        ++j;
      cur_ = Token{Tok::Ident, i, std::string(text_.substr(i, j - i))};
      next_ = j;
      return;
    }
    Tok k = Tok::Bad;
    switch (c) {
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '/': k = Tok::Slash; break;
      case '^': k = Tok::Caret; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      default: break;
    }
    cur_ = Token{k, i, std::string(1, c)};
    next_ = i + 1;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    std::string msg = "syntax error at position " + std::to_string(cur_.pos) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
    msg += ", found ";
    msg += cur_.kind == Tok::End ? "end of input" : "'" + cur_.text + "'";
    throw ParseError(msg, cur_.pos, std::move(expected));
  }

  MultiPoly expr() {
    MultiPoly acc = term();
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      bool minus = cur_.kind == Tok::Minus;
      advance();
      MultiPoly rhs = term();
      if (minus)
        acc -= rhs;
      else
        acc += rhs;
    }
    return acc;
  }

  MultiPoly term() {
    MultiPoly acc = unary();
    while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
      bool divide = cur_.kind == Tok::Slash;
      std::size_t pos = cur_.pos;
      advance();
      MultiPoly rhs = unary();
      if (!divide) {
        acc *= rhs;
        continue;
      }
      if (!rhs.is_constant())
        throw ParseError("division by a non-constant expression at position " + std::to_string(pos), pos);
      if (rhs.is_zero()) throw ParseError("division by zero at position " + std::to_string(pos), pos);
      acc *= Rational(1 / rhs.constant_term());
    }
    return acc;
  }

  MultiPoly unary() {
    if (cur_.kind == Tok::Minus) {
      advance();
      return -unary();
    }
    if (cur_.kind == Tok::Plus) {
      advance();
      return unary();
    }
    return power();
  }

  MultiPoly power() {
    MultiPoly base = primary();
    if (cur_.kind != Tok::Caret) return base;
    advance();
    std::size_t pos = cur_.pos;
    if (cur_.kind == Tok::Minus)
      throw ParseError("negative exponent at position " + std::to_string(pos), pos, {"integer"});
    if (cur_.kind != Tok::Int) fail({"integer"});
    std::string digits = cur_.text;
    advance();
    if (cur_.kind == Tok::Slash || (cur_.kind == Tok::Bad && cur_.text == "."))
      throw ParseError("non-integer exponent at position " + std::to_string(pos), pos, {"integer"});
    if (digits.size() > 6 || std::stoul(digits) > kMaxExponent)
      throw ParseError("exponent too large at position " + std::to_string(pos), pos);
    return base.pow(static_cast<unsigned>(std::stoul(digits)));
  }

  MultiPoly primary() {
    const std::size_t n = vars_.size();
    switch (cur_.kind) {
      case Tok::Int: {
        Rational v(Integer(cur_.text));
        advance();
        return MultiPoly::constant(n, v);
      }
      case Tok::Ident: {
        for (std::size_t i = 0; i < n; ++i) {
          if (vars_[i] == cur_.text) {
            advance();
            return MultiPoly::variable(n, i);
          }
        }
        throw ParseError("unknown variable '" + cur_.text + "' at position " + std::to_string(cur_.pos), cur_.pos,
                         vars_);
      }
      case Tok::LParen: {
        advance();
        MultiPoly inner = expr();
        if (cur_.kind != Tok::RParen) fail({"')'"});
        advance();
        return inner;
      }
      default:
        fail({describe(Tok::Int), describe(Tok::Ident), describe(Tok::LParen), describe(Tok::Minus)});
    }
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  Token cur_{Tok::End, 0, {}};
  std::size_t next_ = 0;
};

}  // namespace

MultiPoly parse_poly(std::string_view text, const std::vector<std::string>& variables) {
  return Parser(text, variables).parse();
}

}  // namespace radonlp
