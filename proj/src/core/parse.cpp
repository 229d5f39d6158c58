#include "entropykit/parse.hpp"

#include <algorithm>
#include <cctype>

#include "entropykit/error.hpp"

namespace entropykit {

bool Scope::knows(std::string_view name) const {
  return chart.contains(name) || std::find(params.begin(), params.end(), name) != params.end() ||
         functions.find(name) != functions.end();
}

namespace {

enum class Tok { End, Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::End: return "end of input";
    case Tok::Number: return "number";
    case Tok::Ident: return "identifier";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Caret: return "'^'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view text, SourcePos origin) {
  std::vector<Token> out;
  int line = origin.line;
  int column = origin.column;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
        ++column;
      }
    }
  };
  while (i < text.size()) {
    auto c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    Token tok;
    tok.line = line;
    tok.column = column;
    std::size_t len = 1;
    if (std::isdigit(c)) {
      while (i + len < text.size() && std::isdigit(static_cast<unsigned char>(text[i + len]))) ++len;
      tok.kind = Tok::Number;
    } else if (std::isalpha(c) || c == '_') {
      while (i + len < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i + len])) || text[i + len] == '_'))
        ++len;
      tok.kind = Tok::Ident;
    } else {
      switch (c) {
        case '+': tok.kind = Tok::Plus; break;
        case '-': tok.kind = Tok::Minus; break;
        case '*': tok.kind = Tok::Star; break;
        case '/': tok.kind = Tok::Slash; break;
        case '^': tok.kind = Tok::Caret; break;
        case '(': tok.kind = Tok::LParen; break;
        case ')': tok.kind = Tok::RParen; break;
        case ',': tok.kind = Tok::Comma; break;
        default: {
          std::string shown(1, text[i]);
          if (c >= 0x80) {
            std::size_t n = 1;
            while (i + n < text.size() && (static_cast<unsigned char>(text[i + n]) & 0xC0) == 0x80) ++n;
            shown = std::string(text.substr(i, n));
          }
          throw ParseError("unexpected character '" + shown + "'", line, column);
        }
      }
    }
    tok.text = std::string(text.substr(i, len));
    advance(len);
    out.push_back(std::move(tok));
  }
  Token end;
  end.line = line;
  end.column = column;
  out.push_back(end);
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, const Scope& scope) : tokens_(std::move(tokens)), scope_(scope) {}

  Expr run() {
    Expr e = expr();
    if (peek().kind != Tok::End) fail("unexpected " + std::string(describe(peek().kind)));
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)]; }
  const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }
  void expect(Tok kind) {
    if (!accept(kind))
      fail("expected " + std::string(describe(kind)) + ", found " + std::string(describe(peek().kind)));
  }
  [[noreturn]] void fail(const std::string& message) const { fail_at(peek(), message); }
  [[noreturn]] static void fail_at(const Token& tok, const std::string& message) {
    throw ParseError(message, tok.line, tok.column);
  }

  Expr expr() {
    Expr acc = term();
    for (;;) {
      if (accept(Tok::Plus))
        acc += term();
      else if (accept(Tok::Minus))
        acc -= term();
      else
        return acc;
    }
  }

  Expr term() {
    Expr acc = unary();
    for (;;) {
      if (accept(Tok::Star)) {
        acc *= unary();
      } else if (peek().kind == Tok::Slash) {
        const Token& at = next();
        Expr divisor = unary();
        if (divisor.is_zero()) throw DivisionByZeroError(std::to_string(at.line) + ":" + std::to_string(at.column) +
                                                         ": division by zero");
        acc = acc / divisor;
      } else {
        return acc;
      }
    }
  }

  Expr unary() {
    if (accept(Tok::Minus)) return -unary();
    if (accept(Tok::Plus)) return unary();
    return factor();
  }

  Expr factor() {
    const Token& start = peek();
    Expr b = base();
    if (!accept(Tok::Caret)) return b;
    Rational e = exponent();
    try {
      return pow(b, e);
    } catch (const DivisionByZeroError&) {
      fail_at(start, "zero raised to a negative power");
    } catch (const DomainError& err) {
      fail_at(start, err.what());
    }
  }

  Rational integer() {
    if (peek().kind != Tok::Number) fail("expected integer, found " + std::string(describe(peek().kind)));
    return Rational(mpz_class(next().text, 10));
  }

  Rational rational() {
    bool negative = accept(Tok::Minus);
    Rational value = integer();
    if (peek().kind == Tok::Slash && peek(1).kind == Tok::Number) {
      const Token& slash = next();
      Rational den = integer();
      if (den == 0) fail_at(slash, "rational with zero denominator");
      value /= den;
    }
    return negative ? Rational(-value) : value;
  }

  Rational exponent() {
    if (accept(Tok::LParen)) {
      Rational e = rational();
      expect(Tok::RParen);
      return e;
    }
    return rational();
  }

  Expr base() {
    const Token& tok = peek();
    switch (tok.kind) {
      case Tok::Number: {
        Rational value = integer();
        if (peek().kind == Tok::Slash && peek(1).kind == Tok::Number) {
          const Token& slash = next();
          Rational den = integer();
          if (den == 0) throw DivisionByZeroError(std::to_string(slash.line) + ":" + std::to_string(slash.column) +
                                                  ": division by zero");
          value /= den;
        }
        return Expr(value);
      }
      case Tok::Ident: {
        Token ident = next();
        if (ident.text == "ln" || ident.text == "exp") {
          if (peek().kind != Tok::LParen) fail_at(ident, "'" + ident.text + "' must be followed by '('");
          next();
          Expr arg = expr();
          expect(Tok::RParen);
          try {
            return ident.text == "ln" ? ln(arg) : exp(arg);
          } catch (const DomainError& err) {
            fail_at(ident, err.what());
          }
        }
        if (auto f = scope_.functions.find(ident.text); f != scope_.functions.end()) {
          if (accept(Tok::LParen)) {
            std::vector<std::string> args;
            do {
              if (peek().kind != Tok::Ident) fail("expected argument name, found " + std::string(describe(peek().kind)));
              args.push_back(next().text);
            } while (accept(Tok::Comma));
            expect(Tok::RParen);
            if (args != f->second) fail_at(ident, "'" + ident.text + "' is declared with different arguments");
          }
          return Expr::function(ident.text, f->second);
        }
        if (!scope_.knows(ident.text)) throw UnknownIdentifierError(ident.text, ident.line, ident.column);
        return Expr::symbol(ident.text);
      }
      case Tok::LParen: {
        next();
        Expr inner = expr();
        expect(Tok::RParen);
        return inner;
      }
      default:
        fail("expected number, identifier or '(', found " + std::string(describe(tok.kind)));
    }
  }

  std::vector<Token> tokens_;
  const Scope& scope_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text, const Scope& scope, SourcePos origin) {
  return Parser(tokenize(text, origin), scope).run();
}

Expr parse(std::string_view text, const Chart& chart, const std::vector<std::string>& params) {
  return parse(text, Scope{chart, params, {}});
}

DifferentialForm parse_one_form(std::string_view text, const Scope& scope, SourcePos origin) {
  Scope extended = scope;
  std::vector<std::string> diffs;
  for (const auto& x : scope.chart.names()) {
    std::string d = "d" + x;
    if (scope.knows(d)) throw ParseError("'" + d + "' is both a name and a differential", origin.line, origin.column);
    extended.params.push_back(d);
    diffs.push_back(std::move(d));
  }
  const Expr e = parse(text, extended, origin);
  DifferentialForm form(scope.chart, 1);
  Expr rest = e;
  for (int i = 0; i < scope.chart.dimension(); ++i) {
    const auto& d = diffs[static_cast<std::size_t>(i)];
    Expr c = differentiate(e, d);
    for (const auto& name : free_symbols(c))
      if (std::find(diffs.begin(), diffs.end(), name) != diffs.end())
        throw ParseError("not a 1-form: product of differentials", origin.line, origin.column);
    rest -= c * Expr::symbol(d);
    form.add_term(IndexTuple{i}, c);
  }
  if (!rest.is_zero()) throw ParseError("not a 1-form: term '" + to_string(rest) + "' has no differential", origin.line,
                                        origin.column);
  return form;
}

}  // namespace entropykit
