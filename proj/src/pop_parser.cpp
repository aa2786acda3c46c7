#include <cctype>
#include <cstdlib>
#include <map>
#include <optional>

#include "msos/polynomial.hpp"

namespace msos {
namespace {

enum class Tok {
  kVars, kMin, kSt, kIdent, kNumber, kSemi, kPlus, kMinus, kStar, kCaret,
  kSlash, kLParen, kRParen, kGe, kLe, kEq, kEnd
};

struct Token {
  Tok kind;
  std::string text;
  double value = 0.0;
  bool is_integer = false;
  long long int_value = 0;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }
  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_ws();
    tok_ = Token{Tok::kEnd, "", 0, false, 0, line_, col_};
    if (pos_ >= src_.size()) return;
    char c = src_[pos_];
    tok_.line = line_;
    tok_.col = col_;
    // "s.t." is the one keyword containing dots
    if (c == 's' && src_.compare(pos_, 4, "s.t.") == 0) {
      tok_.kind = Tok::kSt;
      tok_.text = "s.t.";
      consume(4);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        consume(1);
      tok_.text = src_.substr(start, pos_ - start);
      if (tok_.text == "vars") tok_.kind = Tok::kVars;
      else if (tok_.text == "min") tok_.kind = Tok::kMin;
      else tok_.kind = Tok::kIdent;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && pos_ + 1 < src_.size() &&
         std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
      lex_number();
      return;
    }
    switch (c) {
      case ';': one(Tok::kSemi); return;
      case '+': one(Tok::kPlus); return;
      case '-': one(Tok::kMinus); return;
      case '*': one(Tok::kStar); return;
      case '^': one(Tok::kCaret); return;
      case '/': one(Tok::kSlash); return;
      case '(': one(Tok::kLParen); return;
      case ')': one(Tok::kRParen); return;
      case '>': two('=', Tok::kGe, "expected '>='"); return;
      case '<': two('=', Tok::kLe, "expected '<='"); return;
      case '=': two('=', Tok::kEq, "expected '=='"); return;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }
  }

  void lex_number() {
    std::size_t start = pos_;
    bool integral = true;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
      consume(1);
    if (pos_ < src_.size() && src_[pos_] == '.') {
      integral = false;
      consume(1);
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
        consume(1);
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      integral = false;
      consume(1);
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) consume(1);
      if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
        throw ParseError("malformed exponent in numeric literal", line_, col_);
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
        consume(1);
    }
    tok_.kind = Tok::kNumber;
    tok_.text = src_.substr(start, pos_ - start);
    tok_.value = std::strtod(tok_.text.c_str(), nullptr);
    tok_.is_integer = integral;
    if (integral) tok_.int_value = std::strtoll(tok_.text.c_str(), nullptr, 10);
  }

  void one(Tok k) {
    tok_.kind = k;
    tok_.text = src_[pos_];
    consume(1);
  }
  void two(char second, Tok k, const char* msg) {
    if (pos_ + 1 >= src_.size() || src_[pos_ + 1] != second)
      throw ParseError(msg, line_, col_);
    tok_.kind = k;
    tok_.text = src_.substr(pos_, 2);
    consume(2);
  }

  void skip_ws() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') consume(1);
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        consume(1);
      } else {
        break;
      }
    }
  }

  void consume(std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(const std::string& src) : lex_(src) {}

  Pop parse() {
    Pop pop;
    expect(Tok::kVars, "expected 'vars'");
    while (lex_.peek().kind == Tok::kIdent) {
      Token t = lex_.next();
      if (var_index_.count(t.text))
        throw ParseError("duplicate variable '" + t.text + "'", t.line, t.col);
      var_index_[t.text] = static_cast<int>(pop.variable_names.size());
      pop.variable_names.push_back(t.text);
    }
    if (pop.variable_names.empty()) {
      const Token& t = lex_.peek();
      throw ParseError("expected at least one variable name", t.line, t.col);
    }
    nvars_ = static_cast<int>(pop.variable_names.size());
    expect(Tok::kSemi, "expected ';' after variable list");
    expect(Tok::kMin, "expected 'min'");
    pop.objective = parse_expr();
    expect(Tok::kSemi, "expected ';' after objective");

    bool in_constraints = false;
    while (lex_.peek().kind != Tok::kEnd) {
      if (lex_.peek().kind == Tok::kSt) {
        lex_.next();
        in_constraints = true;
        continue;
      }
      if (!in_constraints) {
        const Token& t = lex_.peek();
        throw ParseError("expected 's.t.' before constraints", t.line, t.col);
      }
      parse_constraint(pop);
    }
    return pop;
  }

 private:
  void parse_constraint(Pop& pop) {
    Polynomial lhs = parse_expr();
    Token op = lex_.next();
    if (op.kind != Tok::kGe && op.kind != Tok::kLe && op.kind != Tok::kEq)
      throw ParseError("expected '>=', '<=' or '==' in constraint", op.line, op.col);
    Polynomial rhs = parse_expr();
    expect(Tok::kSemi, "expected ';' after constraint");
    switch (op.kind) {
      case Tok::kGe: pop.inequalities.push_back(lhs - rhs); break;
      case Tok::kLe: pop.inequalities.push_back(rhs - lhs); break;
      default: pop.equalities.push_back(lhs - rhs); break;
    }
  }

  Polynomial parse_expr() {
    Polynomial acc = parse_term();
    while (true) {
      Tok k = lex_.peek().kind;
      if (k == Tok::kPlus) {
        lex_.next();
        acc = acc + parse_term();
      } else if (k == Tok::kMinus) {
        lex_.next();
        acc = acc - parse_term();
      } else {
        return acc;
      }
    }
  }

  Polynomial parse_term() {
    Polynomial acc = parse_factor();
    while (lex_.peek().kind == Tok::kStar) {
      lex_.next();
      acc = acc * parse_factor();
    }
    return acc;
  }

  Polynomial parse_factor() {
    Polynomial base = parse_base();
    while (lex_.peek().kind == Tok::kCaret) {
      Token caret = lex_.next();
      Token e = lex_.next();
      if (e.kind != Tok::kNumber || !e.is_integer)
        throw ParseError("exponent must be a nonnegative integer", e.line, e.col);
      if (e.int_value < 0)
        throw ParseError("exponent must be a nonnegative integer", e.line, e.col);
      Polynomial out = Polynomial::constant(1.0, nvars_);
      for (long long i = 0; i < e.int_value; ++i) out = out * base;
      base = out;
      (void)caret;
    }
    return base;
  }

  Polynomial parse_base() {
    Token t = lex_.next();
    switch (t.kind) {
      case Tok::kNumber: {
        double v = t.value;
        // rational literal p/q
        if (lex_.peek().kind == Tok::kSlash) {
          lex_.next();
          Token d = lex_.next();
          if (d.kind != Tok::kNumber)
            throw ParseError("expected denominator after '/'", d.line, d.col);
          if (d.value == 0.0)
            throw ParseError("zero denominator", d.line, d.col);
          v /= d.value;
        }
        return Polynomial::constant(v, nvars_);
      }
      case Tok::kIdent: {
        auto it = var_index_.find(t.text);
        if (it == var_index_.end())
          throw ParseError("undeclared variable '" + t.text + "'", t.line, t.col);
        return Polynomial::variable(it->second, nvars_);
      }
      case Tok::kLParen: {
        Polynomial inner = parse_expr();
        expect(Tok::kRParen, "expected ')'");
        return inner;
      }
      case Tok::kMinus:
        return -parse_factor();
      case Tok::kPlus:
        return parse_factor();
      default:
        throw ParseError("unexpected token '" + t.text + "'", t.line, t.col);
    }
  }

  void expect(Tok k, const char* msg) {
    Token t = lex_.next();
    if (t.kind != k) throw ParseError(msg, t.line, t.col);
  }

  Lexer lex_;
  std::map<std::string, int> var_index_;
  int nvars_ = 0;
};

}  // namespace

Pop parse_pop(const std::string& source) { return Parser(source).parse(); }

}  // namespace msos
