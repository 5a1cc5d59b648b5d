#include <cctype>

#include "cubint/expr.hpp"

namespace cubint {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Expr run() {
    Expr e = expr();
    skip();
    if (pos_ != s_.size()) throw SyntaxError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
    return e;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (eat('+'))
        lhs = lhs + term();
      else if (eat('-'))
        lhs = lhs - term();
      else
        return lhs;
    }
  }

  Expr term() {
    Expr lhs = unary();
    for (;;) {
      if (eat('*')) {
        lhs = lhs * unary();
      } else if (skip(), pos_ < s_.size() && s_[pos_] == '/') {
        std::size_t at = pos_++;
        Expr rhs = unary();
        if (rhs.is_zero()) throw SyntaxError("division by zero", at);
        lhs = lhs / rhs;
      } else {
        return lhs;
      }
    }
  }

  Expr unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    skip();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      std::size_t at = ++pos_;
      Expr ex = unary();
      if (!ex.is_num()) throw SyntaxError("exponent must be a rational constant", at);
      try {
        return pow(base, ex.q());
      } catch (const DomainError& e) {
        throw SyntaxError(e.what(), at);
      }
    }
    return base;
  }

  Expr number() {
    std::size_t start = pos_;
    mpz_class mant = 0;
    long scale = 0;
    bool digits = false;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      mant = mant * 10 + (s_[pos_++] - '0');
      digits = true;
    }
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        mant = mant * 10 + (s_[pos_++] - '0');
        --scale;
        digits = true;
      }
    }
    if (!digits) throw SyntaxError("malformed number", start);
    if (pos_ + 1 < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      int sign = 1;
      if (s_[pos_] == '+' || s_[pos_] == '-') sign = s_[pos_++] == '-' ? -1 : 1;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        long ex = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
          ex = ex * 10 + (s_[pos_++] - '0');
        scale += sign * ex;
      } else {
        pos_ = save;
      }
    }
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    mpq_class q = scale < 0 ? mpq_class(mant, p10) : mpq_class(mant * p10);
    q.canonicalize();
    return Expr(q);
  }

  Expr primary() {
    skip();
    if (pos_ >= s_.size()) throw SyntaxError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      if (!eat(')')) throw SyntaxError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string id(s_.substr(start, pos_ - start));
      if (id == "x") return Expr::x();
      if (id == "y") return Expr::y();
      if (id == "pi") return Expr::pi();
      if (id == "e") return Expr::e();
      static const std::pair<const char*, Op> funcs[] = {
          {"sin", Op::Sin},   {"cos", Op::Cos},   {"tan", Op::Tan},   {"exp", Op::Exp},  {"ln", Op::Ln},
          {"sinh", Op::Sinh}, {"cosh", Op::Cosh}, {"tanh", Op::Tanh}, {"sqrt", Op::Pow}};
      for (const auto& [name, op] : funcs) {
        if (id != name) continue;
        if (!eat('(')) throw SyntaxError("expected '(' after " + id, pos_);
        std::size_t at = pos_;
        Expr arg = expr();
        if (!eat(')')) throw SyntaxError("expected ')'", pos_);
        try {
          return op == Op::Pow ? sqrt(arg) : apply(op, arg);
        } catch (const DomainError& e) {
          throw SyntaxError(e.what(), at);
        }
      }
      throw UnknownIdentifier("unknown identifier '" + id + "'", start);
    }
    throw SyntaxError("unexpected '" + std::string(1, c) + "'", pos_);
  }
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).run(); }

}  // namespace cubint
