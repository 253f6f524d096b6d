#include "csusy/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace csusy {

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view s) : s_(s) {}

  std::vector<Expression::Instr> run() {
    expr();
    skip();
    if (pos_ != s_.size()) throw ExpressionError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
    return std::move(out_);
  }

 private:
  using Op = Expression::Op;

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) throw ExpressionError(std::string("expected '") + c + "'", pos_);
  }
  void emit(Op op, double v = 0.0) { out_.push_back({op, v}); }

  void expr() {
    term();
    for (;;) {
      if (accept('+')) {
        term();
        emit(Op::add);
      } else if (accept('-')) {
        term();
        emit(Op::sub);
      } else {
        return;
      }
    }
  }

  void term() {
    unary();
    for (;;) {
      if (accept('*')) {
        unary();
        emit(Op::mul);
      } else if (accept('/')) {
        unary();
        emit(Op::div);
      } else {
        return;
      }
    }
  }

  void unary() {
    if (accept('-')) {
      unary();
      emit(Op::neg);
    } else if (accept('+')) {
      unary();
    } else {
      power();
    }
  }

  void power() {
    primary();
    if (accept('^')) {
      unary();
      emit(Op::pow);
    }
  }

  void primary() {
    skip();
    if (pos_ >= s_.size()) throw ExpressionError("unexpected end of expression", pos_);
    const char c = s_[pos_];
    if (accept('(')) {
      expr();
      expect(')');
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::string rest(s_.substr(pos_));
      char* end = nullptr;
      const double v = std::strtod(rest.c_str(), &end);
      if (end == rest.c_str()) throw ExpressionError("malformed number", pos_);
      pos_ += static_cast<std::size_t>(end - rest.c_str());
      emit(Op::constant, v);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string_view word = s_.substr(start, pos_ - start);
      if (word == "x") {
        emit(Op::variable);
        return;
      }
      if (word == "exp") {
        expect('(');
        expr();
        expect(')');
        emit(Op::exp);
        return;
      }
      throw ExpressionError("unknown identifier '" + std::string(word) + "'", start);
    }
    throw ExpressionError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::vector<Expression::Instr> out_;
};

Expression Expression::parse(std::string_view text) {
  Expression e;
  e.text_ = std::string(text);
  e.program_ = ExpressionParser(text).run();
  return e;
}

double Expression::operator()(double x) const {
  std::vector<double> stack;
  stack.reserve(program_.size());
  auto pop = [&] {
    const double v = stack.back();
    stack.pop_back();
    return v;
  };
  for (const Instr& in : program_) {
    switch (in.op) {
      case Op::constant:
        stack.push_back(in.value);
        break;
      case Op::variable:
        stack.push_back(x);
        break;
      case Op::neg:
        stack.back() = -stack.back();
        break;
      case Op::exp:
        stack.back() = std::exp(stack.back());
        break;
      default: {
        const double r = pop();
        const double l = pop();
        double v = 0.0;
        if (in.op == Op::add) v = l + r;
        else if (in.op == Op::sub) v = l - r;
        else if (in.op == Op::mul) v = l * r;
        else if (in.op == Op::div) v = l / r;
        else v = std::pow(l, r);
        stack.push_back(v);
      }
    }
  }
  return stack.back();
}

}  // namespace csusy
