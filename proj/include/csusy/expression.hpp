#ifndef CSUSY_EXPRESSION_HPP
#define CSUSY_EXPRESSION_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace csusy {

class ExpressionError : public std::invalid_argument {
 public:
  ExpressionError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at offset " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// A potential V(x) written with numbers, the variable x, + - * / ^,
/// parentheses and exp(...). Enough for polynomial and exponential atoms,
/// e.g. "4*(exp(-2*x) - 2*exp(-x)) + 4" or "x^2".
///
/// ^ binds tighter than unary minus and is right associative, so -x^2 is
/// -(x^2) and 2^3^2 is 2^9.
class Expression {
 public:
  static Expression parse(std::string_view text);

  double operator()(double x) const;
  const std::string& text() const { return text_; }

 private:
  enum class Op { constant, variable, add, sub, mul, div, pow, neg, exp };
  struct Instr {
    Op op;
    double value = 0.0;
  };
  friend class ExpressionParser;

  std::string text_;
  std::vector<Instr> program_;  // postfix
};

}  // namespace csusy

#endif  // CSUSY_EXPRESSION_HPP
