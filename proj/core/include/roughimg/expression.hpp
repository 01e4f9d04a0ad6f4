#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "roughimg/types.hpp"

namespace roughimg {

/// A complex-valued expression of the horizontal coordinate x1, used for
/// impedance functions such as "5+exp(2*pi*x1*i)".
///
/// Grammar: + - * / ^, parentheses, numbers, the symbols x1 (alias x), i, pi,
/// and the functions exp, sin, cos, sqrt, log, abs. Throws ConfigError with
/// the failing column on malformed input.
class Expression {
 public:
  static Expression parse(std::string_view text);
  static Expression constant(Complex value);

  Complex operator()(double x1) const { return eval_(x1); }
  const std::string& text() const { return text_; }

 private:
  Expression(std::string text, std::function<Complex(double)> eval)
      : text_(std::move(text)), eval_(std::move(eval)) {}

  std::string text_;
  std::function<Complex(double)> eval_;
};

}  // namespace roughimg
