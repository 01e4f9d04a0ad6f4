#include "roughimg/expression.hpp"

#include <cctype>
#include <charconv>
#include <memory>

namespace roughimg {

namespace {

using Eval = std::function<Complex(double)>;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Eval parse() {
    Eval e = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ConfigError("expression '" + std::string(text_) + "', column " + std::to_string(pos_ + 1) +
                      ": " + why);
  }

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

  Eval expression() {
    Eval lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = [a = std::move(lhs), b = term()](double x) { return a(x) + b(x); };
      } else if (accept('-')) {
        lhs = [a = std::move(lhs), b = term()](double x) { return a(x) - b(x); };
      } else {
        return lhs;
      }
    }
  }

  Eval term() {
    Eval lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = [a = std::move(lhs), b = unary()](double x) { return a(x) * b(x); };
      } else if (accept('/')) {
        lhs = [a = std::move(lhs), b = unary()](double x) { return a(x) / b(x); };
      } else {
        return lhs;
      }
    }
  }

  Eval unary() {
    if (accept('-')) return [a = unary()](double x) { return -a(x); };
    if (accept('+')) return unary();
    return power();
  }

  Eval power() {
    Eval base = primary();
    if (accept('^')) {
      Eval exponent = unary();
      return [a = std::move(base), b = std::move(exponent)](double x) { return std::pow(a(x), b(x)); };
    }
    return base;
  }

  Eval primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Eval inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
      if (ec != std::errc()) fail("bad number");
      pos_ = static_cast<std::size_t>(ptr - text_.data());
      return [value](double) { return Complex(value, 0.0); };
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      if (name == "x1" || name == "x") return [](double x) { return Complex(x, 0.0); };
      if (name == "i") return [](double) { return I; };
      if (name == "pi") return [](double) { return Complex(pi, 0.0); };
      Complex (*fn)(const Complex&) = nullptr;
      if (name == "exp") fn = [](const Complex& z) { return std::exp(z); };
      else if (name == "sin") fn = [](const Complex& z) { return std::sin(z); };
      else if (name == "cos") fn = [](const Complex& z) { return std::cos(z); };
      else if (name == "sqrt") fn = [](const Complex& z) { return std::sqrt(z); };
      else if (name == "log") fn = [](const Complex& z) { return std::log(z); };
      else if (name == "abs") fn = [](const Complex& z) { return Complex(std::abs(z), 0.0); };
      else fail("unknown symbol '" + name + "'");
      if (!accept('(')) fail("expected '(' after " + name);
      Eval arg = expression();
      if (!accept(')')) fail("expected ')'");
      return [fn, a = std::move(arg)](double x) { return fn(a(x)); };
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(std::string_view text) {
  Parser parser(text);
  Eval eval = parser.parse();
  return Expression(std::string(text), std::move(eval));
}

Expression Expression::constant(Complex value) {
  char buf[80];
  auto end = std::to_chars(buf, buf + 40, value.real()).ptr;
  std::string text(buf, end);
  if (value.imag() != 0.0) {
    end = std::to_chars(buf, buf + 40, value.imag()).ptr;
    text = "(" + text + ")+(" + std::string(buf, end) + ")*i";
  }
  return Expression(std::move(text), [value](double) { return value; });
}

}  // namespace roughimg
