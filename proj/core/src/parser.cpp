#include "goh/parser.hpp"

#include <cctype>
#include <string>

#include "goh/errors.hpp"

namespace goh {

namespace {

class Parser {
 public:
  Parser(std::string_view text, Ambient ambient) : text_(text), ambient_(ambient) {}

  Polynomial parse() {
    Polynomial result = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

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

  bool at_digit() {
    skip_space();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  Integer uint_literal() {
    if (!at_digit()) fail("expected unsigned integer");
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc *= factor();
    return acc;
  }

  Polynomial factor() {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '-') {
      ++pos_;
      return -factor();
    }
    Polynomial base = atom();
    if (accept('^')) {
      const std::size_t at = pos_;
      const Integer e = uint_literal();
      if (e > kMaxParsedExponent) {
        pos_ = at;
        skip_space();
        fail("exponent overflow (limit " + std::to_string(kMaxParsedExponent) + ")");
      }
      base = base.pow(static_cast<std::uint32_t>(e.get_ui()));
    }
    return base;
  }

  Polynomial atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'x' || c == 'p') return variable();
    if (std::isdigit(static_cast<unsigned char>(c))) return rational();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Polynomial rational() {
    const Integer num = uint_literal();
    Integer den = 1;
    if (accept('/')) {
      const std::size_t at = pos_;
      den = uint_literal();
      if (sgn(den) == 0) {
        pos_ = at;
        skip_space();
        fail("zero denominator");
      }
    }
    return Polynomial::constant(ambient_, make_rational(num, den));
  }

  Polynomial variable() {
    const std::size_t at = pos_;
    const char kind = text_[pos_++];
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      pos_ = at;
      fail(std::string("expected index after '") + kind + "'");
    }
    const Integer index = uint_literal();
    const std::string name = kind + index.get_str();
    if (sgn(index) == 0 || index > ambient_.n) {
      pos_ = at;
      fail("unknown variable " + name);
    }
    if (kind == 'p' && !ambient_.fiber) {
      pos_ = at;
      fail("unknown variable " + name + " (no fiber variables in this context)");
    }
    const std::size_t k = index.get_ui();
    return Polynomial::variable(ambient_, kind == 'x' ? ambient_.x(k) : ambient_.p(k));
  }

  std::string_view text_;
  Ambient ambient_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_expression(std::string_view text, Ambient ambient) { return Parser(text, ambient).parse(); }

}  // namespace goh
