#include <cctype>
#include <limits>

#include "hk/poly.hpp"

namespace hk {

namespace {

class Parser {
 public:
  Parser(std::string_view text, RingPtr ring) : s_(text), ring_(std::move(ring)) {}

  Polynomial parse_all() {
    Polynomial p = expr();
    skip();
    if (pos_ < s_.size()) fail("unexpected character");
    return p;
  }

  std::vector<Polynomial> parse_list() {
    std::vector<Polynomial> out;
    skip();
    if (pos_ == s_.size()) return out;
    out.push_back(expr());
    skip();
    while (pos_ < s_.size() && s_[pos_] == ',') {
      ++pos_;
      out.push_back(expr());
      skip();
    }
    if (pos_ < s_.size()) fail("unexpected character");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

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

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      if (eat('+')) {
        acc = acc + term();
      } else if (eat('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    while (eat('*')) acc = acc * unary();
    skip();
    if (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(')
        fail("implicit multiplication is not allowed");
    }
    return acc;
  }

  Polynomial unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (eat('^')) {
      skip();
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        fail("malformed exponent");
      std::uint64_t k = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        k = k * 10 + static_cast<std::uint64_t>(s_[pos_] - '0');
        if (k > std::numeric_limits<std::uint32_t>::max()) fail("exponent too large");
        ++pos_;
      }
      return base.pow(k);
    }
    return base;
  }

  Polynomial atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const auto& f = *ring_->field();
      std::uint64_t v = 0;
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        const std::uint64_t d = static_cast<std::uint64_t>(s_[pos_] - '0');
        if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10) {
          pos_ = start;
          fail("integer literal out of range");
        }
        v = v * 10 + d;
        ++pos_;
      }
      return Polynomial::constant(ring_, static_cast<FiniteField::Raw>(v % f.characteristic()));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      const std::string_view name = s_.substr(start, pos_ - start);
      const int idx = ring_->var_index(name);
      if (idx >= 0) return Polynomial::variable(ring_, static_cast<std::size_t>(idx));
      const auto& f = *ring_->field();
      if (f.degree() > 1 && name == f.spec().generator)
        return Polynomial::constant(ring_, f.generator());
      pos_ = start;
      fail("unknown identifier '" + std::string(name) + "'");
    }
    fail("unexpected character");
  }

  std::string_view s_;
  RingPtr ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_poly(std::string_view text, const RingPtr& ring) {
  return Parser(text, ring).parse_all();
}

std::vector<Polynomial> parse_poly_list(std::string_view text, const RingPtr& ring) {
  return Parser(text, ring).parse_list();
}

FiniteField::Raw parse_field_element(std::string_view text, const FieldPtr& field) {
  auto ring = Ring::create(field, {});
  Polynomial p = parse_poly(text, ring);
  if (!p.is_constant()) throw ParseError("not a field element", 0);
  return p.constant_term();
}

}  // namespace hk
