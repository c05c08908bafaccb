#pragma once

#include <map>
#include <string>
#include <string_view>

#include "polynomial.hpp"

namespace charbert {

// Named integer constants usable inside polynomial text, e.g. {"p", 5} so
// that fixtures can write "p - x*y" for the distinguished prime.
using ConstantTable = std::map<std::string, mpz_class, std::less<>>;

namespace detail {

// Recursive descent over
//   sum     := ['+'|'-'] product (('+'|'-') product)*
//   product := power (['*'|'/'] power | power)*     juxtaposition multiplies
//   power   := atom ('^' integer)*
//   atom    := integer | identifier | '(' sum ')'
// Division is allowed only by nonzero constants; exact coefficients are kept
// as rationals until the end so that "1/2*x" works over Q and F_p alike.
template <CoefficientDomain D>
class PolynomialParser {
 public:
  PolynomialParser(RingPtr<D> ring, std::string_view text, const ConstantTable* constants)
      : ring_(std::move(ring)), text_(text), constants_(constants) {}

  Polynomial<D> parse() {
    Rational r = sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    std::vector<typename Polynomial<D>::Term> terms;
    for (auto& [m, q] : r.terms) terms.push_back({m, ring_->domain().from_rational(q)});
    return Polynomial<D>(ring_, std::move(terms));
  }

 private:
  // polynomial with rational coefficients, unnormalized
  struct Rational {
    std::vector<std::pair<Monomial, mpq_class>> terms;
  };

  Rational constant(const mpq_class& q) const {
    Rational r;
    if (sgn(q) != 0) r.terms.push_back({Monomial(ring_->nvars()), q});
    return r;
  }

  static Rational add(Rational a, const Rational& b, int sign) {
    for (const auto& [m, q] : b.terms) {
      bool merged = false;
      for (auto& [m2, q2] : a.terms)
        if (m2 == m) {
          q2 += sign * q;
          merged = true;
          break;
        }
      if (!merged) a.terms.push_back({m, sign * q});
    }
    std::erase_if(a.terms, [](const auto& t) { return sgn(t.second) == 0; });
    return a;
  }

  static Rational multiply(const Rational& a, const Rational& b) {
    Rational r;
    for (const auto& [ma, qa] : a.terms)
      for (const auto& [mb, qb] : b.terms) r = add(std::move(r), Rational{{{ma * mb, qa * qb}}}, 1);
    return r;
  }

  std::optional<mpq_class> as_constant(const Rational& r) const {
    if (r.terms.empty()) return mpq_class(0);
    if (r.terms.size() == 1 && r.terms[0].first.is_one()) return r.terms[0].second;
    return std::nullopt;
  }

  Rational sum() {
    skip_space();
    int sign = 1;
    if (peek('+')) {
      ++pos_;
    } else if (peek('-')) {
      ++pos_;
      sign = -1;
    }
    Rational acc = add(Rational{}, product(), sign);
    for (;;) {
      skip_space();
      if (peek('+')) {
        ++pos_;
        acc = add(std::move(acc), product(), 1);
      } else if (peek('-')) {
        ++pos_;
        acc = add(std::move(acc), product(), -1);
      } else {
        return acc;
      }
    }
  }

  Rational product() {
    Rational acc = power();
    for (;;) {
      skip_space();
      if (peek('*')) {
        ++pos_;
        acc = multiply(acc, power());
      } else if (peek('/')) {
        ++pos_;
        Rational den = power();
        auto c = as_constant(den);
        if (!c) fail("division by a non-constant");
        if (sgn(*c) == 0) fail("division by zero");
        acc = multiply(acc, constant(1 / *c));
      } else if (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                         text_[pos_] == '_' || text_[pos_] == '(')) {
        acc = multiply(acc, power());
      } else {
        return acc;
      }
    }
  }

  Rational power() {
    Rational base = atom();
    for (;;) {
      skip_space();
      if (!peek('^')) return base;
      ++pos_;
      skip_space();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent after '^'");
      unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (e > 0xFFFF) fail("exponent too large");
      Rational r = constant(1);
      for (unsigned long k = 0; k < e; ++k) r = multiply(r, base);
      base = std::move(r);
    }
  }

  Rational atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      Rational r = sum();
      skip_space();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return constant(mpq_class(mpz_class(std::string(text_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      if (auto idx = ring_->index_of(name)) {
        Rational r;
        r.terms.push_back({Monomial::variable(ring_->nvars(), *idx), mpq_class(1)});
        return r;
      }
      if (constants_) {
        auto it = constants_->find(name);
        if (it != constants_->end()) return constant(mpq_class(it->second));
      }
      fail("unknown symbol '" + std::string(name) + "'");
    }
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("cannot parse '" + std::string(text_) + "' at position " + std::to_string(pos_) + ": " + what);
  }

  RingPtr<D> ring_;
  std::string_view text_;
  const ConstantTable* constants_;
  std::size_t pos_ = 0;
};

}  // namespace detail

template <CoefficientDomain D>
Polynomial<D> parse_polynomial(const RingPtr<D>& ring, std::string_view text,
                               const ConstantTable* constants = nullptr) {
  return detail::PolynomialParser<D>(ring, text, constants).parse();
}

template <CoefficientDomain D>
std::vector<Polynomial<D>> parse_polynomials(const RingPtr<D>& ring, const std::vector<std::string>& texts,
                                             const ConstantTable* constants = nullptr) {
  std::vector<Polynomial<D>> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(parse_polynomial(ring, t, constants));
  return out;
}

}  // namespace charbert
