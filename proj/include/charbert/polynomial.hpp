#pragma once

#include <algorithm>
#include <cctype>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coefficients.hpp"
#include "monomial.hpp"

namespace charbert {

template <CoefficientDomain D>
class PolyRing;

template <CoefficientDomain D>
using RingPtr = std::shared_ptr<const PolyRing<D>>;

// Ambient polynomial ring: coefficient domain, ordered variable names and the
// active monomial order. Rings are shared immutable objects; two rings with
// the same data are interchangeable even when they are different objects.
template <CoefficientDomain D>
class PolyRing {
 public:
  using Domain = D;

  PolyRing(D domain, std::vector<std::string> variables, MonomialOrder order = MonomialOrder::grevlex())
      : domain_(std::move(domain)), vars_(std::move(variables)), order_(std::move(order)) {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      const std::string& v = vars_[i];
      if (v.empty() || !(std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_'))
        throw ParseError("invalid variable name '" + v + "'");
      for (char ch : v)
        if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'))
          throw ParseError("invalid variable name '" + v + "'");
      for (std::size_t j = 0; j < i; ++j)
        if (vars_[j] == v) throw ParseError("duplicate variable '" + v + "'");
    }
  }

  static RingPtr<D> make(D domain, std::vector<std::string> variables,
                         MonomialOrder order = MonomialOrder::grevlex()) {
    return std::make_shared<const PolyRing>(std::move(domain), std::move(variables), std::move(order));
  }

  const D& domain() const { return domain_; }
  const std::vector<std::string>& variables() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const MonomialOrder& order() const { return order_; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return i;
    return std::nullopt;
  }

  int compare(const Monomial& a, const Monomial& b) const { return order_.compare(a, b); }

  bool same_as(const PolyRing& o) const {
    return this == &o || (domain_ == o.domain_ && vars_ == o.vars_ && order_ == o.order_);
  }

  RingPtr<D> with_order(MonomialOrder order) const { return make(domain_, vars_, std::move(order)); }

  // Appends fresh variables; names are made unique against the existing ones.
  RingPtr<D> extended(const std::vector<std::string>& extra, MonomialOrder order) const {
    std::vector<std::string> vars = vars_;
    for (std::string name : extra) {
      while (std::find(vars.begin(), vars.end(), name) != vars.end()) name += "_";
      vars.push_back(name);
    }
    return make(domain_, std::move(vars), std::move(order));
  }

  RingPtr<D> truncated(std::size_t nvars, MonomialOrder order) const {
    return make(domain_, std::vector<std::string>(vars_.begin(), vars_.begin() + nvars), std::move(order));
  }

  std::string monomial_string(const Monomial& m) const {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!m[i]) continue;
      if (!s.empty()) s += '*';
      s += vars_[i];
      if (m[i] > 1) s += '^' + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
  }

 private:
  D domain_;
  std::vector<std::string> vars_;
  MonomialOrder order_;
};

template <CoefficientDomain D>
class Polynomial {
 public:
  using Domain = D;
  using Coeff = typename D::value_type;
  struct Term {
    Monomial monomial;
    Coeff coeff;
  };

  Polynomial() = default;
  explicit Polynomial(RingPtr<D> ring) : ring_(std::move(ring)) {}
  // Arbitrary term list: sorted, like terms combined, zeros dropped.
  Polynomial(RingPtr<D> ring, std::vector<Term> terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
    normalize();
  }

  // Terms already strictly descending with nonzero coefficients.
  static Polynomial from_sorted(RingPtr<D> ring, std::vector<Term> terms) {
    Polynomial p(std::move(ring));
    p.terms_ = std::move(terms);
    return p;
  }
  static Polynomial constant(RingPtr<D> ring, const Coeff& c) {
    Polynomial p(ring);
    if (!ring->domain().is_zero(c)) p.terms_.push_back({Monomial(ring->nvars()), c});
    return p;
  }
  static Polynomial integer(RingPtr<D> ring, const mpz_class& z) {
    return constant(ring, ring->domain().from_integer(z));
  }
  static Polynomial one(RingPtr<D> ring) { return constant(ring, ring->domain().one()); }
  static Polynomial variable(RingPtr<D> ring, std::size_t index) {
    if (index >= ring->nvars()) throw Error("variable index out of range");
    Polynomial p(ring);
    p.terms_.push_back({Monomial::variable(ring->nvars(), index), ring->domain().one()});
    return p;
  }
  static Polynomial term(RingPtr<D> ring, Monomial m, const Coeff& c) {
    Polynomial p(ring);
    if (!ring->domain().is_zero(c)) p.terms_.push_back({std::move(m), c});
    return p;
  }

  const RingPtr<D>& ring() const { return ring_; }
  const D& domain() const { return ring_->domain(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }
  const Term& leading_term() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().monomial; }
  const Coeff& leading_coeff() const { return terms_.front().coeff; }
  std::uint32_t total_degree() const {
    std::uint32_t d = 0;
    for (const Term& t : terms_) d = std::max(d, t.monomial.degree());
    return d;
  }
  Coeff constant_coeff() const {
    if (!terms_.empty() && terms_.back().monomial.is_one()) return terms_.back().coeff;
    return domain().zero();
  }
  Coeff coeff_of(const Monomial& m) const {
    for (const Term& t : terms_)
      if (t.monomial == m) return t.coeff;
    return domain().zero();
  }

  void check_same_ring(const Polynomial& o) const {
    if (ring_ != o.ring_ && !(ring_ && o.ring_ && ring_->same_as(*o.ring_)))
      throw DomainMismatch("polynomials live in different rings");
  }

  Polynomial operator+(const Polynomial& o) const {
    check_same_ring(o);
    return merge(o, false);
  }
  Polynomial operator-(const Polynomial& o) const {
    check_same_ring(o);
    return merge(o, true);
  }
  Polynomial operator-() const {
    Polynomial r(*this);
    for (Term& t : r.terms_) t.coeff = domain().neg(t.coeff);
    return r;
  }
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial operator*(const Polynomial& o) const {
    check_same_ring(o);
    if (is_zero() || o.is_zero()) return Polynomial(ring_);
    if (terms_.size() == 1) return o.mul_term(terms_[0].monomial, terms_[0].coeff);
    if (o.terms_.size() == 1) return mul_term(o.terms_[0].monomial, o.terms_[0].coeff);
    std::vector<Term> prod;
    prod.reserve(terms_.size() * o.terms_.size());
    for (const Term& a : terms_)
      for (const Term& b : o.terms_) prod.push_back({a.monomial * b.monomial, domain().mul(a.coeff, b.coeff)});
    return Polynomial(ring_, std::move(prod));
  }

  Polynomial scaled(const Coeff& c) const {
    Polynomial r(ring_);
    if (domain().is_zero(c)) return r;
    r.terms_.reserve(terms_.size());
    for (const Term& t : terms_) {
      Coeff v = domain().mul(t.coeff, c);
      if (!domain().is_zero(v)) r.terms_.push_back({t.monomial, std::move(v)});
    }
    return r;
  }

  // c * m * this; multiplying by a monomial preserves the term order
  Polynomial mul_term(const Monomial& m, const Coeff& c) const {
    Polynomial r(ring_);
    if (domain().is_zero(c)) return r;
    r.terms_.reserve(terms_.size());
    for (const Term& t : terms_) {
      Coeff v = domain().mul(t.coeff, c);
      if (!domain().is_zero(v)) r.terms_.push_back({t.monomial * m, std::move(v)});
    }
    return r;
  }

  Polynomial pow(unsigned n) const {
    Polynomial result = one(ring_);
    Polynomial base = *this;
    while (n) {
      if (n & 1) result = result * base;
      n >>= 1;
      if (n) base = base * base;
    }
    return result;
  }

  bool operator==(const Polynomial& o) const {
    check_same_ring(o);
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (!(terms_[i].monomial == o.terms_[i].monomial) || !domain().equal(terms_[i].coeff, o.terms_[i].coeff))
        return false;
    return true;
  }

  Polynomial derivative(std::size_t var) const {
    std::vector<Term> out;
    for (const Term& t : terms_) {
      Exponent e = t.monomial[var];
      if (!e) continue;
      Monomial::Storage ex = t.monomial.exponents();
      ex[var] -= 1;
      Coeff c = domain().mul(t.coeff, domain().from_integer(mpz_class(e)));
      if (!domain().is_zero(c)) out.push_back({Monomial(std::move(ex)), std::move(c)});
    }
    return Polynomial(ring_, std::move(out));
  }

  // Same coefficients, variables matched by position; extra target variables
  // are absent, dropped variables must not occur.
  Polynomial embed(const RingPtr<D>& target) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const Term& t : terms_) {
      for (std::size_t i = target->nvars(); i < t.monomial.size(); ++i)
        if (t.monomial[i]) throw DomainMismatch("cannot drop a variable that occurs in the polynomial");
      out.push_back({t.monomial.resized(target->nvars()), t.coeff});
    }
    return Polynomial(target, std::move(out));
  }

  template <CoefficientDomain D2, class F>
  Polynomial<D2> map_coefficients(const RingPtr<D2>& target, F&& f) const {
    if (target->nvars() != ring_->nvars()) throw DomainMismatch("coefficient map needs the same variables");
    std::vector<typename Polynomial<D2>::Term> out;
    out.reserve(terms_.size());
    for (const Term& t : terms_) out.push_back({t.monomial, f(t.coeff)});
    return Polynomial<D2>(target, std::move(out));
  }

  // f(images[0], ..., images[n-1]) in the images' ring
  Polynomial substitute(const std::vector<Polynomial>& images) const {
    if (images.size() != ring_->nvars()) throw DomainMismatch("substitution needs one image per variable");
    RingPtr<D> target = images.empty() ? ring_ : images[0].ring();
    Polynomial result(target);
    std::vector<std::vector<Polynomial>> powers(images.size());
    auto power = [&](std::size_t i, Exponent e) -> const Polynomial& {
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(one(target));
      while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
      return cache[e];
    };
    for (const Term& t : terms_) {
      Polynomial acc = constant(target, t.coeff);
      for (std::size_t i = 0; i < images.size() && !acc.is_zero(); ++i)
        if (t.monomial[i]) acc = acc * power(i, t.monomial[i]);
      result += acc;
    }
    return result;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const Term& t : terms_) {
      std::string c = domain().to_string(t.coeff);
      bool negative = !c.empty() && c[0] == '-';
      if (negative) c.erase(0, 1);
      if (first)
        out += negative ? "-" : "";
      else
        out += negative ? " - " : " + ";
      first = false;
      if (t.monomial.is_one()) {
        out += c;
      } else {
        if (c != "1") out += c + "*";
        out += ring_->monomial_string(t.monomial);
      }
    }
    return out;
  }

 private:
  void normalize() {
    const PolyRing<D>& R = *ring_;
    std::sort(terms_.begin(), terms_.end(),
              [&](const Term& a, const Term& b) { return R.compare(a.monomial, b.monomial) > 0; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (Term& t : terms_) {
      if (!out.empty() && out.back().monomial == t.monomial)
        out.back().coeff = R.domain().add(out.back().coeff, t.coeff);
      else
        out.push_back(std::move(t));
      if (!out.empty() && R.domain().is_zero(out.back().coeff)) out.pop_back();
    }
    terms_ = std::move(out);
  }

  Polynomial merge(const Polynomial& o, bool subtract) const {
    const D& d = domain();
    Polynomial r(ring_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      int c;
      if (i == terms_.size())
        c = -1;
      else if (j == o.terms_.size())
        c = 1;
      else
        c = ring_->compare(terms_[i].monomial, o.terms_[j].monomial);
      if (c > 0) {
        r.terms_.push_back(terms_[i++]);
      } else if (c < 0) {
        const Term& t = o.terms_[j++];
        r.terms_.push_back({t.monomial, subtract ? d.neg(t.coeff) : t.coeff});
      } else {
        Coeff v = subtract ? d.sub(terms_[i].coeff, o.terms_[j].coeff) : d.add(terms_[i].coeff, o.terms_[j].coeff);
        if (!d.is_zero(v)) r.terms_.push_back({terms_[i].monomial, std::move(v)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  RingPtr<D> ring_;
  std::vector<Term> terms_;
};

template <CoefficientDomain D>
Polynomial<D> operator*(const typename D::value_type& c, const Polynomial<D>& f) {
  return f.scaled(c);
}

template <CoefficientDomain D>
std::ostream& operator<<(std::ostream& os, const Polynomial<D>& f) {
  return os << f.to_string();
}

template <CoefficientDomain D>
std::vector<Polynomial<D>> embed_all(const std::vector<Polynomial<D>>& fs, const RingPtr<D>& target) {
  std::vector<Polynomial<D>> out;
  out.reserve(fs.size());
  for (const auto& f : fs) out.push_back(f.embed(target));
  return out;
}

template <CoefficientDomain D>
std::string join_polynomials(const std::vector<Polynomial<D>>& fs) {
  std::string s;
  for (std::size_t i = 0; i < fs.size(); ++i) s += (i ? ", " : "") + fs[i].to_string();
  return s;
}

}  // namespace charbert
