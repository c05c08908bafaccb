#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <string>
#include <tuple>

#include "errors.hpp"

namespace charbert {

enum class CoefficientKind { rational, prime_field, integer, residue };

// A coefficient domain is a stateless-or-small policy object: values are
// plain data and every operation goes through the domain, so that F_p and
// Z/p^N can carry their modulus once per ring instead of once per term.
template <class D>
concept CoefficientDomain = requires(const D& d, const typename D::value_type& a,
                                     const mpz_class& z, const mpq_class& q) {
  typename D::value_type;
  { D::kind } -> std::convertible_to<CoefficientKind>;
  { D::is_field } -> std::convertible_to<bool>;
  { d.zero() } -> std::same_as<typename D::value_type>;
  { d.one() } -> std::same_as<typename D::value_type>;
  { d.is_zero(a) } -> std::same_as<bool>;
  { d.is_unit(a) } -> std::same_as<bool>;
  { d.add(a, a) } -> std::same_as<typename D::value_type>;
  { d.sub(a, a) } -> std::same_as<typename D::value_type>;
  { d.mul(a, a) } -> std::same_as<typename D::value_type>;
  { d.neg(a) } -> std::same_as<typename D::value_type>;
  { d.equal(a, a) } -> std::same_as<bool>;
  { d.divides(a, a) } -> std::same_as<bool>;
  { d.exact_div(a, a) } -> std::same_as<typename D::value_type>;
  { d.from_integer(z) } -> std::same_as<typename D::value_type>;
  { d.from_rational(q) } -> std::same_as<typename D::value_type>;
  { d.to_string(a) } -> std::same_as<std::string>;
  { d.name() } -> std::same_as<std::string>;
};

template <class D>
concept FieldDomain = CoefficientDomain<D> && D::is_field;

// ---------------------------------------------------------------------------

struct Rationals {
  using value_type = mpq_class;
  static constexpr CoefficientKind kind = CoefficientKind::rational;
  static constexpr bool is_field = true;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool is_unit(const value_type& a) const { return sgn(a) != 0; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const { return 1 / a; }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }
  bool divides(const value_type& a, const value_type&) const { return sgn(a) != 0; }
  value_type exact_div(const value_type& b, const value_type& a) const { return b / a; }
  value_type from_integer(const mpz_class& z) const { return mpq_class(z); }
  value_type from_rational(const mpq_class& q) const { return q; }
  std::string to_string(const value_type& a) const { return a.get_str(); }
  std::string name() const { return "QQ"; }
  bool operator==(const Rationals&) const = default;
};

// F_p with p < 2^31 so that products of reduced residues fit in 64 bits.
class PrimeField {
 public:
  using value_type = std::uint64_t;
  static constexpr CoefficientKind kind = CoefficientKind::prime_field;
  static constexpr bool is_field = true;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p < 2 || p >= (1ull << 31) || mpz_probab_prime_p(mpz_class(std::to_string(p)).get_mpz_t(), 30) == 0)
      throw InvalidPrime("prime field modulus must be a prime below 2^31, got " + std::to_string(p));
  }

  std::uint64_t modulus() const { return p_; }
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(value_type a) const { return a == 0; }
  bool is_unit(value_type a) const { return a != 0; }
  value_type add(value_type a, value_type b) const {
    value_type s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
  value_type mul(value_type a, value_type b) const { return (a * b) % p_; }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type pow(value_type a, std::uint64_t e) const {
    value_type r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  value_type inv(value_type a) const {
    if (a == 0) throw Error("division by zero in F_" + std::to_string(p_));
    return pow(a, p_ - 2);
  }
  bool equal(value_type a, value_type b) const { return a == b; }
  bool divides(value_type a, value_type) const { return a != 0; }
  value_type exact_div(value_type b, value_type a) const { return mul(b, inv(a)); }
  value_type from_integer(const mpz_class& z) const {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p_);
    return r.get_ui();
  }
  value_type from_rational(const mpq_class& q) const {
    value_type den = from_integer(q.get_den());
    if (den == 0) throw ParseError("rational coefficient has denominator divisible by " + std::to_string(p_));
    return mul(from_integer(q.get_num()), inv(den));
  }
  std::string to_string(value_type a) const { return std::to_string(a); }
  std::string name() const { return "GF(" + std::to_string(p_) + ")"; }
  bool operator==(const PrimeField&) const = default;

 private:
  std::uint64_t p_;
};

struct Integers {
  using value_type = mpz_class;
  static constexpr CoefficientKind kind = CoefficientKind::integer;
  static constexpr bool is_field = false;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool is_unit(const value_type& a) const { return a == 1 || a == -1; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }
  bool divides(const value_type& a, const value_type& b) const {
    if (sgn(a) == 0) return sgn(b) == 0;
    return mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0;
  }
  value_type exact_div(const value_type& b, const value_type& a) const {
    value_type q;
    mpz_divexact(q.get_mpz_t(), b.get_mpz_t(), a.get_mpz_t());
    return q;
  }
  // g = s*a + t*b with g = gcd(a, b) >= 0
  std::tuple<value_type, value_type, value_type> gcdext(const value_type& a, const value_type& b) const {
    value_type g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return {g, s, t};
  }
  value_type lcm(const value_type& a, const value_type& b) const {
    value_type l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
  }
  // unit u with u*a in canonical (positive) form
  value_type normalizer(const value_type& a) const { return sgn(a) < 0 ? -1 : 1; }
  value_type annihilator(const value_type&) const { return 0; }
  value_type from_integer(const mpz_class& z) const { return z; }
  value_type from_rational(const mpq_class& q) const {
    if (q.get_den() != 1) throw ParseError("non-integral coefficient " + q.get_str() + " over ZZ");
    return q.get_num();
  }
  std::string to_string(const value_type& a) const { return a.get_str(); }
  std::string name() const { return "ZZ"; }
  bool operator==(const Integers&) const = default;
};

// Z/p^N, a chain ring: every ideal is (p^v), so lcm/gcd reduce to valuations.
class Residues {
 public:
  using value_type = mpz_class;
  static constexpr CoefficientKind kind = CoefficientKind::residue;
  static constexpr bool is_field = false;

  Residues(const mpz_class& p, unsigned N) : p_(p), N_(N) {
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
      throw InvalidPrime("residue ring needs a prime, got " + p.get_str());
    if (N < 1) throw InvalidPrime("residue ring needs precision N >= 1");
    mpz_pow_ui(mod_.get_mpz_t(), p_.get_mpz_t(), N_);
  }

  const mpz_class& prime() const { return p_; }
  unsigned precision() const { return N_; }
  const mpz_class& modulus() const { return mod_; }

  value_type reduce(const mpz_class& z) const {
    value_type r;
    mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), mod_.get_mpz_t());
    return r;
  }
  value_type zero() const { return 0; }
  value_type one() const { return reduce(1); }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool is_unit(const value_type& a) const { return mpz_divisible_p(a.get_mpz_t(), p_.get_mpz_t()) == 0; }
  value_type add(const value_type& a, const value_type& b) const { return reduce(a + b); }
  value_type sub(const value_type& a, const value_type& b) const { return reduce(a - b); }
  value_type mul(const value_type& a, const value_type& b) const { return reduce(a * b); }
  value_type neg(const value_type& a) const { return reduce(-a); }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }

  // p-adic valuation; N for zero
  unsigned valuation(const value_type& a) const {
    if (sgn(a) == 0) return N_;
    return static_cast<unsigned>(mpz_remove(mpz_class().get_mpz_t(), a.get_mpz_t(), p_.get_mpz_t()));
  }
  value_type inv(const value_type& a) const {
    value_type r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), mod_.get_mpz_t()) == 0)
      throw Error("non-unit " + a.get_str() + " is not invertible mod " + mod_.get_str());
    return r;
  }
  bool divides(const value_type& a, const value_type& b) const { return valuation(a) <= valuation(b); }
  value_type exact_div(const value_type& b, const value_type& a) const {
    unsigned va = valuation(a);
    mpz_class pv;
    mpz_pow_ui(pv.get_mpz_t(), p_.get_mpz_t(), va);
    mpz_class unit_part, scaled;
    mpz_divexact(unit_part.get_mpz_t(), a.get_mpz_t(), pv.get_mpz_t());
    mpz_divexact(scaled.get_mpz_t(), b.get_mpz_t(), pv.get_mpz_t());
    return mul(scaled, inv(unit_part));
  }
  value_type power_of_p(unsigned v) const {
    if (v >= N_) return 0;
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), p_.get_mpz_t(), v);
    return r;
  }
  std::tuple<value_type, value_type, value_type> gcdext(const value_type& a, const value_type& b) const {
    if (valuation(a) <= valuation(b)) {
      value_type u = normalizer(a);
      return {mul(u, a), u, 0};
    }
    value_type u = normalizer(b);
    return {mul(u, b), 0, u};
  }
  value_type lcm(const value_type& a, const value_type& b) const {
    return power_of_p(std::max(valuation(a), valuation(b)));
  }
  // unit u with u*a = p^v(a)
  value_type normalizer(const value_type& a) const {
    if (sgn(a) == 0) return 1;
    return exact_div(power_of_p(valuation(a)), a);
  }
  value_type annihilator(const value_type& a) const { return power_of_p(N_ - valuation(a)); }
  value_type from_integer(const mpz_class& z) const { return reduce(z); }
  value_type from_rational(const mpq_class& q) const {
    mpz_class den = reduce(q.get_den());
    if (!is_unit(den)) throw ParseError("rational coefficient with non-unit denominator mod " + mod_.get_str());
    return mul(reduce(q.get_num()), inv(den));
  }
  std::string to_string(const value_type& a) const { return a.get_str(); }
  std::string name() const { return "ZZ/" + p_.get_str() + "^" + std::to_string(N_); }
  bool operator==(const Residues& o) const { return p_ == o.p_ && N_ == o.N_; }

 private:
  mpz_class p_;
  unsigned N_;
  mpz_class mod_;
};

static_assert(CoefficientDomain<Rationals>);
static_assert(CoefficientDomain<PrimeField>);
static_assert(CoefficientDomain<Integers>);
static_assert(CoefficientDomain<Residues>);

inline unsigned p_adic_valuation(mpz_class a, const mpz_class& p) {
  if (sgn(a) == 0) throw InfiniteValuation("valuation of zero");
  return static_cast<unsigned>(mpz_remove(a.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()));
}

inline bool is_prime(const mpz_class& p) { return p >= 2 && mpz_probab_prime_p(p.get_mpz_t(), 30) != 0; }

}  // namespace charbert
