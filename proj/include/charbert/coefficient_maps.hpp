#pragma once

#include "polynomial.hpp"

namespace charbert {

// Rings and polynomial maps between coefficient domains sharing variables.

template <CoefficientDomain D2, CoefficientDomain D>
RingPtr<D2> same_variables(const RingPtr<D>& R, D2 domain) {
  return PolyRing<D2>::make(std::move(domain), R->variables(), R->order());
}

inline Polynomial<Rationals> to_rationals(const Polynomial<Integers>& f, const RingPtr<Rationals>& Q) {
  return f.map_coefficients(Q, [](const mpz_class& c) { return mpq_class(c); });
}

template <CoefficientDomain D>
Polynomial<PrimeField> to_prime_field(const Polynomial<D>& f, const RingPtr<PrimeField>& F) {
  const PrimeField& k = F->domain();
  if constexpr (D::kind == CoefficientKind::rational)
    return f.map_coefficients(F, [&](const mpq_class& c) { return k.from_rational(c); });
  else
    return f.map_coefficients(F, [&](const auto& c) { return k.from_integer(mpz_class(c)); });
}

inline Polynomial<Residues> to_residues(const Polynomial<Integers>& f, const RingPtr<Residues>& Z) {
  const Residues& r = Z->domain();
  return f.map_coefficients(Z, [&](const mpz_class& c) { return r.from_integer(c); });
}

// Integer lift of residues: coefficients as representatives in [0, p^N).
inline Polynomial<Integers> lift_to_integers(const Polynomial<Residues>& f, const RingPtr<Integers>& Z) {
  return f.map_coefficients(Z, [](const mpz_class& c) { return c; });
}

inline Polynomial<Integers> lift_to_integers(const Polynomial<PrimeField>& f, const RingPtr<Integers>& Z) {
  return f.map_coefficients(Z, [](std::uint64_t c) { return mpz_class(std::to_string(c)); });
}

// Clears denominators: a primitive integer polynomial with the same zero set.
inline Polynomial<Integers> clear_denominators(const Polynomial<Rationals>& f, const RingPtr<Integers>& Z) {
  mpz_class l = 1, g = 0;
  for (const auto& t : f.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
  auto out = f.map_coefficients(Z, [&](const mpq_class& c) { return mpz_class(c * l); });
  for (const auto& t : out.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
  if (g > 1) out = out.map_coefficients(Z, [&](const mpz_class& c) { return mpz_class(c / g); });
  return out;
}

template <CoefficientDomain D2, CoefficientDomain D, class F>
std::vector<Polynomial<D2>> map_all(const std::vector<Polynomial<D>>& fs, F&& f) {
  std::vector<Polynomial<D2>> out;
  out.reserve(fs.size());
  for (const auto& p : fs) out.push_back(f(p));
  return out;
}

}  // namespace charbert
