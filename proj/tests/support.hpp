#pragma once

#include <random>
#include <string>
#include <vector>

#include "charbert/charbert.hpp"

namespace testing_support {

using namespace charbert;

template <CoefficientDomain D>
RingPtr<D> ring(D d, std::vector<std::string> vars) {
  return PolyRing<D>::make(std::move(d), std::move(vars));
}

inline RingPtr<Rationals> qring(std::vector<std::string> vars) { return ring(Rationals{}, std::move(vars)); }
inline RingPtr<Integers> zring(std::vector<std::string> vars) { return ring(Integers{}, std::move(vars)); }

template <CoefficientDomain D>
Polynomial<D> P(const RingPtr<D>& R, const std::string& s) {
  return parse_polynomial(R, s);
}

template <CoefficientDomain D>
std::vector<Polynomial<D>> Ps(const RingPtr<D>& R, const std::vector<std::string>& s) {
  return parse_polynomials(R, s);
}

// Random polynomial with small integer coefficients and bounded degree.
template <CoefficientDomain D>
Polynomial<D> random_poly(std::mt19937_64& rng, const RingPtr<D>& R, int maxdeg, int maxterms, int coeff_range,
                          bool homogeneous = false) {
  std::uniform_int_distribution<int> nterms(1, maxterms);
  std::uniform_int_distribution<int> coeff(-coeff_range, coeff_range);
  std::uniform_int_distribution<int> deg(homogeneous ? maxdeg : 0, maxdeg);
  std::vector<typename Polynomial<D>::Term> terms;
  int n = nterms(rng);
  for (int k = 0; k < n; ++k) {
    int target = deg(rng);
    Monomial::Storage e(R->nvars(), 0);
    for (int j = 0; j < target; ++j) e[std::uniform_int_distribution<std::size_t>(0, R->nvars() - 1)(rng)] += 1;
    int c = coeff(rng);
    if (c == 0) c = 1;
    terms.push_back({Monomial(std::move(e)), R->domain().from_integer(mpz_class(c))});
  }
  return Polynomial<D>(R, std::move(terms));
}

// Q[a,b,c]/(b^2 - ac): the quadric cone, a normal domain
inline PresentedRingPtr<Rationals> cone() {
  RingFlags f;
  f.domain = true;
  f.complete_intersection = true;
  return PresentedRing<Rationals>::parse(qring({"a", "b", "c"}), {"b^2 - a*c"}, f);
}

inline PresentedRingPtr<Rationals> poly_ring(std::vector<std::string> vars) {
  RingFlags f;
  f.domain = true;
  f.complete_intersection = true;
  return PresentedRing<Rationals>::make(qring(std::move(vars)), {}, f);
}

inline PresentedRingPtr<Integers> integer_ring(std::vector<std::string> vars, std::vector<std::string> rel, long p) {
  RingFlags f;
  f.domain = true;
  f.complete_intersection = true;
  Uniformizer u;
  u.prime = mpz_class(p);
  return PresentedRing<Integers>::parse(zring(std::move(vars)), rel, f, u);
}

template <class D>
Ideal<D> I(const PresentedRingPtr<D>& R, std::vector<std::string> g) {
  return Ideal<D>::parse(R, g);
}

}  // namespace testing_support
