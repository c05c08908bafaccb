#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ideal.hpp"
#include "syzygy.hpp"

namespace charbert {

// ---------------------------------------------------------------------------
// Fibers of integer models: R ⊗ Q and R/pR for the distinguished prime p.

namespace detail {

inline RingFlags fiber_flags(const RingFlags& f, std::optional<int> codim, bool keep_domain) {
  RingFlags out;
  out.domain = keep_domain && f.domain;
  out.cohen_macaulay = f.cohen_macaulay || f.complete_intersection;
  out.codimension = codim;
  return out;
}

inline mpz_class require_prime(const PresentedRing<Integers>& R) {
  if (!R.uniformizer().prime) throw PreconditionError("integer model without a distinguished prime");
  return *R.uniformizer().prime;
}

}  // namespace detail

// nullptr when the fiber is empty
inline PresentedRingPtr<Rationals> generic_fiber(const PresentedRing<Integers>& R) {
  return *R.memo<PresentedRingPtr<Rationals>>("generic-fiber", [&]() -> PresentedRingPtr<Rationals> {
    auto Q = same_variables(R.ambient(), Rationals{});
    std::vector<Polynomial<Rationals>> rel;
    for (const auto& r : R.relations()) rel.push_back(to_rationals(r, Q));
    if (reduce(Polynomial<Rationals>::one(Q), groebner(rel)).is_zero()) return nullptr;
    return PresentedRing<Rationals>::make(Q, rel, detail::fiber_flags(R.flags(), R.relation_codimension(), true));
  });
}

inline PresentedRingPtr<PrimeField> special_fiber(const PresentedRing<Integers>& R) {
  return *R.memo<PresentedRingPtr<PrimeField>>("special-fiber", [&]() -> PresentedRingPtr<PrimeField> {
    mpz_class p = detail::require_prime(R);
    auto F = same_variables(R.ambient(), PrimeField(p.get_ui()));
    std::vector<Polynomial<PrimeField>> rel;
    bool p_in_relations = R.is_zero(R.constant(p));
    for (const auto& r : R.relations()) rel.push_back(to_prime_field(r, F));
    if (reduce(Polynomial<PrimeField>::one(F), groebner(rel)).is_zero()) return nullptr;
    std::optional<int> codim = R.relation_codimension();
    if (codim && p_in_relations) *codim -= 1;
    return PresentedRing<PrimeField>::make(F, rel, detail::fiber_flags(R.flags(), codim, false));
  });
}

// Z/p^N models: everything happens over the reduction mod p.
inline PresentedRingPtr<PrimeField> special_fiber(const PresentedRing<Residues>& R) {
  return *R.memo<PresentedRingPtr<PrimeField>>("special-fiber", [&]() -> PresentedRingPtr<PrimeField> {
    auto F = same_variables(R.ambient(), PrimeField(R.domain().prime().get_ui()));
    std::vector<Polynomial<PrimeField>> rel;
    for (const auto& r : R.relations()) rel.push_back(to_prime_field(r, F));
    if (reduce(Polynomial<PrimeField>::one(F), groebner(rel)).is_zero()) return nullptr;
    return PresentedRing<PrimeField>::make(F, rel, detail::fiber_flags(R.flags(), std::nullopt, false));
  });
}

inline Ideal<Rationals> to_generic(const Ideal<Integers>& I, const PresentedRingPtr<Rationals>& Q) {
  std::vector<Polynomial<Rationals>> g;
  for (const auto& f : I.generators()) g.push_back(to_rationals(f, Q->ambient()));
  return Ideal<Rationals>(Q, std::move(g));
}

template <CoefficientDomain D>
Ideal<PrimeField> to_special(const Ideal<D>& I, const PresentedRingPtr<PrimeField>& F) {
  std::vector<Polynomial<PrimeField>> g;
  for (const auto& f : I.generators()) g.push_back(to_prime_field(f, F->ambient()));
  return Ideal<PrimeField>(F, std::move(g));
}

// ---------------------------------------------------------------------------
// Colon, saturation, intersection

// (I : f) via the rank-one module colon
template <CoefficientDomain D>
Ideal<D> colon(const Ideal<D>& I, const Polynomial<D>& f) {
  const auto& R = *I.ring();
  std::vector<Vector<D>> columns;
  for (const auto& g : I.generators()) columns.push_back({g});
  return Ideal<D>(I.ring(), module_colon(R, 1, columns, {f}));
}

template <CoefficientDomain D>
Ideal<D> intersect(const Ideal<D>& I, const Ideal<D>& J);

template <CoefficientDomain D>
Ideal<D> colon(const Ideal<D>& I, const Ideal<D>& J) {
  I.check_same_ring(J);
  std::optional<Ideal<D>> acc;
  for (const auto& g : J.generators()) {
    if (I.contains(g)) continue;
    Ideal<D> c = colon(I, g);
    acc = acc ? intersect(*acc, c) : c;
  }
  return acc ? *acc : Ideal<D>::unit(I.ring());
}

namespace detail {

// adds one variable t, eliminated by a block order
template <CoefficientDomain D>
RingPtr<D> with_eliminated_variable(const RingPtr<D>& base) {
  return base->extended({"t"}, MonomialOrder::elimination(base->nvars()));
}

// Gröbner basis elements not involving the last variable, projected back
template <CoefficientDomain D>
std::vector<Polynomial<D>> eliminate_last(const std::vector<Polynomial<D>>& gens, const RingPtr<D>& base) {
  std::vector<Polynomial<D>> out;
  std::size_t t = base->nvars();
  for (const auto& g : groebner(gens)) {
    bool uses_t = false;
    for (const auto& term : g.terms()) uses_t |= term.monomial[t] != 0;
    if (!uses_t) out.push_back(g.embed(base));
  }
  return out;
}

}  // namespace detail

// I ∩ J as the t-free part of t*I + (1 - t)*J
template <CoefficientDomain D>
Ideal<D> intersect(const Ideal<D>& I, const Ideal<D>& J) {
  I.check_same_ring(J);
  if (I.is_unit()) return J;
  if (J.is_unit()) return I;
  const auto& base = I.ambient();
  auto T = detail::with_eliminated_variable(base);
  auto t = Polynomial<D>::variable(T, base->nvars());
  auto one_minus_t = Polynomial<D>::one(T) - t;
  std::vector<Polynomial<D>> gens;
  for (const auto& r : I.ring()->relations()) gens.push_back(r.embed(T));
  for (const auto& g : I.generators()) gens.push_back(t * g.embed(T));
  for (const auto& g : J.generators()) gens.push_back(one_minus_t * g.embed(T));
  return Ideal<D>(I.ring(), detail::eliminate_last(gens, base));
}

// (I : f^∞) as the t-free part of I + (1 - t f)
template <CoefficientDomain D>
Ideal<D> saturate(const Ideal<D>& I, const Polynomial<D>& f) {
  if (I.ring()->is_zero(f)) throw PreconditionError("saturation by zero");
  const auto& base = I.ambient();
  auto T = detail::with_eliminated_variable(base);
  auto t = Polynomial<D>::variable(T, base->nvars());
  std::vector<Polynomial<D>> gens;
  for (const auto& r : I.ring()->relations()) gens.push_back(r.embed(T));
  for (const auto& g : I.generators()) gens.push_back(g.embed(T));
  gens.push_back(Polynomial<D>::one(T) - t * f.embed(T));
  return Ideal<D>(I.ring(), detail::eliminate_last(gens, base));
}

// f in the radical of I: 1 in I + (1 - t f)
template <CoefficientDomain D>
bool radical_contains(const Ideal<D>& I, const Polynomial<D>& f) {
  const auto& base = I.ambient();
  auto T = detail::with_eliminated_variable(base);
  auto t = Polynomial<D>::variable(T, base->nvars());
  std::vector<Polynomial<D>> gens;
  for (const auto& r : I.ring()->relations()) gens.push_back(r.embed(T));
  for (const auto& g : I.generators()) gens.push_back(g.embed(T));
  gens.push_back(Polynomial<D>::one(T) - t * f.embed(T));
  return reduce(Polynomial<D>::one(T), groebner(gens)).is_zero();
}

// J ⊆ rad(I)
template <CoefficientDomain D>
bool radical_contains(const Ideal<D>& I, const Ideal<D>& J) {
  for (const auto& g : J.generators())
    if (!radical_contains(I, g)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Dimension

struct FiberDimension {
  int generic;  // dimension over Q, kEmptyDimension when the fiber is empty
  int special;  // dimension over F_p of the reduction mod p
};

// Krull dimension of R/I. Integer models report both fibers.
template <CoefficientDomain D>
auto dimension(const Ideal<D>& I) {
  if constexpr (D::is_field) {
    return krull_dimension(I.groebner_basis(), I.ring()->nvars());
  } else if constexpr (D::kind == CoefficientKind::integer) {
    FiberDimension out{kEmptyDimension, kEmptyDimension};
    if (auto Q = generic_fiber(*I.ring())) out.generic = dimension(to_generic(I, Q));
    if (auto F = special_fiber(*I.ring())) out.special = dimension(to_special(I, F));
    return out;
  } else {
    auto F = special_fiber(*I.ring());
    return F ? dimension(to_special(I, F)) : kEmptyDimension;
  }
}

template <CoefficientDomain D>
auto ring_dimension(const PresentedRingPtr<D>& R) {
  return dimension(Ideal<D>::zero(R));
}

enum class PrimeStatus { nonzerodivisor, zero, zero_divisor };

// how the distinguished prime acts on an integer model
inline PrimeStatus prime_status(const PresentedRingPtr<Integers>& R) {
  return *R->memo<PrimeStatus>("prime-status", [&] {
    auto p = R->constant(detail::require_prime(*R));
    if (R->is_zero(p)) return PrimeStatus::zero;
    auto zero = Ideal<Integers>::zero(R);
    return colon(zero, p).is_zero() ? PrimeStatus::nonzerodivisor : PrimeStatus::zero_divisor;
  });
}

struct Codimension {
  std::optional<int> value;  // nullopt: not decidable in this model
  std::string detail;
};

// Codimension of V(I) in Spec R. Over an integer model a component either
// meets the generic fiber or lies over p; the bound min(codim over Q,
// 1 + codim mod p) holds when p is a nonzerodivisor on R, and is exact for
// the components the model sees.
template <CoefficientDomain D>
Codimension codimension(const Ideal<D>& I) {
  if constexpr (D::is_field) {
    int dR = ring_dimension(I.ring());
    int dI = dimension(I);
    int c = codimension_between(dR, dI);
    return {c, "dim R = " + dimension_string(dR) + ", dim R/I = " + dimension_string(dI)};
  } else if constexpr (D::kind == CoefficientKind::integer) {
    FiberDimension dR = ring_dimension(I.ring());
    FiberDimension dI = dimension(I);
    int cq = dR.generic == kEmptyDimension ? kInfiniteCodimension : codimension_between(dR.generic, dI.generic);
    int cp = dR.special == kEmptyDimension ? kInfiniteCodimension : codimension_between(dR.special, dI.special);
    std::string detail = "codim over Q = " + codimension_string(cq) + ", codim mod p = " + codimension_string(cp);
    switch (prime_status(I.ring())) {
      case PrimeStatus::zero:
        return {cp, detail + " (p = 0 in R)"};
      case PrimeStatus::zero_divisor:
        return {std::nullopt, detail + " (p is a zero divisor on R)"};
      case PrimeStatus::nonzerodivisor: {
        int special_bound = cp >= kInfiniteCodimension ? kInfiniteCodimension : cp + 1;
        return {std::min(cq, special_bound), detail};
      }
    }
    return {std::nullopt, detail};
  } else {
    auto F = special_fiber(*I.ring());
    if (!F) return {kInfiniteCodimension, "empty ring"};
    return codimension(to_special(I, F));
  }
}

// ---------------------------------------------------------------------------
// Symbolic powers

template <CoefficientDomain D>
void require_proper_prime(const Ideal<D>& P) {
  if (P.is_unit()) throw InvalidPrime("the unit ideal is not prime");
}

// f in P^(n) iff (P^n : f) is not contained in P
template <CoefficientDomain D>
bool symbolic_power_contains(const Polynomial<D>& f, const Ideal<D>& P, unsigned n) {
  require_proper_prime(P);
  if (n == 0) return true;
  Ideal<D> Pn = P.power(n);
  if (Pn.contains(f)) return true;
  Ideal<D> q = colon(Pn, f);
  for (const auto& g : q.generators())
    if (!P.contains(g)) return true;
  return false;
}

// P^(n) = (P^n : w^∞) for a witness w outside P lying in every embedded
// prime of P^n; each generator of the result is re-checked by membership.
template <CoefficientDomain D>
Ideal<D> symbolic_power(const Ideal<D>& P, unsigned n, const Polynomial<D>& witness) {
  require_proper_prime(P);
  if (P.contains(witness)) throw InvalidWitness("witness " + witness.to_string() + " lies in the prime");
  Ideal<D> S = saturate(P.power(n), witness).simplified();
  for (const auto& g : S.generators())
    if (!symbolic_power_contains(g, P, n))
      throw WitnessInsufficient("saturation by " + witness.to_string() + " produced " + g.to_string() +
                                ", which is not in the symbolic power");
  return S;
}

// ---------------------------------------------------------------------------
// Reflexive closure and valuations

template <CoefficientDomain D>
Polynomial<D> pick_nonzero_element(const Ideal<D>& I) {
  const Polynomial<D>* best = nullptr;
  for (const auto& g : I.generators()) {
    if (I.ring()->is_zero(g)) continue;
    if (!best || g.total_degree() < best->total_degree() ||
        (g.total_degree() == best->total_degree() && g.size() < best->size()))
      best = &g;
  }
  if (!best) throw ZeroIdeal("ideal is zero");
  return *best;
}

// I^rc = (R : (R : I)). For any nonzero f in I one has (fR : I) = f (R : I),
// so the double dual is (fR : (fR : I)) and stays inside R.
template <CoefficientDomain D>
Ideal<D> reflexive_closure(const Ideal<D>& I) {
  if (!I.ring()->flags().domain) throw PreconditionError("reflexive closure needs a ring asserted to be a domain");
  Polynomial<D> f = pick_nonzero_element(I);
  Ideal<D> fR = Ideal<D>::principal(I.ring(), f);
  Ideal<D> J = colon(fR, I);
  Ideal<D> closure = colon(fR, J).simplified();
  if (!closure.contains(I)) throw InternalConsistency("reflexive closure does not contain the ideal");
  return closure;
}

// v_P(f): the largest n <= cap with f in P^(n)
template <CoefficientDomain D>
unsigned valuation_at(const Polynomial<D>& f, const Ideal<D>& P, unsigned cap) {
  if (P.ring()->is_zero(f)) throw InfiniteValuation("valuation of zero");
  require_proper_prime(P);
  for (unsigned n = 1; n <= cap + 1; ++n)
    if (!symbolic_power_contains(f, P, n)) return n - 1;
  throw CapExceeded("valuation of " + f.to_string() + " at " + P.to_string() + " exceeds cap " + std::to_string(cap));
}

// v_P(I) = min over nonzero generators
template <CoefficientDomain D>
unsigned valuation_at(const Ideal<D>& I, const Ideal<D>& P, unsigned cap) {
  std::optional<unsigned> best;
  for (const auto& g : I.generators()) {
    if (I.ring()->is_zero(g)) continue;
    unsigned v = valuation_at(g, P, cap);
    best = best ? std::min(*best, v) : v;
    if (*best == 0) break;
  }
  if (!best) throw ZeroIdeal("valuation of the zero ideal");
  return *best;
}

// ---------------------------------------------------------------------------
// Comparison

enum class Comparison { equal, subset, superset, incomparable };

inline std::string to_string(Comparison c) {
  switch (c) {
    case Comparison::equal: return "equal";
    case Comparison::subset: return "subset";
    case Comparison::superset: return "superset";
    case Comparison::incomparable: return "incomparable";
  }
  return "?";
}

template <CoefficientDomain D>
Comparison ideal_compare(const Ideal<D>& I, const Ideal<D>& J) {
  bool sub = J.contains(I);
  bool sup = I.contains(J);
  if (sub && sup) return Comparison::equal;
  if (sub) return Comparison::subset;
  if (sup) return Comparison::superset;
  return Comparison::incomparable;
}

// For reflexive I, J and a list of height-one primes covering every prime at
// which either has positive valuation: I ⊆ J iff v_P(I) >= v_P(J) for all P.
// The membership answer is checked against that criterion.
template <CoefficientDomain D>
Comparison ideal_compare(const Ideal<D>& I, const Ideal<D>& J, const std::vector<Ideal<D>>& cover, unsigned cap) {
  Comparison c = ideal_compare(I, J);
  if (I.is_zero() || J.is_zero()) return c;
  bool val_sub = true, val_sup = true;
  for (const auto& P : cover) {
    unsigned vi = valuation_at(I, P, cap);
    unsigned vj = valuation_at(J, P, cap);
    val_sub &= vi >= vj;
    val_sup &= vj >= vi;
  }
  bool sub = c == Comparison::equal || c == Comparison::subset;
  bool sup = c == Comparison::equal || c == Comparison::superset;
  if (sub != val_sub || sup != val_sup)
    throw InternalConsistency("membership comparison of " + I.to_string() + " and " + J.to_string() +
                              " disagrees with valuations at the supplied primes");
  return c;
}

}  // namespace charbert
