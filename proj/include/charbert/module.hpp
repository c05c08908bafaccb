#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ideal_ops.hpp"
#include "syzygy.hpp"

namespace charbert {

// ⊕ R/I_i; the empty list is the zero module
template <CoefficientDomain D>
struct CyclicSum {
  std::vector<Ideal<D>> ideals;
};

// R^generators / (columns): each column is one relation, rows index generators
template <CoefficientDomain D>
struct Presented {
  std::size_t generators = 0;
  std::vector<Vector<D>> columns;
};

template <CoefficientDomain D>
class ModuleRep {
 public:
  using Poly = Polynomial<D>;
  using Rep = std::variant<CyclicSum<D>, Presented<D>>;

  static ModuleRep cyclic(PresentedRingPtr<D> R, std::vector<Ideal<D>> ideals) {
    for (const auto& I : ideals)
      if (I.ring() != R && !I.ring()->ambient()->same_as(*R->ambient()))
        throw DomainMismatch("summand over a different ring");
    return ModuleRep(std::move(R), CyclicSum<D>{std::move(ideals)});
  }
  static ModuleRep cyclic(Ideal<D> I) {
    auto R = I.ring();
    return cyclic(std::move(R), {std::move(I)});
  }
  static ModuleRep presented(PresentedRingPtr<D> R, std::size_t generators, std::vector<Vector<D>> columns) {
    for (const auto& c : columns) {
      if (c.size() != generators) throw DomainMismatch("relation column length differs from the generator count");
      for (const auto& e : c)
        if (!e.ring()->same_as(*R->ambient())) throw DomainMismatch("relation entry outside the ambient ring");
    }
    return ModuleRep(std::move(R), Presented<D>{generators, std::move(columns)});
  }
  static ModuleRep zero(PresentedRingPtr<D> R) { return cyclic(std::move(R), {}); }

  const PresentedRingPtr<D>& ring() const { return ring_; }
  const Rep& rep() const { return rep_; }
  bool is_cyclic_sum() const { return std::holds_alternative<CyclicSum<D>>(rep_); }
  const CyclicSum<D>& cyclic_sum() const { return std::get<CyclicSum<D>>(rep_); }
  const Presented<D>& presentation() const { return std::get<Presented<D>>(rep_); }

  // the same module as a presentation; CyclicSum gives a diagonal block per summand
  Presented<D> as_presented() const {
    if (!is_cyclic_sum()) return presentation();
    const auto& ideals = cyclic_sum().ideals;
    Presented<D> out{ideals.size(), {}};
    for (std::size_t i = 0; i < ideals.size(); ++i)
      for (const auto& g : ideals[i].generators()) {
        Vector<D> col(ideals.size(), ring_->zero());
        col[i] = g;
        out.columns.push_back(std::move(col));
      }
    return out;
  }

  std::string to_string() const {
    if (is_cyclic_sum()) {
      const auto& ideals = cyclic_sum().ideals;
      if (ideals.empty()) return "0";
      std::string s;
      for (std::size_t i = 0; i < ideals.size(); ++i) s += (i ? " + " : "") + std::string("R/") + ideals[i].to_string();
      return s;
    }
    const auto& p = presentation();
    std::string s = "coker[" + std::to_string(p.generators) + " x " + std::to_string(p.columns.size()) + "]";
    for (const auto& c : p.columns) {
      s += " (";
      for (std::size_t i = 0; i < c.size(); ++i) s += (i ? ", " : "") + c[i].to_string();
      s += ")";
    }
    return s;
  }

 private:
  ModuleRep(PresentedRingPtr<D> R, Rep rep) : ring_(std::move(R)), rep_(std::move(rep)) {}

  PresentedRingPtr<D> ring_;
  Rep rep_;
};

template <CoefficientDomain D>
struct DivisorData {
  std::vector<std::pair<Ideal<D>, unsigned>> entries;
};

namespace detail {

// Laplace expansion along the first remaining row
template <CoefficientDomain D>
Polynomial<D> determinant(const std::vector<const Vector<D>*>& cols, std::size_t row, std::vector<bool>& used,
                          const RingPtr<D>& R) {
  if (row == cols.size()) return Polynomial<D>::one(R);
  Polynomial<D> out(R);
  bool negative = false;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (used[j]) continue;
    const auto& entry = (*cols[j])[row];
    if (!entry.is_zero()) {
      used[j] = true;
      Polynomial<D> minor = determinant(cols, row + 1, used, R);
      used[j] = false;
      if (!minor.is_zero()) {
        Polynomial<D> t = entry * minor;
        if (negative) out -= t;
        else out += t;
      }
    }
    negative = !negative;
  }
  return out;
}

template <CoefficientDomain D>
void maximal_minors(const PresentedRing<D>& R, const Presented<D>& P, std::size_t start,
                    std::vector<const Vector<D>*>& chosen, std::vector<Polynomial<D>>& out) {
  if (chosen.size() == P.generators) {
    std::vector<bool> used(chosen.size(), false);
    auto d = R.normal_form(determinant(chosen, 0, used, R.ambient()));
    if (!d.is_zero()) out.push_back(std::move(d));
    return;
  }
  std::size_t need = P.generators - chosen.size();
  for (std::size_t j = start; j + need <= P.columns.size(); ++j) {
    chosen.push_back(&P.columns[j]);
    maximal_minors(R, P, j + 1, chosen, out);
    chosen.pop_back();
  }
}

}  // namespace detail

// Zeroth Fitting ideal.
template <CoefficientDomain D>
Ideal<D> fitting_ideal(const ModuleRep<D>& M) {
  const auto& R = M.ring();
  if (M.is_cyclic_sum()) {
    Ideal<D> out = Ideal<D>::unit(R);
    for (const auto& I : M.cyclic_sum().ideals) out = out * Ideal<D>(R, I.generators());
    return out;
  }
  const auto& P = M.presentation();
  if (P.generators == 0) return Ideal<D>::unit(R);
  std::vector<Polynomial<D>> minors;
  std::vector<const Vector<D>*> chosen;
  detail::maximal_minors(*R, P, 0, chosen, minors);
  return Ideal<D>(R, std::move(minors));
}

template <CoefficientDomain D>
Ideal<D> annihilator(const ModuleRep<D>& M) {
  if (!M.is_cyclic_sum()) throw UnsupportedRepresentation("annihilator needs a cyclic-sum module");
  Ideal<D> out = Ideal<D>::unit(M.ring());
  for (const auto& I : M.cyclic_sum().ideals) out = intersect(out, Ideal<D>(M.ring(), I.generators()));
  return out;
}

// M/xM
template <CoefficientDomain D>
ModuleRep<D> quotient_mod_element(const ModuleRep<D>& M, const Polynomial<D>& x) {
  if (M.is_cyclic_sum()) {
    std::vector<Ideal<D>> out;
    for (const auto& I : M.cyclic_sum().ideals) out.push_back(Ideal<D>(M.ring(), I.generators()).with(x));
    return ModuleRep<D>::cyclic(M.ring(), std::move(out));
  }
  Presented<D> P = M.presentation();
  for (std::size_t i = 0; i < P.generators; ++i) {
    Vector<D> col(P.generators, M.ring()->zero());
    col[i] = x;
    P.columns.push_back(std::move(col));
  }
  return ModuleRep<D>::presented(M.ring(), P.generators, std::move(P.columns));
}

template <CoefficientDomain D>
ModuleRep<D> direct_sum(const ModuleRep<D>& L, const ModuleRep<D>& N) {
  if (L.is_cyclic_sum() && N.is_cyclic_sum()) {
    auto ideals = L.cyclic_sum().ideals;
    for (const auto& I : N.cyclic_sum().ideals) ideals.push_back(I);
    return ModuleRep<D>::cyclic(L.ring(), std::move(ideals));
  }
  Presented<D> a = L.as_presented(), b = N.as_presented();
  std::size_t m = a.generators + b.generators;
  std::vector<Vector<D>> cols;
  for (const auto& c : a.columns) {
    Vector<D> v = c;
    v.resize(m, L.ring()->zero());
    cols.push_back(std::move(v));
  }
  for (const auto& c : b.columns) {
    Vector<D> v(a.generators, L.ring()->zero());
    v.insert(v.end(), c.begin(), c.end());
    cols.push_back(std::move(v));
  }
  return ModuleRep<D>::presented(L.ring(), m, std::move(cols));
}

namespace detail {

// K/N for generators k_1..k_s of K ⊇ N in R^rank: relations are the first s
// coordinates of the syzygies of (k_1..k_s, n_1..n_t). Generators already in
// N are dropped.
template <CoefficientDomain D>
Presented<D> subquotient(const PresentedRingPtr<D>& R, std::size_t rank, const std::vector<Vector<D>>& kernel,
                         const std::vector<Vector<D>>& relations) {
  Submodule<D> N(R, rank, relations);
  std::vector<Vector<D>> cols;
  for (const auto& k : kernel)
    if (!N.contains(k)) cols.push_back(k);
  std::size_t s = cols.size();
  Presented<D> out{s, {}};
  if (s == 0) return out;
  cols.insert(cols.end(), relations.begin(), relations.end());
  for (auto& syz : syzygies(*R, rank, cols)) {
    syz.resize(s);
    bool zero = true;
    for (auto& e : syz) {
      e = R->normal_form(e);
      zero = zero && e.is_zero();
    }
    if (!zero) out.columns.push_back(std::move(syz));
  }
  return out;
}

template <CoefficientDomain D>
void append_block(Presented<D>& total, const Presented<D>& block, const PresentedRing<D>& R) {
  std::size_t before = total.generators;
  total.generators += block.generators;
  for (auto& c : total.columns) c.resize(total.generators, R.zero());
  for (const auto& c : block.columns) {
    Vector<D> v(before, R.zero());
    v.insert(v.end(), c.begin(), c.end());
    total.columns.push_back(std::move(v));
  }
}

}  // namespace detail

// M[x], the largest submodule killed by x. The result is a presentation of
// the kernel of multiplication by x, checked to be annihilated by x.
template <CoefficientDomain D>
ModuleRep<D> torsion_kernel(const ModuleRep<D>& M, const Polynomial<D>& x) {
  const auto& R = M.ring();
  Presented<D> out;
  if (M.is_cyclic_sum()) {
    for (const auto& I0 : M.cyclic_sum().ideals) {
      Ideal<D> I(R, I0.generators());
      std::vector<Vector<D>> kernel, relations;
      Ideal<D> C = colon(I, x);
      for (const auto& g : C.generators()) kernel.push_back({g});
      for (const auto& g : I.generators()) relations.push_back({g});
      detail::append_block(out, detail::subquotient(R, 1, kernel, relations), *R);
    }
  } else {
    if constexpr (!D::is_field) {
      throw UnsupportedRepresentation("torsion kernel of a presented module needs field coefficients");
    } else {
      const auto& P = M.presentation();
      out = detail::subquotient(R, P.generators, submodule_colon(*R, P.generators, P.columns, x), P.columns);
    }
  }
  if (out.generators == 0) return ModuleRep<D>::zero(R);
  Submodule<D> N(R, out.generators, out.columns);
  for (std::size_t j = 0; j < out.generators; ++j) {
    Vector<D> v(out.generators, R->zero());
    v[j] = x;
    if (!N.contains(v)) throw InternalConsistency("torsion kernel is not annihilated by " + x.to_string());
  }
  return ModuleRep<D>::presented(R, out.generators, std::move(out.columns));
}

// Supported in codimension >= 2.
template <CoefficientDomain D>
bool is_pseudo_null(const ModuleRep<D>& M) {
  Ideal<D> support = M.is_cyclic_sum() ? annihilator(M) : fitting_ideal(M);
  Codimension c = codimension(support);
  if (!c.value) throw PreconditionError("support codimension is not decidable: " + c.detail);
  return *c.value >= 2;
}

// Length of M_P over the discrete valuation ring R_P, read off the Fitting ideal.
template <CoefficientDomain D>
unsigned length_at(const ModuleRep<D>& M, const Ideal<D>& P, unsigned cap) {
  Ideal<D> F = fitting_ideal(M);
  if (F.is_zero()) throw NonTorsion("module " + M.to_string() + " is not torsion");
  return valuation_at(F, P, cap);
}

template <CoefficientDomain D>
Ideal<D> divisor_ideal(const PresentedRingPtr<D>& R, const DivisorData<D>& d) {
  Ideal<D> out = Ideal<D>::unit(R);
  for (const auto& [P, e] : d.entries) out = out * P.power(e);
  return out;
}

// Height-one primes and lengths of a torsion module. The supplied primes must
// cover its divisorial support: rc(Fitt M) has to equal rc(∏ P^e).
template <CoefficientDomain D>
DivisorData<D> divisor_data(const ModuleRep<D>& M, const std::vector<Ideal<D>>& primes, unsigned cap) {
  for (std::size_t i = 0; i < primes.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (ideal_compare(primes[i], primes[j]) == Comparison::equal)
        throw PreconditionError("prime " + primes[i].to_string() + " is listed twice");
  DivisorData<D> out;
  for (const auto& P : primes)
    if (unsigned e = length_at(M, P, cap)) out.entries.emplace_back(P, e);
  Ideal<D> F = fitting_ideal(M);
  if (!(reflexive_closure(F) == reflexive_closure(divisor_ideal(M.ring(), out))))
    throw MissingPrime("the supplied primes do not cover the divisorial support of " + M.to_string());
  return out;
}

}  // namespace charbert
