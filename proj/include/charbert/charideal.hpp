#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bertini.hpp"
#include "module.hpp"
#include "parallel.hpp"

namespace charbert {

template <CoefficientDomain D>
struct CharResult {
  Ideal<D> ideal;                        // zero for non-torsion modules
  std::optional<DivisorData<D>> divisors;
  std::string provenance;                // "via-fitting-rc" or "via-divisor-data"
};

// the ideal with the same generators in another presentation of the ambient ring
template <CoefficientDomain D>
Ideal<D> extend_ideal(const Ideal<D>& I, const PresentedRingPtr<D>& S) {
  return Ideal<D>(S, I.generators());
}

template <CoefficientDomain D>
ModuleRep<D> extend_module(const ModuleRep<D>& M, const PresentedRingPtr<D>& S) {
  if (M.is_cyclic_sum()) {
    std::vector<Ideal<D>> out;
    for (const auto& I : M.cyclic_sum().ideals) out.push_back(extend_ideal(I, S));
    return ModuleRep<D>::cyclic(S, std::move(out));
  }
  return ModuleRep<D>::presented(S, M.presentation().generators, M.presentation().columns);
}

// rc of a possibly zero ideal; the zero ideal is its own closure
template <CoefficientDomain D>
Ideal<D> closure_or_zero(const Ideal<D>& I) {
  return I.is_zero() ? I : reflexive_closure(I);
}

// char(M) = Fitt(M)^rc. With a cover, the divisor-data route (∏ P^e)^rc is
// computed too and must agree.
template <CoefficientDomain D>
CharResult<D> char_ideal(const ModuleRep<D>& M, const std::vector<Ideal<D>>* cover = nullptr, unsigned cap = 32) {
  Ideal<D> F = fitting_ideal(M);
  if (F.is_zero()) return {F, std::nullopt, "via-fitting-rc"};
  Ideal<D> c = reflexive_closure(F);
  if (!cover) return {c, std::nullopt, "via-fitting-rc"};
  DivisorData<D> d = divisor_data(M, *cover, cap);
  Ideal<D> via = reflexive_closure(divisor_ideal(M.ring(), d));
  if (!(via == c))
    throw InternalConsistency("characteristic ideal of " + M.to_string() + " differs between Fitting and divisor routes");
  return {c, std::move(d), "via-divisor-data"};
}

template <CoefficientDomain D>
CharResult<D> char_ideal(const ModuleRep<D>& M, const std::vector<Ideal<D>>& cover, unsigned cap = 32) {
  return char_ideal(M, &cover, cap);
}

// R/(x) with the caller's structure assertions carried over; the quotient of
// a normal local ring by a good section is again a normal domain.
template <CoefficientDomain D>
PresentedRingPtr<D> section_ring(const PresentedRingPtr<D>& R, const Polynomial<D>& x) {
  RingFlags f;
  f.domain = true;
  f.complete_intersection = R->flags().complete_intersection;
  f.cohen_macaulay = R->flags().cohen_macaulay || R->flags().complete_intersection;
  if (auto c = R->relation_codimension()) f.codimension = *c + 1;
  return R->quotient({x}, f);
}

// char over R/(x) of M/xM, computed from its Fitting ideal
template <CoefficientDomain D>
Ideal<D> direct_specialized_char(const ModuleRep<D>& M, const Polynomial<D>& x,
                                 const PresentedRingPtr<D>& Rx) {
  return closure_or_zero(fitting_ideal(extend_module(quotient_mod_element(M, x), Rx)));
}

template <CoefficientDomain D>
Ideal<D> direct_specialized_char(const ModuleRep<D>& M, const Polynomial<D>& x) {
  return direct_specialized_char(M, x, section_ring(M.ring(), x));
}

namespace detail {

// primes of the cover at which M has positive length
template <CoefficientDomain D>
std::vector<std::pair<Ideal<D>, unsigned>> supported_primes(const ModuleRep<D>& M, const std::vector<Ideal<D>>& cover,
                                                            unsigned cap) {
  std::vector<std::pair<Ideal<D>, unsigned>> out;
  for (const auto& P : cover)
    if (unsigned e = length_at(M, P, cap)) out.emplace_back(P, e);
  return out;
}

template <CoefficientDomain D>
void require_section_conditions(const ModuleRep<D>& M, const Polynomial<D>& x,
                                const std::vector<std::pair<Ideal<D>, unsigned>>& support,
                                const PresentedRingPtr<D>& Rx) {
  for (const auto& [P, e] : support)
    if (P.contains(x))
      throw ConditionViolation(x.to_string() + " lies in the height-one prime " + P.to_string() +
                               " of the support of " + M.to_string());
  if (is_normal(Rx).verdict() == Verdict::fail)
    throw ConditionViolation("R/(" + x.to_string() + ") is not normal");
}

}  // namespace detail

// (char_{R/x}(M[x]) · ∏ (P R/x)^{ℓ_P(M)})^rc over R/(x); x must avoid every
// cover prime in the support and R/(x) must be normal.
template <CoefficientDomain D>
Ideal<D> specialize_char(const ModuleRep<D>& M, const Polynomial<D>& x, const std::vector<Ideal<D>>& cover,
                         unsigned cap = 32) {
  auto support = detail::supported_primes(M, cover, cap);
  auto Rx = section_ring(M.ring(), x);
  detail::require_section_conditions(M, x, support, Rx);
  Ideal<D> product = closure_or_zero(fitting_ideal(extend_module(torsion_kernel(M, x), Rx)));
  for (const auto& [P, e] : support) product = product * extend_ideal(P, Rx).power(e);
  return closure_or_zero(product);
}

template <CoefficientDomain D>
struct ControlComparison {
  bool equal;
  Ideal<D> direct;     // char of M/xM over R/(x)
  Ideal<D> predicted;  // specialize_char
};

template <CoefficientDomain D>
ControlComparison<D> check_control_formula(const ModuleRep<D>& M, const Polynomial<D>& x,
                                           const std::vector<Ideal<D>>& cover, unsigned cap = 32) {
  Ideal<D> predicted = specialize_char(M, x, cover, cap);
  Ideal<D> direct = direct_specialized_char(M, x);
  return {direct == predicted, direct, predicted};
}

template <CoefficientDomain D>
struct LSetResult {
  bool member = false;
  bool torsion = false;  // condition (A)
  bool equalities = false;  // condition (B)
  std::vector<std::string> reasons;
};

// The cyclic sum standing for M in the equalities: M itself when given as
// one, else ⊕ R/P^e from the cover's divisor data.
template <CoefficientDomain D>
ModuleRep<D> fundamental_sum(const ModuleRep<D>& M, const std::vector<Ideal<D>>& cover, unsigned cap) {
  if (M.is_cyclic_sum()) return M;
  std::vector<Ideal<D>> parts;
  DivisorData<D> d = divisor_data(M, cover, cap);
  for (const auto& [P, e] : d.entries) parts.push_back(P.power(e));
  return ModuleRep<D>::cyclic(M.ring(), std::move(parts));
}

// (A) M/xM is torsion over R/(x): its Fitting ideal is nonzero.
// (B) char_{R/x}(M/xM) = (char(M) R/x)^rc = (Fitt(fundamental sum) R/x)^rc.
template <CoefficientDomain D>
LSetResult<D> l_set_member(const ModuleRep<D>& M, const Polynomial<D>& x, const std::vector<Ideal<D>>& cover,
                           unsigned cap = 32) {
  LSetResult<D> out;
  auto Rx = section_ring(M.ring(), x);
  if (is_normal(Rx).verdict() == Verdict::fail) out.reasons.push_back("R/(x) is not normal");
  Ideal<D> Fx = fitting_ideal(extend_module(quotient_mod_element(M, x), Rx));
  out.torsion = !Fx.is_zero();
  if (!out.torsion) {
    out.reasons.push_back("(A) fails: M/xM is not torsion over R/(x)");
    return out;
  }
  Ideal<D> direct = reflexive_closure(Fx);
  Ideal<D> global = char_ideal(M).ideal;
  Ideal<D> extended = closure_or_zero(extend_ideal(global, Rx));
  Ideal<D> fundamental = closure_or_zero(extend_ideal(fitting_ideal(fundamental_sum(M, cover, cap)), Rx));
  bool a = direct == extended, b = extended == fundamental;
  out.equalities = a && b;
  if (!a)
    out.reasons.push_back("(B) fails: char(M/xM) = " + direct.to_string() + " but (char(M) R/x)^rc = " +
                          extended.to_string());
  if (!b)
    out.reasons.push_back("(B) fails: (char(M) R/x)^rc = " + extended.to_string() +
                          " but the fundamental sum gives " + fundamental.to_string());
  out.member = out.torsion && out.equalities && out.reasons.empty();
  return out;
}

// With I = Fitt(M) and J = (I : I^rc) the annihilator of I^rc/I: true iff
// codim(J + (x)) >= 3, so x meets no height-two prime of the bad locus.
template <CoefficientDomain D>
bool bad_locus_guard(const ModuleRep<D>& M, const Polynomial<D>& x) {
  Ideal<D> I = fitting_ideal(M);
  if (I.is_zero()) throw NonTorsion("module " + M.to_string() + " is not torsion");
  Ideal<D> J = colon(I, reflexive_closure(I));
  Codimension c = codimension(J.with(x));
  return c.value && *c.value >= 3;
}

enum class ControlVerdict { consistent, inconsistent, inconclusive };

inline std::string to_string(ControlVerdict v) {
  switch (v) {
    case ControlVerdict::consistent: return "consistent";
    case ControlVerdict::inconsistent: return "inconsistent";
    case ControlVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

template <CoefficientDomain D>
struct ControlElement {
  Polynomial<D> x;
  bool checked = false;
  bool included = false;  // char(M/xM) ⊆ char(N/xN)
  std::string reason;
};

template <CoefficientDomain D>
struct ControlReport {
  bool global_inclusion = false;  // char(M) ⊆ char(N)
  std::vector<ControlElement<D>> elements;
  ControlVerdict verdict = ControlVerdict::inconclusive;
  std::size_t violations = 0;  // checked elements contradicting a global inclusion
};

// Compares char(M) ⊆ char(N) with the specialized inclusions over each
// family element that passes the membership and guard preconditions.
// A global inclusion must survive every specialization; a global failure is
// only expected to show up somewhere in a rich enough family.
template <CoefficientDomain D>
ControlReport<D> control_check(const ModuleRep<D>& M, const ModuleRep<D>& N, const std::vector<Polynomial<D>>& family,
                               const std::vector<Ideal<D>>& cover, unsigned cap = 32, unsigned jobs = 1) {
  ControlReport<D> report;
  Ideal<D> cm = char_ideal(M).ideal, cn = char_ideal(N).ideal;
  report.global_inclusion = cn.contains(cm);
  report.elements.resize(family.size());
  parallel_for(family.size(), jobs, [&](std::size_t i) {
    auto& e = report.elements[i];
    e.x = family[i];
    for (const auto* mod : {&M, &N}) {
      auto l = l_set_member(*mod, e.x, cover, cap);
      if (!l.member) {
        e.reason = (mod == &M ? "M: " : "N: ") + (l.reasons.empty() ? std::string("not a member") : l.reasons[0]);
        return;
      }
      if (!bad_locus_guard(*mod, e.x)) {
        e.reason = std::string(mod == &M ? "M" : "N") + ": bad-locus guard refused";
        return;
      }
    }
    auto Rx = section_ring(M.ring(), e.x);
    Ideal<D> sm = direct_specialized_char(M, e.x, Rx);
    Ideal<D> sn = direct_specialized_char(extend_module(N, M.ring()), e.x, Rx);
    e.checked = true;
    e.included = sn.contains(sm);
  });
  std::size_t checked = 0, failures = 0;
  for (const auto& e : report.elements) {
    if (!e.checked) continue;
    ++checked;
    failures += !e.included;
  }
  if (report.global_inclusion) {
    report.violations = failures;
    report.verdict = failures ? ControlVerdict::inconsistent : ControlVerdict::consistent;
  } else {
    report.verdict = failures ? ControlVerdict::consistent : ControlVerdict::inconclusive;
  }
  if (checked == 0) report.verdict = ControlVerdict::inconclusive;
  return report;
}

}  // namespace charbert
