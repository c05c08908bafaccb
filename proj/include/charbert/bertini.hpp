#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "ideal_ops.hpp"
#include "module.hpp"
#include "padic.hpp"
#include "parallel.hpp"

namespace charbert {

// ---------------------------------------------------------------------------
// Differentials

// Ω of R over its coefficient ring: free on dx_1..dx_n modulo the gradients
// of the relations. Constants, including the distinguished prime, have d = 0.
template <CoefficientDomain D>
struct KahlerPresentation {
  PresentedRingPtr<D> ring;
  std::vector<Vector<D>> gradients;  // one column per relation

  Vector<D> differential(const Polynomial<D>& f) const {
    Vector<D> out;
    for (std::size_t i = 0; i < ring->nvars(); ++i) out.push_back(f.derivative(i));
    return out;
  }
  ModuleRep<D> module() const { return ModuleRep<D>::presented(ring, ring->nvars(), gradients); }
};

template <CoefficientDomain D>
KahlerPresentation<D> kahler_presentation(const PresentedRingPtr<D>& R) {
  KahlerPresentation<D> out{R, {}};
  for (const auto& f : R->relations()) out.gradients.push_back(out.differential(f));
  return out;
}

// m is basic at P iff its image in M ⊗ k(P) is nonzero: no s outside P has
// s m in P M + relations, i.e. the colon (P M + relations : m) lies in P.
template <CoefficientDomain D>
bool is_basic_at(const Vector<D>& m, const ModuleRep<D>& M, const Ideal<D>& P) {
  const auto& R = M.ring();
  Presented<D> pres = M.as_presented();
  if (m.size() != pres.generators) throw DomainMismatch("element length differs from the generator count");
  bool zero = true;
  for (const auto& e : m) zero = zero && R->is_zero(e);
  if (zero) return false;
  std::vector<Vector<D>> columns = pres.columns;
  for (const auto& g : P.generators())
    for (std::size_t k = 0; k < pres.generators; ++k) {
      Vector<D> v(pres.generators, R->zero());
      v[k] = g;
      columns.push_back(std::move(v));
    }
  for (const auto& a : module_colon(*R, pres.generators, columns, m))
    if (!P.contains(a)) return false;
  return true;
}

template <CoefficientDomain D>
bool is_basic_at(const Vector<D>& m, const KahlerPresentation<D>& omega, const Ideal<D>& P) {
  return is_basic_at(m, omega.module(), P);
}

struct SymbolicSquareTest {
  bool outside = false;        // x is not in P^(2)
  std::string method;          // "differential" or "direct"
  bool differential_basic = false;
  bool direct = false;
};

// x ∉ P^(2), by the differential criterion (dx basic at P) and by the
// direct colon test; basic dx forces the direct answer.
template <CoefficientDomain D>
SymbolicSquareTest not_in_symbolic_square(const Polynomial<D>& x, const Ideal<D>& P) {
  require_proper_prime(P);
  auto omega = kahler_presentation(P.ring());
  SymbolicSquareTest out;
  out.differential_basic = is_basic_at(omega.differential(x), omega, P);
  out.direct = !symbolic_power_contains(x, P, 2);
  if (out.differential_basic && !out.direct)
    throw InternalConsistency("d(" + x.to_string() + ") is basic at " + P.to_string() +
                              " but the element lies in the symbolic square");
  out.outside = out.differential_basic || out.direct;
  out.method = out.differential_basic ? "differential" : "direct";
  return out;
}

// ---------------------------------------------------------------------------
// Singular locus

namespace detail {

template <CoefficientDomain D>
using Matrix = std::vector<std::vector<Polynomial<D>>>;

template <CoefficientDomain D>
Polynomial<D> minor_of(const Matrix<D>& A, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols,
                       std::size_t depth, std::vector<bool>& used, const RingPtr<D>& R) {
  if (depth == rows.size()) return Polynomial<D>::one(R);
  Polynomial<D> out(R);
  bool negative = false;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (used[j]) continue;
    const auto& entry = A[rows[depth]][cols[j]];
    if (!entry.is_zero()) {
      used[j] = true;
      Polynomial<D> sub = minor_of(A, rows, cols, depth + 1, used, R);
      used[j] = false;
      if (negative) out -= entry * sub;
      else out += entry * sub;
    }
    negative = !negative;
  }
  return out;
}

inline void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i + (k - cur.size()) <= n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

// all size x size minors of A (rows x cols)
template <CoefficientDomain D>
std::vector<Polynomial<D>> minors(const Matrix<D>& A, std::size_t ncols, std::size_t size, const RingPtr<D>& R) {
  if (size == 0) return {Polynomial<D>::one(R)};
  std::vector<std::vector<std::size_t>> rs, cs;
  subsets(A.size(), size, rs);
  subsets(ncols, size, cs);
  std::vector<Polynomial<D>> out;
  for (const auto& r : rs)
    for (const auto& c : cs) {
      std::vector<bool> used(size, false);
      auto m = minor_of(A, r, c, 0, used, R);
      if (!m.is_zero()) out.push_back(std::move(m));
    }
  return out;
}

template <CoefficientDomain D>
Matrix<D> jacobian(const std::vector<Polynomial<D>>& fs, std::size_t nvars) {
  Matrix<D> J;
  for (const auto& f : fs) {
    std::vector<Polynomial<D>> row;
    for (std::size_t i = 0; i < nvars; ++i) row.push_back(f.derivative(i));
    J.push_back(std::move(row));
  }
  return J;
}

inline int require_codimension(std::optional<int> c) {
  if (!c) throw UnsupportedRepresentation("singular locus needs the codimension of the defining ideal (assert it, or a complete intersection)");
  return *c;
}

// I + c x c Jacobian minors over a field
template <FieldDomain K>
Ideal<K> jacobian_ideal(const PresentedRingPtr<K>& R, int c) {
  auto gens = minors(jacobian(R->relations(), R->nvars()), R->nvars(), static_cast<std::size_t>(c), R->ambient());
  for (auto& g : gens) g = R->normal_form(g);
  return Ideal<K>(R, std::move(gens));
}

}  // namespace detail

// p-derivation δ(f) = (f(x^p) - f^p)/p with the Frobenius lift fixing integers.
inline Polynomial<Integers> p_derivation(const Polynomial<Integers>& f, const mpz_class& p) {
  const auto& R = f.ring();
  std::vector<Polynomial<Integers>> images;
  for (std::size_t i = 0; i < R->nvars(); ++i) images.push_back(Polynomial<Integers>::variable(R, i).pow(p.get_ui()));
  Polynomial<Integers> diff = f.substitute(images) - f.pow(p.get_ui());
  return diff.map_coefficients(R, [&](const mpz_class& c) {
    if (!mpz_divisible_p(c.get_mpz_t(), p.get_mpz_t())) throw InternalConsistency("p-derivation is not integral");
    return mpz_class(c / p);
  });
}

// Singular locus of an integer model, fiber by fiber. The generic part lives
// in R ⊗ Q; the part over p lives in R/pR and comes from the p-Jacobian
// rows (δ f_i, (∂f_i/∂x_1)^p, ..., (∂f_i/∂x_n)^p), which detect singular
// points of R itself rather than of its special fiber.
struct FiberSingularLocus {
  PresentedRingPtr<Rationals> generic_ring;
  std::optional<Ideal<Rationals>> generic;
  PresentedRingPtr<PrimeField> special_ring;
  std::optional<Ideal<PrimeField>> special;
};

template <CoefficientDomain D>
auto singular_ideal(const PresentedRingPtr<D>& R) {
  if constexpr (D::is_field) {
    return detail::jacobian_ideal(R, detail::require_codimension(R->relation_codimension()));
  } else if constexpr (D::kind == CoefficientKind::integer) {
    int c = detail::require_codimension(R->relation_codimension());
    return *R->template memo<FiberSingularLocus>("singular-locus", [&] {
      FiberSingularLocus out;
      out.generic_ring = generic_fiber(*R);
      if (out.generic_ring) out.generic = detail::jacobian_ideal(out.generic_ring, c);
      out.special_ring = special_fiber(*R);
      if (!out.special_ring) return out;
      const auto& F = out.special_ring;
      if (prime_status(R) == PrimeStatus::zero) {
        out.special = detail::jacobian_ideal(F, detail::require_codimension(F->flags().codimension));
        return out;
      }
      mpz_class p = *R->prime();
      detail::Matrix<PrimeField> A;
      for (const auto& f : R->relations()) {
        std::vector<Polynomial<PrimeField>> row{to_prime_field(p_derivation(f, p), F->ambient())};
        for (std::size_t i = 0; i < R->nvars(); ++i)
          row.push_back(to_prime_field(f.derivative(i), F->ambient()).pow(p.get_ui()));
        A.push_back(std::move(row));
      }
      auto gens = detail::minors(A, R->nvars() + 1, static_cast<std::size_t>(c), F->ambient());
      for (auto& g : gens) g = F->normal_form(g);
      out.special = Ideal<PrimeField>(F, std::move(gens));
      return out;
    });
  } else {
    static_assert(D::is_field || D::kind == CoefficientKind::integer, "singular locus over Z/p^N is not supported");
  }
}

// Codimension of the singular locus in Spec R.
template <CoefficientDomain D>
Codimension singular_codimension(const PresentedRingPtr<D>& R) {
  if constexpr (D::is_field) {
    return codimension(singular_ideal(R));
  } else {
    FiberSingularLocus S = singular_ideal(R);
    int cq = S.generic ? codimension(*S.generic).value.value_or(0) : kInfiniteCodimension;
    int cp = S.special ? codimension(*S.special).value.value_or(0) : kInfiniteCodimension;
    std::string detail = "singular locus: codim over Q = " + codimension_string(cq) +
                         ", codim mod p = " + codimension_string(cp);
    switch (prime_status(R)) {
      case PrimeStatus::zero: return {cp, detail + " (p = 0 in R)"};
      case PrimeStatus::zero_divisor: return {std::nullopt, detail + " (p is a zero divisor on R)"};
      case PrimeStatus::nonzerodivisor:
        return {std::min(cq, cp >= kInfiniteCodimension ? kInfiniteCodimension : cp + 1), detail};
    }
    return {std::nullopt, detail};
  }
}

// ---------------------------------------------------------------------------
// Serre's conditions and certificates

enum class Status { pass, fail, unknown, skipped };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::unknown: return "unknown";
    case Status::skipped: return "skipped";
  }
  return "?";
}

enum class Verdict { pass, fail, conditional };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::conditional: return "conditional";
  }
  return "?";
}

struct CheckRecord {
  std::string name;
  Status status;
  std::string witness;
};

struct Certificate {
  std::string subject;
  std::vector<CheckRecord> checks;
  std::vector<std::string> assumptions;

  Verdict verdict() const {
    bool unknown = false;
    for (const auto& c : checks) {
      if (c.status == Status::fail) return Verdict::fail;
      unknown |= c.status == Status::unknown;
    }
    return unknown ? Verdict::conditional : Verdict::pass;
  }
  void assume(const std::string& a) {
    for (const auto& b : assumptions)
      if (a == b) return;
    assumptions.push_back(a);
  }
  const CheckRecord* find(std::string_view name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

// R_n (regular in codimension n) or S_n (Serre's depth condition)
struct SerreCondition {
  char kind = 'R';
  int n = 1;

  static SerreCondition parse(std::string_view s) {
    if (s.size() < 2 || (s[0] != 'R' && s[0] != 'S')) throw ParseError("expected R<n> or S<n>, got '" + std::string(s) + "'");
    int n = 0;
    for (char c : s.substr(1)) {
      if (c < '0' || c > '9') throw ParseError("expected R<n> or S<n>, got '" + std::string(s) + "'");
      n = n * 10 + (c - '0');
    }
    return {s[0], n};
  }
  std::string to_string() const { return std::string(1, kind) + std::to_string(n); }
};

template <CoefficientDomain D>
CheckRecord serre_condition(const PresentedRingPtr<D>& R, SerreCondition cond, Certificate* cert = nullptr) {
  CheckRecord rec{cond.to_string(), Status::unknown, ""};
  if (cond.kind == 'R') {
    Codimension c = singular_codimension(R);
    rec.witness = c.detail;
    if (c.value) rec.status = *c.value >= cond.n + 1 ? Status::pass : Status::fail;
    return rec;
  }
  if (cond.n == 0) {
    rec.status = Status::pass;
    rec.witness = "S0 holds for every noetherian ring";
  } else if (R->flags().complete_intersection || R->flags().cohen_macaulay) {
    rec.status = Status::pass;
    std::string flag = R->flags().complete_intersection ? "asserted_complete_intersection" : "asserted_cohen_macaulay";
    rec.witness = "Cohen-Macaulay by " + flag;
    if (cert) cert->assume(flag);
  } else {
    rec.witness = "depth not computed; no Cohen-Macaulay assertion";
  }
  return rec;
}

template <CoefficientDomain D>
void add_normal_checks(const PresentedRingPtr<D>& R, Certificate& cert) {
  cert.checks.push_back(serre_condition(R, {'R', 1}, &cert));
  cert.checks.push_back(serre_condition(R, {'S', 2}, &cert));
}

// Serre's criterion: R_1 + S_2
template <CoefficientDomain D>
Certificate is_normal(const PresentedRingPtr<D>& R) {
  Certificate cert{R->describe(), {}, {}};
  add_normal_checks(R, cert);
  return cert;
}

// ---------------------------------------------------------------------------
// Minimal generators of the maximal ideal

namespace detail {

template <CoefficientDomain D>
using ResidueField = std::conditional_t<D::kind == CoefficientKind::integer, PrimeField, D>;

// rank over a field by elimination, rows modified in place
template <FieldDomain K>
std::size_t rank_of(const K& k, std::vector<std::vector<typename K::value_type>> rows) {
  std::size_t rank = 0;
  std::size_t width = rows.empty() ? 0 : rows[0].size();
  for (std::size_t col = 0; col < width && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && k.is_zero(rows[pivot][col])) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    auto inv = k.inv(rows[rank][col]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || k.is_zero(rows[r][col])) continue;
      auto factor = k.mul(rows[r][col], inv);
      for (std::size_t c = col; c < width; ++c) rows[r][c] = k.sub(rows[r][c], k.mul(factor, rows[rank][c]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

// The cotangent space m/m^2 of the maximal ideal m = (p, x_1..x_n) (integer
// models) or (x_1..x_n) (field models), with coordinates in that order.
template <CoefficientDomain D>
class CotangentSpace {
 public:
  using K = detail::ResidueField<D>;
  using Row = std::vector<typename K::value_type>;

  explicit CotangentSpace(PresentedRingPtr<D> R) : R_(std::move(R)), k_(make_field(*R_)) {
    for (const auto& f : R_->relations()) relations_.push_back(coordinates(f));
    rank_ = detail::rank_of(k_, relations_);
  }

  bool has_prime() const { return D::kind == CoefficientKind::integer; }
  std::size_t ambient_dimension() const { return R_->nvars() + (has_prime() ? 1 : 0); }
  std::size_t dimension() const { return ambient_dimension() - rank_; }

  // class of f in m/m^2; f must lie in m
  Row coordinates(const Polynomial<D>& f) const {
    Row row;
    Monomial one(R_->nvars());
    if constexpr (D::kind == CoefficientKind::integer) {
      mpz_class c0 = f.coeff_of(one);
      mpz_class p = *R_->prime();
      if (!mpz_divisible_p(c0.get_mpz_t(), p.get_mpz_t()))
        throw PreconditionError(f.to_string() + " is not in the maximal ideal");
      row.push_back(k_.from_integer(mpz_class(c0 / p)));
      for (std::size_t i = 0; i < R_->nvars(); ++i) row.push_back(k_.from_integer(f.coeff_of(Monomial::variable(R_->nvars(), i, 1))));
    } else {
      if (!k_.is_zero(f.coeff_of(one))) throw PreconditionError(f.to_string() + " is not in the maximal ideal");
      for (std::size_t i = 0; i < R_->nvars(); ++i) row.push_back(f.coeff_of(Monomial::variable(R_->nvars(), i, 1)));
    }
    return row;
  }

  // f is part of a minimal generating set of m
  bool is_minimal_generator(const Polynomial<D>& f) const {
    auto rows = relations_;
    rows.push_back(coordinates(f));
    return detail::rank_of(k_, rows) > rank_;
  }

  // p (when it is a minimal generator) followed by the variables
  std::vector<Polynomial<D>> section_generators() const {
    std::vector<Polynomial<D>> out;
    if constexpr (D::kind == CoefficientKind::integer)
      if (is_minimal_generator(R_->constant(*R_->prime()))) out.push_back(R_->constant(*R_->prime()));
    for (std::size_t i = 0; i < R_->nvars(); ++i) out.push_back(R_->variable(i));
    return out;
  }

 private:
  static K make_field(const PresentedRing<D>& R) {
    if constexpr (D::kind == CoefficientKind::integer) {
      return PrimeField(detail::require_prime(R).get_ui());
    } else if constexpr (D::is_field) {
      return R.domain();
    } else {
      static_assert(D::is_field || D::kind == CoefficientKind::integer, "cotangent space over Z/p^N is not supported");
    }
  }

  PresentedRingPtr<D> R_;
  K k_;
  std::vector<Row> relations_;
  std::size_t rank_ = 0;
};

template <CoefficientDomain D>
std::size_t minimal_generator_count(const PresentedRingPtr<D>& R) {
  return CotangentSpace<D>(R).dimension();
}

template <CoefficientDomain D>
bool is_minimal_generator(const PresentedRingPtr<D>& R, const Polynomial<D>& f) {
  return CotangentSpace<D>(R).is_minimal_generator(f);
}

template <CoefficientDomain D>
std::vector<Polynomial<D>> section_generators(const PresentedRingPtr<D>& R) {
  return CotangentSpace<D>(R).section_generators();
}

// x_a = Σ a_i g_i over the given generators of the maximal ideal
template <CoefficientDomain D>
Polynomial<D> linear_form(const PresentedRingPtr<D>& R, const HyperplanePoint& a,
                          const std::vector<Polynomial<D>>& generators) {
  if (a.size() != generators.size())
    throw PreconditionError("point " + a.to_string() + " has " + std::to_string(a.size()) + " coordinates, expected " +
                            std::to_string(generators.size()));
  Polynomial<D> out = R->zero();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a.lifts()[i]) != 0) out += R->constant(a.lifts()[i]) * generators[i];
  return out;
}

template <CoefficientDomain D>
Polynomial<D> linear_form(const PresentedRingPtr<D>& R, const HyperplanePoint& a) {
  return linear_form(R, a, section_generators(R));
}

// ---------------------------------------------------------------------------
// Hyperplane sections

struct SectionTarget {
  enum class Kind { normal, reduced, serre };
  Kind kind = Kind::normal;
  SerreCondition condition;

  static SectionTarget parse(std::string_view s) {
    if (s == "normal") return {};
    if (s == "reduced") return {Kind::reduced, {}};
    return {Kind::serre, SerreCondition::parse(s)};
  }
  std::string to_string() const {
    switch (kind) {
      case Kind::normal: return "normal";
      case Kind::reduced: return "reduced";
      case Kind::serre: return condition.to_string();
    }
    return "?";
  }
};

template <CoefficientDomain D>
void add_target_checks(const PresentedRingPtr<D>& Q, SectionTarget target, Certificate& cert) {
  switch (target.kind) {
    case SectionTarget::Kind::normal:
      add_normal_checks(Q, cert);
      cert.assume("local normal rings are domains");
      break;
    case SectionTarget::Kind::reduced:
      cert.checks.push_back(serre_condition(Q, {'R', 0}, &cert));
      cert.checks.push_back(serre_condition(Q, {'S', 1}, &cert));
      break;
    case SectionTarget::Kind::serre:
      cert.checks.push_back(serre_condition(Q, target.condition, &cert));
      break;
  }
}

// Certifies that R/(x_a) has the target property. Every step runs and is
// recorded: (a) x_a is nonzero with a unit coordinate, (b) x_a avoids each
// listed prime, (c) the uniformizer stays a nonzerodivisor and a nonunit on
// R/(x_a), (d) the target condition on R/(x_a).
template <CoefficientDomain D>
Certificate certify_hyperplane(const PresentedRingPtr<D>& R, const HyperplanePoint& a, const std::vector<Ideal<D>>& avoid,
                               SectionTarget target, const std::vector<Polynomial<D>>& generators) {
  Certificate cert{a.to_string(), {}, {}};
  Polynomial<D> x = linear_form(R, a, generators);

  bool unit_coordinate = false;
  for (auto r : a.residues()) unit_coordinate |= r != 0;
  bool nonzero = !R->is_zero(x);
  cert.checks.push_back({"nonzero", nonzero && unit_coordinate ? Status::pass : Status::fail, "x = " + x.to_string()});

  for (const auto& P : avoid) {
    bool inside = P.contains(x);
    cert.checks.push_back({"avoid " + P.to_string(), inside ? Status::fail : Status::pass, inside ? "x lies in the prime" : ""});
  }

  Ideal<D> J(R, {x});
  if (auto u = R->uniformizer_element()) {
    bool nzd = colon(J, *u) == J;
    bool proper = !J.with(*u).is_unit();
    std::string w = std::string(nzd ? "" : u->to_string() + " is a zero divisor mod x") +
                    (proper ? "" : std::string(nzd ? "" : "; ") + "residue ring of R/(x) is zero");
    cert.checks.push_back({"mixed characteristic", nzd && proper ? Status::pass : Status::fail, w});
  } else {
    cert.checks.push_back({"mixed characteristic", Status::skipped, "no uniformizer"});
  }

  if (!nonzero) {
    cert.checks.push_back({"quotient", Status::skipped, "x is zero"});
    return cert;
  }
  RingFlags qf;
  qf.complete_intersection = R->flags().complete_intersection;
  qf.cohen_macaulay = R->flags().cohen_macaulay || R->flags().complete_intersection;
  if (auto c = R->relation_codimension()) qf.codimension = *c + 1;
  PresentedRingPtr<D> Q;
  try {
    Q = R->quotient({x}, qf);
  } catch (const PreconditionError& e) {
    cert.checks.push_back({"quotient", Status::fail, e.what()});
    return cert;
  }
  if (qf.complete_intersection) cert.assume("x is a nonzerodivisor (complete intersection quotient)");
  add_target_checks(Q, target, cert);
  return cert;
}

template <CoefficientDomain D>
Certificate certify_hyperplane(const PresentedRingPtr<D>& R, const HyperplanePoint& a, const std::vector<Ideal<D>>& avoid,
                               SectionTarget target) {
  return certify_hyperplane(R, a, avoid, target, section_generators(R));
}

// A union-free open set: every clause lists coordinates of which at least one
// must be nonzero. {{0}, {1, 2, 3}} is a_0 != 0 and (a_1, a_2, a_3) != 0.
struct OpenSet {
  std::vector<std::vector<std::size_t>> clauses;

  bool contains(const ResiduePoint& a) const {
    for (const auto& clause : clauses) {
      bool ok = false;
      for (auto i : clause) ok |= i < a.size() && a[i] != 0;
      if (!ok) return false;
    }
    return true;
  }
};

struct EnumerationOptions {
  LiftMode mode;
  std::uint64_t cap = 100000;
  unsigned jobs = 1;
  std::optional<OpenSet> expected;
};

struct SectionReport {
  std::vector<HyperplanePoint> points;
  std::vector<Certificate> certificates;
  std::vector<std::size_t> passing;        // indices with verdict pass
  std::vector<std::size_t> expected_fail;  // points of the expected set that did not pass

  bool expected_contained() const { return expected_fail.empty(); }
};

// Certifies every point of P^d(F_p).
template <CoefficientDomain D>
SectionReport enumerate_normal_sections(const PresentedRingPtr<D>& R, std::uint64_t p, const std::vector<Ideal<D>>& avoid,
                                        SectionTarget target, const EnumerationOptions& opt,
                                        std::optional<std::vector<Polynomial<D>>> generators = std::nullopt) {
  if constexpr (D::kind == CoefficientKind::integer)
    if (R->prime() && *R->prime() != p) throw PreconditionError("enumeration prime differs from the ring's prime");
  auto gens = generators ? *generators : section_generators(R);
  if (gens.empty()) throw PreconditionError("no generators for the maximal ideal");
  std::uint64_t count = projective_point_count(gens.size() - 1, p);
  if (count > opt.cap)
    throw CapExceeded(std::to_string(count) + " points exceed the enumeration cap " + std::to_string(opt.cap));

  SectionReport report;
  for (auto& r : projective_points(gens.size() - 1, p)) report.points.emplace_back(std::move(r), p, opt.mode);
  report.certificates.resize(report.points.size());

  parallel_for(report.points.size(), opt.jobs, [&](std::size_t i) {
    report.certificates[i] = certify_hyperplane(R, report.points[i], avoid, target, gens);
  });

  for (std::size_t i = 0; i < report.points.size(); ++i) {
    bool pass = report.certificates[i].verdict() == Verdict::pass;
    if (pass) report.passing.push_back(i);
    if (opt.expected && opt.expected->contains(report.points[i].residues()) && !pass) report.expected_fail.push_back(i);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Distinct sections at finite p-adic precision

enum class Distinctness { distinct, indistinguishable };

inline std::string to_string(Distinctness d) {
  return d == Distinctness::distinct ? "distinct (certified at precision N)" : "indistinguishable at precision N";
}

// Compares the ideals (x_a) + I in the coefficients Z/p^N. Distinct at
// precision N implies distinct; the converse is never claimed.
inline std::vector<std::vector<Distinctness>> distinct_sections(const PresentedRingPtr<Integers>& R,
                                                                const std::vector<HyperplanePoint>& points, unsigned N,
                                                                std::optional<std::vector<Polynomial<Integers>>> generators = std::nullopt) {
  mpz_class p = detail::require_prime(*R);
  auto gens = generators ? *generators : section_generators(R);
  auto Z = same_variables(R->ambient(), Residues(p, N));
  std::vector<Polynomial<Residues>> rel;
  for (const auto& r : R->relations()) rel.push_back(to_residues(r, Z));
  auto RN = PresentedRing<Residues>::make(Z, rel);
  std::vector<Ideal<Residues>> sections;
  for (const auto& a : points) sections.push_back(Ideal<Residues>::principal(RN, to_residues(linear_form(R, a, gens), Z)));
  std::size_t n = points.size();
  std::vector<std::vector<Distinctness>> out(n, std::vector<Distinctness>(n, Distinctness::indistinguishable));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      bool same = sections[i] == sections[j];
      out[i][j] = out[j][i] = same ? Distinctness::indistinguishable : Distinctness::distinct;
    }
  return out;
}

}  // namespace charbert
