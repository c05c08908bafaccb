#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "coefficient_maps.hpp"
#include "dimension.hpp"
#include "groebner.hpp"
#include "parse.hpp"

namespace charbert {

// Caller assertions about the presented ring. codimension is the height of
// the defining ideal when it is equidimensional; complete intersections imply
// it equals the number of relations.
struct RingFlags {
  bool domain = false;
  bool complete_intersection = false;
  bool cohen_macaulay = false;
  std::optional<int> codimension;
};

// The role of the uniformizer of the coefficient ring: a prime integer for
// integer models, or a variable of the ring for equicharacteristic models.
struct Uniformizer {
  std::optional<mpz_class> prime;
  std::optional<std::size_t> variable;
  bool present() const { return prime.has_value() || variable.has_value(); }
};

template <CoefficientDomain D>
class PresentedRing;

template <CoefficientDomain D>
using PresentedRingPtr = std::shared_ptr<const PresentedRing<D>>;

// R = C[x_0..x_d]/P: the polynomial stand-in for a complete local ring.
template <CoefficientDomain D>
class PresentedRing {
 public:
  using Poly = Polynomial<D>;
  using Domain = D;

  static PresentedRingPtr<D> make(RingPtr<D> ambient, std::vector<Poly> relations, RingFlags flags = {},
                                  Uniformizer uniformizer = {}) {
    return std::shared_ptr<const PresentedRing>(
        new PresentedRing(std::move(ambient), std::move(relations), std::move(flags), std::move(uniformizer)));
  }

  // Parses relations given as text; the uniformizer prime is available under
  // the name "p" unless a variable is called that.
  static PresentedRingPtr<D> parse(RingPtr<D> ambient, const std::vector<std::string>& relations,
                                   RingFlags flags = {}, Uniformizer uniformizer = {}) {
    ConstantTable constants = constants_for(*ambient, uniformizer);
    return make(ambient, parse_polynomials(ambient, relations, &constants), std::move(flags), std::move(uniformizer));
  }

  const RingPtr<D>& ambient() const { return ambient_; }
  const D& domain() const { return ambient_->domain(); }
  std::size_t nvars() const { return ambient_->nvars(); }
  const std::vector<Poly>& relations() const { return relations_; }
  const RingFlags& flags() const { return flags_; }
  const Uniformizer& uniformizer() const { return uniformizer_; }
  const ConstantTable& constants() const { return constants_; }

  const std::vector<Poly>& relation_basis() const {
    std::call_once(cache_->once, [&] { cache_->basis = groebner(relations_); });
    return cache_->basis;
  }

  Poly zero() const { return Poly(ambient_); }
  Poly one() const { return Poly::one(ambient_); }
  Poly constant(const mpz_class& c) const { return Poly::integer(ambient_, c); }
  Poly variable(std::size_t i) const { return Poly::variable(ambient_, i); }
  Poly element(std::string_view text) const { return parse_polynomial(ambient_, text, &constants_); }
  std::vector<Poly> elements(const std::vector<std::string>& texts) const {
    return parse_polynomials(ambient_, texts, &constants_);
  }

  bool is_zero(const Poly& f) const { return reduce(f, relation_basis()).is_zero(); }
  Poly normal_form(const Poly& f) const { return reduce(f, relation_basis()); }

  // The uniformizer as a ring element, when one is declared.
  std::optional<Poly> uniformizer_element() const {
    if (uniformizer_.prime) return constant(*uniformizer_.prime);
    if (uniformizer_.variable) return variable(*uniformizer_.variable);
    if constexpr (D::kind == CoefficientKind::residue) return constant(domain().prime());
    return std::nullopt;
  }

  std::optional<mpz_class> prime() const {
    if (uniformizer_.prime) return uniformizer_.prime;
    if constexpr (D::kind == CoefficientKind::residue) return domain().prime();
    return std::nullopt;
  }

  // Height of the defining ideal when known: asserted, or the relation count
  // of a complete intersection.
  std::optional<int> relation_codimension() const {
    if (flags_.codimension) return flags_.codimension;
    if (flags_.complete_intersection) return static_cast<int>(relations_.size());
    return std::nullopt;
  }

  // R/(extra); flags describe the quotient and are the caller's assertions
  PresentedRingPtr<D> quotient(const std::vector<Poly>& extra, RingFlags flags) const {
    std::vector<Poly> rel = relations_;
    for (const auto& f : extra)
      if (!f.is_zero()) rel.push_back(f);
    return make(ambient_, std::move(rel), std::move(flags), uniformizer_);
  }

  // Write-once memo for derived data (fibers, dimensions) keyed by name.
  template <class T, class F>
  std::shared_ptr<const T> memo(const std::string& key, F&& make) const {
    {
      std::lock_guard lock(cache_->memo_mutex);
      auto it = cache_->memo.find(key);
      if (it != cache_->memo.end()) return std::static_pointer_cast<const T>(it->second);
    }
    // computed outside the lock; a concurrent duplicate is harmless
    auto value = std::make_shared<const T>(make());
    std::lock_guard lock(cache_->memo_mutex);
    auto [it, inserted] = cache_->memo.emplace(key, value);
    return std::static_pointer_cast<const T>(it->second);
  }

  std::string describe() const {
    std::string s = ambient_->domain().name() + "[";
    for (std::size_t i = 0; i < nvars(); ++i) s += (i ? "," : "") + ambient_->variables()[i];
    s += "]";
    if (!relations_.empty()) s += "/(" + join_polynomials(relations_) + ")";
    return s;
  }

 private:
  struct Cache {
    std::once_flag once;
    std::vector<Poly> basis;
    std::mutex memo_mutex;
    std::map<std::string, std::shared_ptr<const void>> memo;
  };

  PresentedRing(RingPtr<D> ambient, std::vector<Poly> relations, RingFlags flags, Uniformizer uniformizer)
      : ambient_(std::move(ambient)), flags_(std::move(flags)), uniformizer_(std::move(uniformizer)),
        cache_(std::make_shared<Cache>()) {
    for (auto& r : relations) {
      if (!r.ring()->same_as(*ambient_)) throw DomainMismatch("relation outside the ambient ring");
      if (!r.is_zero()) relations_.push_back(std::move(r));
    }
    if (uniformizer_.prime) {
      if constexpr (D::kind != CoefficientKind::integer)
        throw PreconditionError("a prime uniformizer needs integer coefficients");
      if (!is_prime(*uniformizer_.prime)) throw InvalidPrime("uniformizer " + uniformizer_.prime->get_str() + " is not prime");
    }
    if (uniformizer_.variable && *uniformizer_.variable >= ambient_->nvars())
      throw PreconditionError("uniformizer variable out of range");
    constants_ = constants_for(*ambient_, uniformizer_);
    if (reduce(one(), relation_basis()).is_zero()) throw PreconditionError("the defining ideal is the unit ideal");
    validate_complete_intersection();
  }

  static ConstantTable constants_for(const PolyRing<D>& ambient, const Uniformizer& u) {
    ConstantTable t;
    std::optional<mpz_class> p = u.prime;
    if constexpr (D::kind == CoefficientKind::residue) p = ambient.domain().prime();
    if (p && !ambient.index_of("p")) t["p"] = *p;
    return t;
  }

  // dimension of the ambient quotient on the fiber where it is computable
  std::optional<int> fiber_dimension() const {
    if constexpr (D::is_field) {
      return krull_dimension(relation_basis(), nvars());
    } else if constexpr (D::kind == CoefficientKind::integer) {
      auto Q = same_variables(ambient_, Rationals{});
      std::vector<Polynomial<Rationals>> rel;
      for (const auto& r : relations_) rel.push_back(to_rationals(r, Q));
      int d = rel.empty() ? static_cast<int>(nvars()) : krull_dimension(groebner(rel), nvars());
      if (d == kEmptyDimension) return std::nullopt;
      return d;
    } else {
      return std::nullopt;
    }
  }

  void validate_complete_intersection() const {
    if (!flags_.complete_intersection) return;
    auto d = fiber_dimension();
    if (!d) return;
    int expected = static_cast<int>(nvars()) - *d;
    if (static_cast<int>(relations_.size()) != expected)
      throw PreconditionError("asserted complete intersection has " + std::to_string(relations_.size()) +
                              " relations but codimension " + std::to_string(expected));
    if (flags_.codimension && *flags_.codimension != expected)
      throw PreconditionError("asserted codimension disagrees with the computed one");
  }

  RingPtr<D> ambient_;
  std::vector<Poly> relations_;
  RingFlags flags_;
  Uniformizer uniformizer_;
  ConstantTable constants_;
  std::shared_ptr<Cache> cache_;
};

}  // namespace charbert
