#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "ring.hpp"

namespace charbert {

template <CoefficientDomain D>
class Ideal {
 public:
  using Poly = Polynomial<D>;

  Ideal() = default;
  Ideal(PresentedRingPtr<D> ring, std::vector<Poly> gens) : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
    for (auto& g : gens) {
      if (!g.ring()->same_as(*ring_->ambient())) throw DomainMismatch("ideal generator outside the ambient ring");
      if (g.is_zero()) continue;
      bool dup = false;
      for (const auto& h : gens_)
        if (h == g) dup = true;
      if (!dup) gens_.push_back(std::move(g));
    }
  }

  static Ideal parse(PresentedRingPtr<D> ring, const std::vector<std::string>& gens) {
    auto polys = ring->elements(gens);
    return Ideal(std::move(ring), std::move(polys));
  }
  static Ideal unit(PresentedRingPtr<D> ring) { return Ideal(ring, {ring->one()}); }
  static Ideal zero(PresentedRingPtr<D> ring) { return Ideal(ring, {}); }
  static Ideal principal(PresentedRingPtr<D> ring, Poly f) { return Ideal(ring, {std::move(f)}); }

  const PresentedRingPtr<D>& ring() const { return ring_; }
  const RingPtr<D>& ambient() const { return ring_->ambient(); }
  const std::vector<Poly>& generators() const { return gens_; }

  // Gröbner basis of generators + defining ideal in the ambient ring.
  const std::vector<Poly>& groebner_basis() const {
    std::call_once(cache_->once, [&] {
      std::vector<Poly> all = ring_->relations();
      all.insert(all.end(), gens_.begin(), gens_.end());
      cache_->basis = groebner(all);
    });
    return cache_->basis;
  }

  Poly normal_form(const Poly& f) const { return reduce(f, groebner_basis()); }
  bool contains(const Poly& f) const { return normal_form(f).is_zero(); }
  bool contains(const Ideal& J) const {
    check_same_ring(J);
    for (const auto& g : J.gens_)
      if (!contains(g)) return false;
    return true;
  }
  bool is_unit() const { return contains(ring_->one()); }
  bool is_zero() const {
    for (const auto& g : gens_)
      if (!ring_->is_zero(g)) return false;
    return true;
  }

  bool operator==(const Ideal& o) const { return contains(o) && o.contains(*this); }

  Ideal operator+(const Ideal& o) const {
    check_same_ring(o);
    auto g = gens_;
    g.insert(g.end(), o.gens_.begin(), o.gens_.end());
    return Ideal(ring_, std::move(g));
  }

  Ideal operator*(const Ideal& o) const {
    check_same_ring(o);
    std::vector<Poly> g;
    for (const auto& a : gens_)
      for (const auto& b : o.gens_) {
        Poly c = ring_->normal_form(a * b);
        if (!c.is_zero()) g.push_back(std::move(c));
      }
    return Ideal(ring_, std::move(g));
  }

  Ideal power(unsigned n) const {
    Ideal r = unit(ring_);
    for (unsigned k = 0; k < n; ++k) r = k == 0 ? *this : r * *this;
    return r;
  }

  Ideal with(const Poly& f) const {
    auto g = gens_;
    g.push_back(f);
    return Ideal(ring_, std::move(g));
  }

  // Same ideal with the Gröbner basis elements outside the defining ideal as
  // generators: a canonical presentation for display and comparison.
  Ideal simplified() const {
    if (is_unit()) return unit(ring_);
    std::vector<Poly> g;
    for (const auto& b : groebner_basis())
      if (!ring_->is_zero(b)) g.push_back(b);
    // drop generators implied by the others
    for (std::size_t i = g.size(); i-- > 0;) {
      std::vector<Poly> rest = ring_->relations();
      for (std::size_t j = 0; j < g.size(); ++j)
        if (j != i) rest.push_back(g[j]);
      if (reduce(g[i], groebner(rest)).is_zero()) g.erase(g.begin() + static_cast<std::ptrdiff_t>(i));
    }
    return Ideal(ring_, std::move(g));
  }

  std::string to_string() const {
    if (gens_.empty()) return "(0)";
    return "(" + join_polynomials(gens_) + ")";
  }

  void check_same_ring(const Ideal& o) const {
    if (ring_ != o.ring_ && !(ring_->ambient()->same_as(*o.ring_->ambient()) &&
                              same_relations(*ring_, *o.ring_)))
      throw DomainMismatch("ideals live in different rings");
  }

 private:
  static bool same_relations(const PresentedRing<D>& a, const PresentedRing<D>& b) {
    for (const auto& r : a.relations())
      if (!b.is_zero(r)) return false;
    for (const auto& r : b.relations())
      if (!a.is_zero(r)) return false;
    return true;
  }

  struct Cache {
    std::once_flag once;
    std::vector<Poly> basis;
  };

  PresentedRingPtr<D> ring_;
  std::vector<Poly> gens_;
  std::shared_ptr<Cache> cache_;
};

// numerator / denominator with a nonzero denominator
template <CoefficientDomain D>
struct FractionalIdeal {
  Ideal<D> numerator;
  Polynomial<D> denominator;

  FractionalIdeal(Ideal<D> num, Polynomial<D> den) : numerator(std::move(num)), denominator(std::move(den)) {
    if (numerator.ring()->is_zero(denominator)) throw PreconditionError("fractional ideal with zero denominator");
  }
  explicit FractionalIdeal(Ideal<D> num) : FractionalIdeal(num, num.ring()->one()) {}

  // a/d ⊆ b/e  iff  e*a ⊆ d*b
  bool contained_in(const FractionalIdeal& o) const {
    auto R = numerator.ring();
    return (o.numerator * Ideal<D>::principal(R, denominator))
        .contains(numerator * Ideal<D>::principal(R, o.denominator));
  }
  bool operator==(const FractionalIdeal& o) const { return contained_in(o) && o.contained_in(*this); }
  std::string to_string() const { return numerator.to_string() + " / (" + denominator.to_string() + ")"; }
};

}  // namespace charbert
