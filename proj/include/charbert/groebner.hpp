#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "polynomial.hpp"

namespace charbert {

// When module_begin is set, the variables from that index on are the basis
// symbols of a free module. Every generator must be homogeneous of degree one
// in them, and the basis is computed only in that degree: pairs between
// different basis symbols are never formed. With the basis symbols ranked
// above the ring variables this is a position-over-term module Gröbner basis.
struct GroebnerOptions {
  std::optional<std::size_t> module_begin;
};

namespace detail {

template <CoefficientDomain D>
using TermVec = std::vector<typename Polynomial<D>::Term>;

// h[from..] - q * m * g, where the leading terms are known to cancel
template <CoefficientDomain D>
TermVec<D> subtract_multiple(const PolyRing<D>& R, const TermVec<D>& h, std::size_t from,
                             const typename D::value_type& q, const Monomial& m, const Polynomial<D>& g) {
  const D& d = R.domain();
  const auto& gt = g.terms();
  TermVec<D> out;
  out.reserve(h.size() - from + gt.size());
  std::size_t i = from, j = 0;
  std::optional<Monomial> shifted;
  auto shifted_at = [&](std::size_t k) -> const Monomial& {
    shifted = gt[k].monomial * m;
    return *shifted;
  };
  bool have = false;
  while (i < h.size() || j < gt.size()) {
    if (j < gt.size() && !have) {
      shifted_at(j);
      have = true;
    }
    int c;
    if (i == h.size())
      c = -1;
    else if (j == gt.size())
      c = 1;
    else
      c = R.compare(h[i].monomial, *shifted);
    if (c > 0) {
      out.push_back(h[i++]);
    } else if (c < 0) {
      auto v = d.neg(d.mul(q, gt[j].coeff));
      if (!d.is_zero(v)) out.push_back({*shifted, std::move(v)});
      ++j;
      have = false;
    } else {
      auto v = d.sub(h[i].coeff, d.mul(q, gt[j].coeff));
      if (!d.is_zero(v)) out.push_back({h[i].monomial, std::move(v)});
      ++i;
      ++j;
      have = false;
    }
  }
  return out;
}

template <CoefficientDomain D>
const Polynomial<D>* find_reducer(const D& d, const typename Polynomial<D>::Term& t,
                                  std::span<const Polynomial<D>> G, std::size_t skip = SIZE_MAX) {
  for (std::size_t k = 0; k < G.size(); ++k) {
    if (k == skip || G[k].is_zero()) continue;
    if (G[k].leading_monomial().divides(t.monomial) && d.divides(G[k].leading_coeff(), t.coeff)) return &G[k];
  }
  return nullptr;
}

template <CoefficientDomain D>
Polynomial<D> reduce_impl(const Polynomial<D>& f, std::span<const Polynomial<D>> G, bool tails,
                          std::size_t skip = SIZE_MAX) {
  const PolyRing<D>& R = *f.ring();
  const D& d = R.domain();
  for (const auto& g : G) f.check_same_ring(g);
  TermVec<D> h = f.terms();
  TermVec<D> rem;
  std::size_t pos = 0;
  while (pos < h.size()) {
    const auto& t = h[pos];
    if (const Polynomial<D>* g = find_reducer(d, t, G, skip)) {
      auto q = d.exact_div(t.coeff, g->leading_coeff());
      Monomial m = t.monomial.quotient(g->leading_monomial());
      h = subtract_multiple(R, h, pos, q, m, *g);
      pos = 0;
    } else if (tails) {
      rem.push_back(t);
      ++pos;
    } else {
      break;
    }
  }
  if (!tails) {
    rem.insert(rem.end(), h.begin() + pos, h.end());
    return Polynomial<D>::from_sorted(f.ring(), std::move(rem));
  }
  return Polynomial<D>::from_sorted(f.ring(), std::move(rem));
}

template <CoefficientDomain D>
Polynomial<D> normalize_leading(const Polynomial<D>& f) {
  if (f.is_zero()) return f;
  const D& d = f.domain();
  if constexpr (D::is_field) {
    return f.scaled(d.inv(f.leading_coeff()));
  } else {
    return f.scaled(d.normalizer(f.leading_coeff()));
  }
}

template <CoefficientDomain D>
class Buchberger {
 public:
  using Poly = Polynomial<D>;
  using Coeff = typename D::value_type;

  Buchberger(RingPtr<D> ring, GroebnerOptions opts) : ring_(std::move(ring)), d_(ring_->domain()), opts_(opts) {}

  std::vector<Poly> run(const std::vector<Poly>& gens) {
    for (const auto& g : gens) {
      if (g.is_zero()) continue;
      if (!g.ring()->same_as(*ring_)) throw DomainMismatch("generators live in different rings");
      if (opts_.module_begin)
        for (const auto& t : g.terms())
          if (module_degree(t.monomial) != 1)
            throw Error("module generator is not of degree one in the basis symbols");
      push(Item{Item::generator, 0, 0, g.leading_monomial(), g.total_degree(), g});
    }
    while (!queue_.empty()) {
      std::pop_heap(queue_.begin(), queue_.end(), later_);
      Item it = std::move(queue_.back());
      queue_.pop_back();
      process(it);
    }
    return finish();
  }

 private:
  struct Item {
    enum Kind { generator, spair, gpair, annihilator } kind;
    std::size_t i, j;
    Monomial lcm;
    std::uint32_t sugar;
    Poly poly;
    std::size_t seq = 0;
  };

  std::uint32_t module_degree(const Monomial& m) const {
    return opts_.module_begin ? m.degree_in(*opts_.module_begin, m.size()) : 0;
  }

  void push(Item it) {
    it.seq = seq_++;
    queue_.push_back(std::move(it));
    std::push_heap(queue_.begin(), queue_.end(), later_);
  }

  void process(const Item& it) {
    Poly h(ring_);
    switch (it.kind) {
      case Item::generator:
        h = it.poly;
        break;
      case Item::spair:
        if (!pending(it.i, it.j)) return;
        set_pending(it.i, it.j, false);
        if constexpr (D::is_field) {
          if (chain_criterion(it.i, it.j, it.lcm)) return;
        }
        h = s_polynomial(it.i, it.j, it.lcm);
        break;
      case Item::gpair:
        h = g_polynomial(it.i, it.j, it.lcm);
        break;
      case Item::annihilator:
        if constexpr (!D::is_field) h = G_[it.i].scaled(d_.annihilator(G_[it.i].leading_coeff()));
        break;
    }
    h = reduce_impl<D>(h, std::span<const Poly>(G_), true);
    if (h.is_zero()) return;
    add(normalize_leading(h), it.sugar);
  }

  bool chain_criterion(std::size_t i, std::size_t j, const Monomial& L) const {
    for (std::size_t k = 0; k < G_.size(); ++k) {
      if (k == i || k == j) continue;
      if (!G_[k].leading_monomial().divides(L)) continue;
      if (!pending(i, k) && !pending(j, k)) return true;
    }
    return false;
  }

  bool pending(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return pending_[j][i];
  }
  void set_pending(std::size_t i, std::size_t j, bool v) {
    if (i > j) std::swap(i, j);
    pending_[j][i] = v;
  }

  Poly s_polynomial(std::size_t i, std::size_t j, const Monomial& L) const {
    const Poly& f = G_[i];
    const Poly& g = G_[j];
    Coeff a = f.leading_coeff(), b = g.leading_coeff();
    Coeff ca, cb;
    if constexpr (D::is_field) {
      ca = d_.inv(a);
      cb = d_.inv(b);
    } else {
      Coeff l = d_.lcm(a, b);
      ca = d_.exact_div(l, a);
      cb = d_.exact_div(l, b);
    }
    return f.mul_term(L.quotient(f.leading_monomial()), ca) - g.mul_term(L.quotient(g.leading_monomial()), cb);
  }

  Poly g_polynomial(std::size_t i, std::size_t j, const Monomial& L) const {
    const Poly& f = G_[i];
    const Poly& g = G_[j];
    if constexpr (D::is_field) {
      return Poly(ring_);
    } else {
      auto [gc, s, t] = d_.gcdext(f.leading_coeff(), g.leading_coeff());
      return f.mul_term(L.quotient(f.leading_monomial()), s) + g.mul_term(L.quotient(g.leading_monomial()), t);
    }
  }

  std::uint32_t pair_sugar(std::size_t i, std::size_t j, const Monomial& L) const {
    std::uint32_t si = sugar_[i] + L.degree() - G_[i].leading_monomial().degree();
    std::uint32_t sj = sugar_[j] + L.degree() - G_[j].leading_monomial().degree();
    return std::max(si, sj);
  }

  void add(Poly h, std::uint32_t sugar) {
    std::size_t n = G_.size();
    G_.push_back(std::move(h));
    sugar_.push_back(sugar);
    pending_.push_back(std::vector<bool>(n + 1, false));
    const Poly& g = G_[n];
    if constexpr (!D::is_field) {
      if constexpr (D::kind == CoefficientKind::residue) {
        if (!d_.is_zero(d_.annihilator(g.leading_coeff())))
          push(Item{Item::annihilator, n, n, g.leading_monomial(), sugar, Poly(ring_)});
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Poly& f = G_[i];
      Monomial L = f.leading_monomial().lcm(g.leading_monomial());
      if (opts_.module_begin && module_degree(L) > 1) continue;
      std::uint32_t s = pair_sugar(i, n, L);
      if constexpr (D::is_field) {
        if (f.leading_monomial().coprime(g.leading_monomial())) continue;
      }
      set_pending(i, n, true);
      push(Item{Item::spair, i, n, L, s, Poly(ring_)});
      if constexpr (D::kind == CoefficientKind::integer) {
        const Coeff& a = f.leading_coeff();
        const Coeff& b = g.leading_coeff();
        if (!d_.divides(a, b) && !d_.divides(b, a)) push(Item{Item::gpair, i, n, L, s, Poly(ring_)});
      }
    }
  }

  std::vector<Poly> finish() {
    const std::size_t n = G_.size();
    std::vector<bool> keep(n, true);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n && keep[i]; ++j) {
        if (i == j || !keep[j]) continue;
        const Poly& a = G_[j];
        const Poly& b = G_[i];
        if (!a.leading_monomial().divides(b.leading_monomial())) continue;
        if (!d_.divides(a.leading_coeff(), b.leading_coeff())) continue;
        bool same = a.leading_monomial() == b.leading_monomial() && d_.divides(b.leading_coeff(), a.leading_coeff());
        // equal leading terms: keep the older one
        if (!same || j < i) keep[i] = false;
      }
    }
    std::vector<Poly> basis;
    for (std::size_t i = 0; i < n; ++i)
      if (keep[i]) basis.push_back(G_[i]);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const Poly& g = basis[i];
      Poly tail = Poly::from_sorted(ring_, {g.terms().begin() + 1, g.terms().end()});
      Poly red = reduce_impl<D>(tail, std::span<const Poly>(basis), true, i);
      std::vector<typename Poly::Term> terms;
      terms.push_back(g.leading_term());
      terms.insert(terms.end(), red.terms().begin(), red.terms().end());
      basis[i] = Poly::from_sorted(ring_, std::move(terms));
    }
    std::sort(basis.begin(), basis.end(), [&](const Poly& a, const Poly& b) {
      int c = ring_->compare(a.leading_monomial(), b.leading_monomial());
      if (c) return c < 0;
      return d_.divides(a.leading_coeff(), b.leading_coeff()) && !d_.divides(b.leading_coeff(), a.leading_coeff());
    });
    return basis;
  }

  RingPtr<D> ring_;
  const D& d_;
  GroebnerOptions opts_;
  std::vector<Poly> G_;
  std::vector<std::uint32_t> sugar_;
  std::vector<std::vector<bool>> pending_;
  std::vector<Item> queue_;
  std::size_t seq_ = 0;
  // heap comparator: true when a should be processed after b
  std::function<bool(const Item&, const Item&)> later_ = [this](const Item& a, const Item& b) {
    if (a.sugar != b.sugar) return a.sugar > b.sugar;
    int c = ring_->compare(a.lcm, b.lcm);
    if (c) return c > 0;
    return a.seq > b.seq;
  };
};

}  // namespace detail

// Normal form of f with respect to G. Over rings that are not fields a term
// is rewritten only when both its monomial and its coefficient are divisible
// by a leading term of G.
template <CoefficientDomain D>
Polynomial<D> reduce(const Polynomial<D>& f, std::span<const Polynomial<D>> G) {
  return detail::reduce_impl<D>(f, G, true);
}

template <CoefficientDomain D>
Polynomial<D> reduce(const Polynomial<D>& f, const std::vector<Polynomial<D>>& G) {
  return detail::reduce_impl<D>(f, std::span<const Polynomial<D>>(G), true);
}

// Reduced Gröbner basis over a field; minimal strong Gröbner basis with
// normalized leading coefficients over Z and Z/p^N. Computed in the ring of
// the generators, i.e. with its monomial order.
template <CoefficientDomain D>
std::vector<Polynomial<D>> groebner(const std::vector<Polynomial<D>>& gens, GroebnerOptions opts = {}) {
  RingPtr<D> ring;
  for (const auto& g : gens)
    if (g.ring()) {
      ring = g.ring();
      break;
    }
  if (!ring) return {};
  return detail::Buchberger<D>(ring, opts).run(gens);
}

// Same ideal under another order; the result lives in the re-ordered ring.
template <CoefficientDomain D>
std::vector<Polynomial<D>> groebner(const std::vector<Polynomial<D>>& gens, const MonomialOrder& order) {
  if (gens.empty()) return {};
  RingPtr<D> target = gens.front().ring()->with_order(order);
  return groebner(embed_all(gens, target));
}

// f reduces to zero modulo a Gröbner basis G
template <CoefficientDomain D>
bool reduces_to_zero(const Polynomial<D>& f, const std::vector<Polynomial<D>>& G) {
  return reduce(f, G).is_zero();
}

}  // namespace charbert
