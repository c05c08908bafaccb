#pragma once

#include <vector>

#include "ring.hpp"

namespace charbert {

template <CoefficientDomain D>
using Vector = std::vector<Polynomial<D>>;

// Free-module elements encoded as polynomials linear in fresh basis symbols.
// Variable layout: ring variables, then `tags` symbols F_j recording how an
// element was combined, then `rank` symbols E_k for the module itself. The
// block order compares the E block first, then F, then the ring variables,
// so basis elements free of every E_k form a basis of the elimination
// submodule (position-over-term).
template <CoefficientDomain D>
class ModuleEncoding {
 public:
  using Poly = Polynomial<D>;

  ModuleEncoding(const RingPtr<D>& base, std::size_t tags, std::size_t rank)
      : base_(base), n_(base->nvars()), tags_(tags), rank_(rank) {
    std::vector<std::string> extra;
    for (std::size_t j = 0; j < tags; ++j) extra.push_back("F" + std::to_string(j + 1));
    for (std::size_t k = 0; k < rank; ++k) extra.push_back("E" + std::to_string(k + 1));
    std::vector<std::size_t> starts{0, n_};
    if (tags > 0 && rank > 0) starts.push_back(n_ + tags);
    ring_ = base->extended(extra, MonomialOrder::block(starts));
  }

  const RingPtr<D>& ring() const { return ring_; }
  GroebnerOptions options() const { return GroebnerOptions{n_}; }

  Poly basis(std::size_t k) const { return Poly::variable(ring_, n_ + tags_ + k); }
  Poly tag(std::size_t j) const { return Poly::variable(ring_, n_ + j); }

  Poly encode(const Vector<D>& v) const {
    if (v.size() != rank_) throw DomainMismatch("vector length differs from the module rank");
    Poly out(ring_);
    for (std::size_t k = 0; k < rank_; ++k)
      if (!v[k].is_zero()) out += v[k].embed(ring_) * basis(k);
    return out;
  }

  bool free_of_basis(const Poly& f) const {
    for (const auto& t : f.terms())
      if (t.monomial.degree_in(n_ + tags_, n_ + tags_ + rank_)) return false;
    return true;
  }

  // coefficients of the tag symbols (or basis symbols) of a linear element
  Vector<D> decode_tags(const Poly& f) const { return decode(f, n_, tags_); }
  Vector<D> decode(const Poly& f) const { return decode(f, n_ + tags_, rank_); }

 private:
  Vector<D> decode(const Poly& f, std::size_t begin, std::size_t count) const {
    std::vector<std::vector<typename Poly::Term>> parts(count);
    for (const auto& t : f.terms()) {
      for (std::size_t k = 0; k < count; ++k) {
        if (!t.monomial[begin + k]) continue;
        Monomial::Storage e(t.monomial.exponents().begin(), t.monomial.exponents().begin() + n_);
        parts[k].push_back({Monomial(std::move(e)), t.coeff});
        break;
      }
    }
    Vector<D> out;
    for (auto& p : parts) out.push_back(Poly(base_, std::move(p)));
    return out;
  }

  RingPtr<D> base_;
  RingPtr<D> ring_;
  std::size_t n_, tags_, rank_;
};

namespace detail {

template <CoefficientDomain D>
void add_relation_multiples(const PresentedRing<D>& R, const ModuleEncoding<D>& enc, std::size_t rank,
                            std::vector<Polynomial<D>>& gens) {
  for (const auto& r : R.relations())
    for (std::size_t k = 0; k < rank; ++k) gens.push_back(r.embed(enc.ring()) * enc.basis(k));
}

}  // namespace detail

// Submodule N of R^rank spanned by the given columns (modulo the defining
// ideal), with a Gröbner basis for membership.
template <CoefficientDomain D>
class Submodule {
 public:
  Submodule(PresentedRingPtr<D> R, std::size_t rank, const std::vector<Vector<D>>& columns)
      : R_(std::move(R)), rank_(rank), enc_(R_->ambient(), 0, rank) {
    std::vector<Polynomial<D>> gens;
    for (const auto& c : columns) gens.push_back(enc_.encode(c));
    detail::add_relation_multiples(*R_, enc_, rank, gens);
    basis_ = groebner(gens, enc_.options());
  }

  bool contains(const Vector<D>& v) const { return reduce(enc_.encode(v), basis_).is_zero(); }
  std::size_t rank() const { return rank_; }

 private:
  PresentedRingPtr<D> R_;
  std::size_t rank_;
  ModuleEncoding<D> enc_;
  std::vector<Polynomial<D>> basis_;
};

// (N : m) = { a in R : a m in N }, N spanned by columns plus the defining ideal.
template <CoefficientDomain D>
std::vector<Polynomial<D>> module_colon(const PresentedRing<D>& R, std::size_t rank,
                                        const std::vector<Vector<D>>& columns, const Vector<D>& m) {
  ModuleEncoding<D> enc(R.ambient(), 1, rank);
  std::vector<Polynomial<D>> gens;
  for (const auto& c : columns) gens.push_back(enc.encode(c));
  detail::add_relation_multiples(R, enc, rank, gens);
  gens.push_back(enc.encode(m) + enc.tag(0));
  std::vector<Polynomial<D>> out;
  for (const auto& g : groebner(gens, enc.options()))
    if (enc.free_of_basis(g)) out.push_back(enc.decode_tags(g)[0]);
  return out;
}

// (N :_{R^rank} x) = { v : x v in N }, returned as spanning vectors.
template <CoefficientDomain D>
std::vector<Vector<D>> submodule_colon(const PresentedRing<D>& R, std::size_t rank,
                                       const std::vector<Vector<D>>& columns, const Polynomial<D>& x) {
  ModuleEncoding<D> enc(R.ambient(), rank, rank);
  std::vector<Polynomial<D>> gens;
  for (const auto& c : columns) gens.push_back(enc.encode(c));
  detail::add_relation_multiples(R, enc, rank, gens);
  Polynomial<D> xe = x.embed(enc.ring());
  for (std::size_t k = 0; k < rank; ++k) gens.push_back(xe * enc.basis(k) + enc.tag(k));
  std::vector<Vector<D>> out;
  for (const auto& g : groebner(gens, enc.options()))
    if (enc.free_of_basis(g)) out.push_back(enc.decode_tags(g));
  return out;
}

// Syzygies of the columns g_1..g_s modulo the defining ideal: tuples a with
// sum a_j g_j = 0 in R^rank.
template <CoefficientDomain D>
std::vector<Vector<D>> syzygies(const PresentedRing<D>& R, std::size_t rank, const std::vector<Vector<D>>& columns) {
  ModuleEncoding<D> enc(R.ambient(), columns.size(), rank);
  std::vector<Polynomial<D>> gens;
  for (std::size_t j = 0; j < columns.size(); ++j) gens.push_back(enc.encode(columns[j]) + enc.tag(j));
  detail::add_relation_multiples(R, enc, rank, gens);
  std::vector<Vector<D>> out;
  for (const auto& g : groebner(gens, enc.options()))
    if (enc.free_of_basis(g)) out.push_back(enc.decode_tags(g));
  return out;
}

}  // namespace charbert
