#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "../charbert.hpp"
#include "schema.hpp"

namespace charbert::cli {

struct Options {
  unsigned jobs = 1;
  std::optional<unsigned> precision;  // overrides Teichmüller precision in jobs
  std::uint64_t cap_points = 100000;
  unsigned cap_valuation = 32;
};

inline RingFlags to_flags(const FlagsSpec& f) {
  RingFlags r;
  r.domain = f.domain;
  r.complete_intersection = f.complete_intersection;
  r.cohen_macaulay = f.cohen_macaulay;
  r.codimension = f.codimension;
  return r;
}

// Calls f with the coefficient domain named by the ring description.
template <class F>
decltype(auto) with_domain(const RingSpec& r, F&& f) {
  const std::string& c = r.coefficients;
  if (c != "ZZ" && r.prime) throw SchemaError("ring: 'prime' is only meaningful with ZZ coefficients");
  if (c == "QQ") return f(Rationals{});
  if (c == "ZZ") return f(Integers{});
  if (c.size() > 4 && c.starts_with("GF(") && c.back() == ')') {
    std::uint64_t p = 0;
    for (char ch : c.substr(3, c.size() - 4)) {
      if (ch < '0' || ch > '9') throw SchemaError("ring: bad field '" + c + "'");
      p = p * 10 + static_cast<std::uint64_t>(ch - '0');
    }
    std::optional<PrimeField> k;
    try {
      k.emplace(p);
    } catch (const InvalidPrime& e) {
      throw SchemaError(std::string("ring: ") + e.what());
    }
    return f(*k);
  }
  throw SchemaError("ring: unknown coefficients '" + c + "' (expected QQ, ZZ or GF(p))");
}

// Rings and named ideals of a document, and the evaluation of the ideal,
// module and element expressions its checks use.
template <CoefficientDomain D>
class Context {
 public:
  using Poly = Polynomial<D>;

  Context(const Setting& s, D domain, Options opt) : setting_(s), options_(opt) {
    auto ambient = PolyRing<D>::make(std::move(domain), s.ring.variables);
    Uniformizer u;
    if (s.ring.prime) u.prime = mpz_class(*s.ring.prime);
    base_ = PresentedRing<D>::parse(ambient, s.ring.relations, to_flags(s.ring.flags), u);
    for (const auto& sec : s.sections) {
      if (sections_.count(sec.name)) throw SchemaError("duplicate section '" + sec.name + "'");
      sections_[sec.name] = base_->quotient(base_->elements(sec.relations), to_flags(sec.flags));
    }
    for (const auto& I : s.ideals) named_[I.name] = I.generators;
  }

  const PresentedRingPtr<D>& base() const { return base_; }
  const Options& options() const { return options_; }

  PresentedRingPtr<D> ring(const std::optional<std::string>& name) const {
    if (!name) return base_;
    auto it = sections_.find(*name);
    if (it == sections_.end()) throw SchemaError("unknown section ring '" + *name + "'");
    return it->second;
  }

  Poly poly(const PresentedRingPtr<D>& R, const json& e) const {
    if (!e.is_string()) throw SchemaError("expected a polynomial string, got " + e.dump());
    return R->element(e.get<std::string>());
  }

  std::vector<Poly> polys(const PresentedRingPtr<D>& R, const json& e) const {
    if (!e.is_array()) throw SchemaError("expected an array of polynomials, got " + e.dump());
    std::vector<Poly> out;
    for (const auto& g : e) out.push_back(poly(R, g));
    return out;
  }

  // label | [generators] | {"sum"|"product"|"intersect": [...]} |
  // {"power": [e, n]} | {"rc": e} | {"extend": e}
  Ideal<D> ideal(const PresentedRingPtr<D>& R, const json& e) const {
    if (e.is_string()) {
      auto it = named_.find(e.get<std::string>());
      if (it == named_.end()) throw SchemaError("unknown ideal label '" + e.get<std::string>() + "'");
      return Ideal<D>(R, R->elements(it->second));
    }
    if (e.is_array()) return Ideal<D>(R, polys(R, e));
    if (!e.is_object() || e.size() != 1) throw SchemaError("bad ideal expression " + e.dump());
    const std::string key = e.begin().key();
    const json& v = e.begin().value();
    if (key == "sum" || key == "product" || key == "intersect") {
      if (!v.is_array() || v.empty()) throw SchemaError(key + " needs a nonempty array");
      Ideal<D> acc = ideal(R, v[0]);
      for (std::size_t i = 1; i < v.size(); ++i) {
        Ideal<D> next = ideal(R, v[i]);
        acc = key == "sum" ? acc + next : key == "product" ? acc * next : intersect(acc, next);
      }
      return acc;
    }
    if (key == "power") {
      if (!v.is_array() || v.size() != 2 || !v[1].is_number_unsigned()) throw SchemaError("power needs [ideal, n]");
      return ideal(R, v[0]).power(v[1].get<unsigned>());
    }
    if (key == "rc") return reflexive_closure(ideal(R, v));
    if (key == "extend") return Ideal<D>(R, ideal(base_, v).generators());
    throw SchemaError("unknown ideal operation '" + key + "'");
  }

  std::vector<Ideal<D>> ideals(const PresentedRingPtr<D>& R, const json& e) const {
    if (!e.is_array()) throw SchemaError("expected an array of ideals, got " + e.dump());
    std::vector<Ideal<D>> out;
    for (const auto& I : e) out.push_back(ideal(R, I));
    return out;
  }

  // {"cyclic": [ideal, ...]} | {"presented": {"generators": m, "columns": [[...]]}} |
  // {"sum": [module, ...]} | "zero"
  ModuleRep<D> module(const PresentedRingPtr<D>& R, const json& e) const {
    if (e == "zero") return ModuleRep<D>::zero(R);
    if (!e.is_object() || e.size() != 1) throw SchemaError("bad module expression " + e.dump());
    const std::string key = e.begin().key();
    const json& v = e.begin().value();
    if (key == "cyclic") return ModuleRep<D>::cyclic(R, ideals(R, v));
    if (key == "presented") {
      std::size_t m = detail::get<std::size_t>(v, "generators", "presented");
      std::vector<Vector<D>> cols;
      for (const auto& c : detail::field(v, "columns", "presented")) cols.push_back(polys(R, c));
      try {
        return ModuleRep<D>::presented(R, m, std::move(cols));
      } catch (const PreconditionError& err) {
        throw SchemaError(std::string("presented: ") + err.what());
      }
    }
    if (key == "sum") {
      if (!v.is_array() || v.empty()) throw SchemaError("module sum needs a nonempty array");
      ModuleRep<D> acc = module(R, v[0]);
      for (std::size_t i = 1; i < v.size(); ++i) acc = direct_sum(acc, module(R, v[i]));
      return acc;
    }
    throw SchemaError("unknown module operation '" + key + "'");
  }

 private:
  Setting setting_;
  Options options_;
  PresentedRingPtr<D> base_;
  std::map<std::string, PresentedRingPtr<D>> sections_;
  std::map<std::string, std::vector<std::string>> named_;
};

template <CoefficientDomain D>
json ideal_json(const Ideal<D>& I) {
  json out = json::array();
  if (I.is_zero()) return out;
  Ideal<D> s = I.simplified();
  for (const auto& g : s.generators()) out.push_back(g.to_string());
  return out;
}

}  // namespace charbert::cli
