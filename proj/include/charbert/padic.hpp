#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coefficient_maps.hpp"

namespace charbert {

// Projective points over F_p are stored with their first nonzero coordinate 1.
using ResiduePoint = std::vector<std::uint64_t>;

inline ResiduePoint normalize_projective(ResiduePoint a, std::uint64_t p) {
  PrimeField k(p);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] % p == 0) {
      a[i] = 0;
      continue;
    }
    auto inv = k.inv(a[i] % p);
    for (std::size_t j = i; j < a.size(); ++j) a[j] = k.mul(a[j] % p, inv);
    return a;
  }
  throw PreconditionError("projective point with all coordinates zero");
}

inline std::string point_string(const ResiduePoint& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? ":" : "") + std::to_string(a[i]);
  return s + ")";
}

// Divide out the smallest p-adic valuation, then reduce mod p.
inline ResiduePoint specialize_point(const std::vector<mpz_class>& lift, const mpz_class& p) {
  std::optional<unsigned> vmin;
  for (const auto& a : lift)
    if (sgn(a) != 0) {
      unsigned v = p_adic_valuation(a, p);
      vmin = vmin ? std::min(*vmin, v) : v;
    }
  if (!vmin) throw PreconditionError("cannot specialize the zero vector");
  mpz_class scale;
  mpz_pow_ui(scale.get_mpz_t(), p.get_mpz_t(), *vmin);
  ResiduePoint out;
  for (const auto& a : lift) {
    mpz_class r = a / scale;
    r %= p;
    if (r < 0) r += p;
    out.push_back(r.get_ui());
  }
  return normalize_projective(std::move(out), p.get_ui());
}

// The root of unity (or zero) mod p^N congruent to a mod p: iterate w -> w^p.
inline mpz_class teichmuller_lift(std::uint64_t a, std::uint64_t p, unsigned N) {
  if (N == 0) throw PreconditionError("Teichmüller precision must be positive");
  mpz_class mod, w = static_cast<unsigned long>(a % p), prime = static_cast<unsigned long>(p);
  mpz_pow_ui(mod.get_mpz_t(), prime.get_mpz_t(), N);
  for (unsigned i = 0; i <= N; ++i) {
    mpz_class next;
    mpz_powm(next.get_mpz_t(), w.get_mpz_t(), prime.get_mpz_t(), mod.get_mpz_t());
    if (next == w) return w;
    w = next;
  }
  throw InternalConsistency("Teichmüller iteration did not stabilize");
}

// f / p^t with t the least valuation of a coefficient of f
inline Polynomial<Integers> normalize_pi_content(const Polynomial<Integers>& f, const mpz_class& p) {
  if (f.is_zero()) throw PreconditionError("content of the zero polynomial");
  unsigned t = ~0u;
  for (const auto& term : f.terms()) t = std::min(t, p_adic_valuation(term.coeff, p));
  mpz_class scale;
  mpz_pow_ui(scale.get_mpz_t(), p.get_mpz_t(), t);
  return f.map_coefficients(f.ring(), [&](const mpz_class& c) { return mpz_class(c / scale); });
}

struct LiftMode {
  enum class Kind { integer, teichmuller };
  Kind kind = Kind::integer;
  unsigned precision = 8;

  static LiftMode integer() { return {}; }
  static LiftMode teichmuller(unsigned N = 8) { return {Kind::teichmuller, N}; }
  std::string to_string() const {
    return kind == Kind::integer ? "integer" : "teichmuller(N=" + std::to_string(precision) + ")";
  }
};

// A point of P^d(F_p) with chosen lifts to the coefficient ring. Integer
// lifts use the representatives 0..p-1.
class HyperplanePoint {
 public:
  HyperplanePoint(ResiduePoint residues, std::uint64_t p, LiftMode mode = {})
      : p_(p), residues_(normalize_projective(std::move(residues), p)), mode_(mode) {
    for (auto r : residues_) {
      if (mode_.kind == LiftMode::Kind::teichmuller) lifts_.push_back(teichmuller_lift(r, p, mode_.precision));
      else lifts_.push_back(mpz_class(static_cast<unsigned long>(r)));
    }
  }

  std::uint64_t prime() const { return p_; }
  const ResiduePoint& residues() const { return residues_; }
  const std::vector<mpz_class>& lifts() const { return lifts_; }
  const LiftMode& mode() const { return mode_; }
  std::size_t size() const { return residues_.size(); }
  std::string to_string() const { return point_string(residues_); }

  bool operator==(const HyperplanePoint& o) const { return p_ == o.p_ && residues_ == o.residues_; }

 private:
  std::uint64_t p_;
  ResiduePoint residues_;
  LiftMode mode_;
  std::vector<mpz_class> lifts_;
};

// All points of P^d(F_p), in lexicographic order of normalized coordinates.
inline std::vector<ResiduePoint> projective_points(std::size_t d, std::uint64_t p) {
  std::vector<ResiduePoint> out;
  for (std::size_t lead = 0; lead <= d; ++lead) {
    std::size_t free = d - lead;
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < free; ++i) count *= p;
    for (std::uint64_t k = 0; k < count; ++k) {
      ResiduePoint a(d + 1, 0);
      a[lead] = 1;
      std::uint64_t rest = k;
      for (std::size_t i = d; i > lead; --i) {
        a[i] = rest % p;
        rest /= p;
      }
      out.push_back(std::move(a));
    }
  }
  return out;
}

inline std::uint64_t projective_point_count(std::size_t d, std::uint64_t p) {
  std::uint64_t total = 0, power = 1;
  for (std::size_t i = 0; i <= d; ++i) {
    total += power;
    power *= p;
  }
  return total;
}

}  // namespace charbert
