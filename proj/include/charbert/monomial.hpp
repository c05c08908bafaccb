#pragma once

#include <boost/container/small_vector.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace charbert {

using Exponent = std::uint16_t;

class Monomial {
 public:
  using Storage = boost::container::small_vector<Exponent, 12>;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(Storage exps) : exps_(std::move(exps)) { refresh(); }
  Monomial(std::initializer_list<Exponent> exps) : exps_(exps) { refresh(); }

  static Monomial variable(std::size_t nvars, std::size_t index, Exponent e = 1) {
    Monomial m(nvars);
    m.exps_[index] = e;
    m.refresh();
    return m;
  }

  std::size_t size() const { return exps_.size(); }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  const Storage& exponents() const { return exps_; }
  std::uint32_t degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  // degree in the variables [begin, end)
  std::uint32_t degree_in(std::size_t begin, std::size_t end) const {
    std::uint32_t d = 0;
    for (std::size_t i = begin; i < end; ++i) d += exps_[i];
    return d;
  }

  bool divides(const Monomial& o) const {
    if (mask_ & ~o.mask_) return false;
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > o.exps_[i]) return false;
    return true;
  }

  // the caller guarantees divisibility
  Monomial quotient(const Monomial& d) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= d.exps_[i];
    r.refresh();
    return r;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      unsigned e = unsigned(exps_[i]) + o.exps_[i];
      if (e > 0xFFFF) throw Error("exponent overflow");
      r.exps_[i] = static_cast<Exponent>(e);
    }
    r.refresh();
    return r;
  }

  Monomial lcm(const Monomial& o) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = std::max(exps_[i], o.exps_[i]);
    r.refresh();
    return r;
  }

  Monomial gcd(const Monomial& o) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = std::min(exps_[i], o.exps_[i]);
    r.refresh();
    return r;
  }

  bool coprime(const Monomial& o) const {
    if ((mask_ & o.mask_) == 0) return true;
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] && o.exps_[i]) return false;
    return true;
  }

  // append or drop trailing variables
  Monomial resized(std::size_t nvars) const {
    Storage e(exps_.begin(), exps_.begin() + std::min(nvars, exps_.size()));
    e.resize(nvars, 0);
    return Monomial(std::move(e));
  }

  bool operator==(const Monomial& o) const { return degree_ == o.degree_ && exps_ == o.exps_; }

  std::size_t hash() const {
    std::size_t h = degree_;
    for (Exponent e : exps_) h = h * 1000003u + e;
    return h;
  }

 private:
  void refresh() {
    degree_ = 0;
    mask_ = 0;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      degree_ += exps_[i];
      if (exps_[i]) mask_ |= std::uint64_t(1) << (i & 63);
    }
  }

  Storage exps_;
  std::uint32_t degree_ = 0;
  std::uint64_t mask_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

class MonomialOrder {
 public:
  enum class Kind { grevlex, lex, block };

  static MonomialOrder grevlex() { return MonomialOrder(Kind::grevlex, {}); }
  static MonomialOrder lex() { return MonomialOrder(Kind::lex, {}); }
  // Variables are cut into consecutive blocks starting at the given indices
  // (the first block always starts at 0). Blocks are compared from the last
  // one backwards, each by grevlex, so trailing variables are eliminated first.
  static MonomialOrder block(std::vector<std::size_t> starts) {
    if (starts.empty() || starts.front() != 0) starts.insert(starts.begin(), 0);
    for (std::size_t i = 1; i < starts.size(); ++i)
      if (starts[i] <= starts[i - 1]) throw Error("block order starts must increase");
    return MonomialOrder(Kind::block, std::move(starts));
  }
  static MonomialOrder elimination(std::size_t split) { return block({0, split}); }

  Kind kind() const { return kind_; }
  const std::vector<std::size_t>& block_starts() const { return starts_; }

  // <0, 0, >0 as a is smaller, equal, larger than b
  int compare(const Monomial& a, const Monomial& b) const {
    switch (kind_) {
      case Kind::grevlex:
        return grevlex_range(a, b, 0, a.size(), a.degree(), b.degree());
      case Kind::lex:
        for (std::size_t i = 0; i < a.size(); ++i)
          if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
        return 0;
      case Kind::block:
        for (std::size_t k = starts_.size(); k-- > 0;) {
          std::size_t lo = std::min(starts_[k], a.size());
          std::size_t hi = k + 1 < starts_.size() ? std::min(starts_[k + 1], a.size()) : a.size();
          if (lo >= hi) continue;
          int c = grevlex_range(a, b, lo, hi, a.degree_in(lo, hi), b.degree_in(lo, hi));
          if (c) return c;
        }
        return 0;
    }
    return 0;
  }

  std::string describe() const {
    switch (kind_) {
      case Kind::grevlex: return "grevlex";
      case Kind::lex: return "lex";
      case Kind::block: {
        std::string s = "block(";
        for (std::size_t i = 0; i < starts_.size(); ++i) s += (i ? "," : "") + std::to_string(starts_[i]);
        return s + ")";
      }
    }
    return "?";
  }

  bool operator==(const MonomialOrder&) const = default;

 private:
  MonomialOrder(Kind k, std::vector<std::size_t> starts) : kind_(k), starts_(std::move(starts)) {}

  static int grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi,
                           std::uint32_t da, std::uint32_t db) {
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = hi; i-- > lo;)
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    return 0;
  }

  Kind kind_;
  std::vector<std::size_t> starts_;
};

}  // namespace charbert
