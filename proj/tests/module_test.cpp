#include <gtest/gtest.h>

#include "support.hpp"

using namespace charbert;
using namespace testing_support;

namespace {

using QM = ModuleRep<Rationals>;

QM cyclic(const PresentedRingPtr<Rationals>& R, std::vector<std::vector<std::string>> ideals) {
  std::vector<Ideal<Rationals>> out;
  for (auto& g : ideals) out.push_back(I(R, g));
  return QM::cyclic(R, std::move(out));
}

QM random_presented(std::mt19937_64& rng, const PresentedRingPtr<Rationals>& R, std::size_t rows, std::size_t cols) {
  std::vector<Vector<Rationals>> c;
  for (std::size_t j = 0; j < cols; ++j) {
    Vector<Rationals> v;
    for (std::size_t i = 0; i < rows; ++i) v.push_back(random_poly(rng, R->ambient(), 2, 2, 3));
    c.push_back(std::move(v));
  }
  return QM::presented(R, rows, std::move(c));
}

Ideal<Rationals> random_ideal(std::mt19937_64& rng, const PresentedRingPtr<Rationals>& R, int maxgens) {
  std::vector<Polynomial<Rationals>> g;
  int n = std::uniform_int_distribution<int>(1, maxgens)(rng);
  for (int k = 0; k < n; ++k) g.push_back(random_poly(rng, R->ambient(), 2, 2, 3));
  return Ideal<Rationals>(R, std::move(g));
}

Polynomial<Rationals> random_linear(std::mt19937_64& rng, const PresentedRingPtr<Rationals>& R) {
  std::uniform_int_distribution<int> c(-3, 3);
  int a = c(rng), b = c(rng);
  if (a == 0 && b == 0) a = 1;
  return R->constant(a) * R->variable(0) + R->constant(b) * R->variable(1) + R->constant(c(rng));
}

// image of an ideal in R/(x)
Ideal<Rationals> mod_x(const Ideal<Rationals>& J, const PresentedRingPtr<Rationals>& Rx) {
  return Ideal<Rationals>(Rx, J.generators());
}

// u^a * g with g not divisible by u (g(0, v) != 0)
Polynomial<Rationals> with_u_order(std::mt19937_64& rng, const PresentedRingPtr<Rationals>& R, unsigned a) {
  auto g = random_poly(rng, R->ambient(), 2, 2, 3);
  g = g + R->element("v^3 + 1");
  auto at_zero = g.substitute({R->zero(), R->variable(1)});
  if (at_zero.is_zero()) g = g + R->one();
  return R->variable(0).pow(a) * g;
}

std::string monomial_text(unsigned a, unsigned b) {
  return "u^" + std::to_string(a) + "*v^" + std::to_string(b);
}

}  // namespace

TEST(Fitting, Examples) {
  auto R = poly_ring({"u", "v"});
  EXPECT_EQ(fitting_ideal(cyclic(R, {{"u^2 + v", "v^3"}})), I(R, {"u^2 + v", "v^3"}));
  EXPECT_EQ(fitting_ideal(cyclic(R, {{"u"}, {"v"}})), I(R, {"u*v"}));
  auto diag = QM::presented(R, 2, {{R->element("u"), R->zero()}, {R->zero(), R->element("v")}});
  EXPECT_EQ(fitting_ideal(diag), I(R, {"u*v"}));
  EXPECT_TRUE(fitting_ideal(QM::presented(R, 2, {{R->element("u"), R->zero()}})).is_zero());
  EXPECT_TRUE(fitting_ideal(QM::zero(R)).is_unit());

  auto C = cone();
  auto meet = intersect(I(C, {"a", "b"}), I(C, {"b", "c"}));
  EXPECT_EQ(fitting_ideal(QM::cyclic(meet)), meet);
}

TEST(Annihilator, Examples) {
  auto R = poly_ring({"u", "v"});
  EXPECT_EQ(annihilator(cyclic(R, {{"u"}, {"v"}})), I(R, {"u*v"}));
  EXPECT_EQ(annihilator(cyclic(R, {{"u^2", "v"}})), I(R, {"u^2", "v"}));
  EXPECT_EQ(annihilator(cyclic(R, {{"u^2"}, {"u^3"}})), I(R, {"u^3"}));
  EXPECT_THROW(annihilator(QM::presented(R, 1, {{R->element("u")}})), UnsupportedRepresentation);
}

TEST(QuotientModElement, Examples) {
  auto R = poly_ring({"u", "v"});
  auto q = quotient_mod_element(cyclic(R, {{"u*v"}}), R->element("u + v"));
  EXPECT_EQ(q.cyclic_sum().ideals.at(0), I(R, {"u*v", "u + v"}));
  EXPECT_TRUE(quotient_mod_element(QM::zero(R), R->element("u")).cyclic_sum().ideals.empty());
  auto r = quotient_mod_element(cyclic(R, {{"u^2"}}), R->element("u"));
  EXPECT_EQ(r.cyclic_sum().ideals.at(0), I(R, {"u"}));
  auto p = quotient_mod_element(QM::presented(R, 1, {{R->element("u^2")}}), R->element("u"));
  EXPECT_EQ(p.presentation().columns.size(), 2u);
  EXPECT_EQ(fitting_ideal(p), I(R, {"u"}));
}

TEST(TorsionKernel, Examples) {
  auto R = poly_ring({"u", "v"});
  auto k = torsion_kernel(cyclic(R, {{"u*v"}}), R->element("u"));
  EXPECT_EQ(fitting_ideal(k), I(R, {"u"}));
  auto none = torsion_kernel(cyclic(R, {{"u^2 + v^2 + 1"}}), R->element("u"));
  EXPECT_TRUE(none.is_cyclic_sum() && none.cyclic_sum().ideals.empty());
  EXPECT_EQ(fitting_ideal(torsion_kernel(cyclic(R, {{"u^2"}}), R->element("u"))), I(R, {"u"}));
  // presented input over a field: coker of diag(u^2, v) killed by u has kernel (u)/(u^2)
  auto M = QM::presented(R, 2, {{R->element("u^2"), R->zero()}, {R->zero(), R->element("v")}});
  EXPECT_EQ(fitting_ideal(torsion_kernel(M, R->element("u"))), I(R, {"u"}));

  auto Z = integer_ring({"x", "y"}, {}, 5);
  auto ZM = ModuleRep<Integers>::presented(Z, 1, {{Z->element("x")}});
  EXPECT_THROW(torsion_kernel(ZM, Z->element("x")), UnsupportedRepresentation);
  // cyclic sums over the integers go through ideal colons
  auto zk = torsion_kernel(ModuleRep<Integers>::cyclic(I(Z, {"5*x"})), Z->element("5"));
  EXPECT_EQ(fitting_ideal(zk), I(Z, {"5"}));
}

TEST(PseudoNull, Examples) {
  auto R = poly_ring({"x", "y"});
  EXPECT_TRUE(is_pseudo_null(cyclic(R, {{"x", "y"}})));
  EXPECT_FALSE(is_pseudo_null(cyclic(R, {{"x"}})));
  EXPECT_TRUE(is_pseudo_null(QM::zero(R)));
  auto Z = integer_ring({"x", "y"}, {}, 5);
  using ZM = ModuleRep<Integers>;
  EXPECT_TRUE(is_pseudo_null(ZM::cyclic(I(Z, {"x", "y"}))));
  EXPECT_TRUE(is_pseudo_null(ZM::cyclic(I(Z, {"p", "x"}))));
  EXPECT_FALSE(is_pseudo_null(ZM::cyclic(I(Z, {"p"}))));
  EXPECT_FALSE(is_pseudo_null(ZM::cyclic(I(Z, {"x + p"}))));
}

TEST(Length, Examples) {
  auto R = poly_ring({"u", "v"});
  EXPECT_EQ(length_at(cyclic(R, {{"u"}}), I(R, {"u"}), 8), 1u);
  EXPECT_EQ(length_at(cyclic(R, {{"u^2"}}), I(R, {"u"}), 8), 2u);
  EXPECT_EQ(length_at(cyclic(R, {{"u^2"}}), I(R, {"v"}), 8), 0u);
  auto C = cone();
  auto p = I(C, {"a", "b"}), q = I(C, {"b", "c"});
  EXPECT_EQ(length_at(QM::cyclic(intersect(p, q)), p, 8), 1u);
  EXPECT_EQ(length_at(QM::cyclic(intersect(p, q)), q, 8), 1u);
  EXPECT_THROW(length_at(QM::presented(R, 1, {}), I(R, {"u"}), 8), NonTorsion);
  EXPECT_THROW(length_at(cyclic(R, {{"u^5"}}), I(R, {"u"}), 4), CapExceeded);
}

TEST(DivisorData, Examples) {
  auto R = poly_ring({"u", "v"});
  auto d = divisor_data(cyclic(R, {{"u*v"}}), {I(R, {"u"}), I(R, {"v"})}, 8);
  ASSERT_EQ(d.entries.size(), 2u);
  EXPECT_EQ(d.entries[0].second, 1u);
  EXPECT_EQ(d.entries[1].second, 1u);
  EXPECT_THROW(divisor_data(cyclic(R, {{"u*v"}}), {I(R, {"u"})}, 8), MissingPrime);
  EXPECT_THROW(divisor_data(cyclic(R, {{"u"}}), {I(R, {"u"}), I(R, {"u"})}, 8), PreconditionError);

  auto C = cone();
  auto p = I(C, {"a", "b"}), q = I(C, {"b", "c"});
  auto e = divisor_data(QM::cyclic(intersect(p, q)), {p, q}, 8);
  ASSERT_EQ(e.entries.size(), 2u);
  EXPECT_EQ(e.entries[0].second, 1u);
  EXPECT_EQ(e.entries[1].second, 1u);
  // a prime outside the support is dropped
  auto f = divisor_data(cyclic(R, {{"u^2"}}), {I(R, {"u"}), I(R, {"v"})}, 8);
  ASSERT_EQ(f.entries.size(), 1u);
  EXPECT_EQ(f.entries[0].second, 2u);
}

// Fitting ideals commute with base change to R/(x), for presentations and
// cyclic sums.
TEST(ModuleProperties, FittingBaseChange) {
  std::mt19937_64 rng(91);
  auto R = poly_ring({"u", "v"});
  for (int iter = 0; iter < 200; ++iter) {
    auto x = random_linear(rng, R);
    auto Rx = R->quotient({x}, {});
    QM M = iter % 2 ? random_presented(rng, R, 2, 3)
                    : QM::cyclic(R, {random_ideal(rng, R, 2), random_ideal(rng, R, 2)});
    auto lhs = mod_x(fitting_ideal(quotient_mod_element(M, x)), Rx);
    auto rhs = mod_x(fitting_ideal(M), Rx);
    ASSERT_EQ(lhs, rhs) << M.to_string() << " mod " << x;
  }
}

TEST(ModuleProperties, FittingOfDirectSum) {
  std::mt19937_64 rng(92);
  auto R = poly_ring({"u", "v"});
  for (int iter = 0; iter < 200; ++iter) {
    QM L = random_presented(rng, R, 2, 3);
    QM N = iter % 2 ? random_presented(rng, R, 1, 2) : QM::cyclic(random_ideal(rng, R, 2));
    auto prod = fitting_ideal(L) * fitting_ideal(N);
    auto sum = fitting_ideal(direct_sum(L, N));
    ASSERT_TRUE(sum.contains(prod)) << L.to_string() << " + " << N.to_string();
    ASSERT_EQ(sum, prod) << L.to_string() << " + " << N.to_string();
  }
}

TEST(ModuleProperties, FittingInsideAnnihilator) {
  std::mt19937_64 rng(93);
  auto R = poly_ring({"u", "v"});
  for (int iter = 0; iter < 200; ++iter) {
    int k = std::uniform_int_distribution<int>(1, 3)(rng);
    std::vector<Ideal<Rationals>> ideals;
    for (int i = 0; i < k; ++i) ideals.push_back(random_ideal(rng, R, 2));
    QM M = QM::cyclic(R, ideals);
    ASSERT_TRUE(annihilator(M).contains(fitting_ideal(M))) << M.to_string();
  }
}

// M = R/(u^a v^b g) with g prime to u: M[u] is (u^{a-1} v^b g)/(u^a v^b g) = R/(u)
// when a >= 1 and zero otherwise.
TEST(ModuleProperties, TorsionKernelKilledByElement) {
  std::mt19937_64 rng(94);
  auto R = poly_ring({"u", "v"});
  auto u = R->element("u");
  for (int iter = 0; iter < 200; ++iter) {
    unsigned a = std::uniform_int_distribution<unsigned>(0, 3)(rng);
    unsigned b = std::uniform_int_distribution<unsigned>(0, 2)(rng);
    auto f = with_u_order(rng, R, a) * R->variable(1).pow(b);
    auto K = torsion_kernel(QM::cyclic(Ideal<Rationals>::principal(R, f)), u);
    if (a == 0) {
      ASSERT_TRUE(K.is_cyclic_sum() && K.cyclic_sum().ideals.empty()) << f;
      continue;
    }
    const auto& P = K.presentation();
    Submodule<Rationals> N(R, P.generators, P.columns);
    for (std::size_t j = 0; j < P.generators; ++j) {
      Vector<Rationals> v(P.generators, R->zero());
      v[j] = u;
      ASSERT_TRUE(N.contains(v));
    }
    ASSERT_EQ(fitting_ideal(K), I(R, {"u"})) << f;
  }
  // presented inputs over a field
  for (int iter = 0; iter < 200; ++iter) {
    QM M = random_presented(rng, R, 2, 2);
    auto x = iter % 2 ? u : random_linear(rng, R);
    auto K = torsion_kernel(M, x);
    if (K.is_cyclic_sum()) continue;
    const auto& P = K.presentation();
    Submodule<Rationals> N(R, P.generators, P.columns);
    for (std::size_t j = 0; j < P.generators; ++j) {
      Vector<Rationals> v(P.generators, R->zero());
      v[j] = x;
      ASSERT_TRUE(N.contains(v)) << M.to_string();
    }
  }
}

TEST(ModuleProperties, LengthIsAdditive) {
  std::mt19937_64 rng(95);
  auto R = poly_ring({"u", "v"});
  auto P = I(R, {"u"});
  for (int iter = 0; iter < 200; ++iter) {
    std::uniform_int_distribution<unsigned> e(0, 3);
    unsigned a1 = e(rng), a2 = e(rng), b = e(rng);
    // (u^a1 g, u^a2 h) localizes to (u^min) at (u)
    Ideal<Rationals> L(R, {with_u_order(rng, R, a1), with_u_order(rng, R, a2)});
    Ideal<Rationals> N(R, {with_u_order(rng, R, b)});
    unsigned lL = length_at(QM::cyclic(L), P, 8);
    unsigned lN = length_at(QM::cyclic(N), P, 8);
    ASSERT_EQ(lL, std::min(a1, a2));
    ASSERT_EQ(lN, b);
    ASSERT_EQ(length_at(QM::cyclic(R, {L, N}), P, 8), lL + lN);
    ASSERT_EQ(length_at(direct_sum(QM::presented(R, 1, {{L.generators()[0]}, {L.generators().back()}}),
                                   QM::cyclic(N)),
                        P, 8),
              lL + lN);
  }
}

// Monomial supports lie on the two axes, so {(u), (v)} covers every height-one prime.
TEST(ModuleProperties, PseudoNullIffLengthsVanishOnCover) {
  std::mt19937_64 rng(96);
  auto R = poly_ring({"u", "v"});
  std::vector<Ideal<Rationals>> cover{I(R, {"u"}), I(R, {"v"})};
  std::uniform_int_distribution<unsigned> e(0, 3);
  for (int iter = 0; iter < 200; ++iter) {
    int k = std::uniform_int_distribution<int>(1, 2)(rng);
    std::vector<Ideal<Rationals>> ideals;
    for (int i = 0; i < k; ++i) {
      std::vector<std::string> g;
      int n = std::uniform_int_distribution<int>(1, 3)(rng);
      for (int j = 0; j < n; ++j) g.push_back(monomial_text(e(rng), e(rng)));
      ideals.push_back(I(R, g));
    }
    QM M = QM::cyclic(R, ideals);
    bool lengths_zero = true;
    for (const auto& P : cover) lengths_zero = lengths_zero && length_at(M, P, 16) == 0;
    ASSERT_EQ(is_pseudo_null(M), lengths_zero) << M.to_string();
  }
}
