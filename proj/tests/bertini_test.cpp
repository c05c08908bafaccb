#include <gtest/gtest.h>

#include "oracle.hpp"
#include "support.hpp"

using namespace charbert;
using namespace testing_support;

namespace {

// Z[x1,x2,x3]/(x1^2 + x2^2 + x3^2), the isotropic quadric over Z_p
PresentedRingPtr<Integers> quadric(long p) { return integer_ring({"x1", "x2", "x3"}, {"x1^2 + x2^2 + x3^2"}, p); }

PresentedRingPtr<PrimeField> quadric_mod(std::uint64_t p) {
  RingFlags f;
  f.complete_intersection = true;
  return PresentedRing<PrimeField>::parse(ring(PrimeField(p), {"x1", "x2", "x3"}), {"x1^2 + x2^2 + x3^2"}, f);
}

HyperplanePoint pt(ResiduePoint a, std::uint64_t p, LiftMode mode = {}) { return HyperplanePoint(std::move(a), p, mode); }

std::vector<mpz_class> Z(std::vector<long> v) {
  std::vector<mpz_class> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

}  // namespace

TEST(Kahler, Examples) {
  auto R = quadric(5);
  auto omega = kahler_presentation(R);
  ASSERT_EQ(omega.gradients.size(), 1u);
  EXPECT_EQ(omega.gradients[0], (Vector<Integers>{R->element("2x1"), R->element("2x2"), R->element("2x3")}));

  auto Zx = integer_ring({"x"}, {}, 5);
  auto free = kahler_presentation(Zx);
  EXPECT_TRUE(free.gradients.empty());
  EXPECT_TRUE(free.differential(Zx->element("p"))[0].is_zero());

  auto uv = PresentedRing<Rationals>::parse(qring({"u", "v"}), {"u*v"});
  EXPECT_EQ(kahler_presentation(uv).gradients[0], (Vector<Rationals>{uv->element("v"), uv->element("u")}));
}

TEST(Basic, Examples) {
  auto R = quadric(5);
  auto omega = kahler_presentation(R);
  auto m = I(R, {"x1", "x2", "x3"});
  EXPECT_TRUE(is_basic_at(omega.differential(R->element("x1")), omega, m));
  EXPECT_FALSE(is_basic_at(omega.differential(R->zero()), omega, m));

  auto Q = poly_ring({"u", "v"});
  auto F = ModuleRep<Rationals>::presented(Q, 2, {});
  EXPECT_TRUE(is_basic_at({Q->one(), Q->element("u")}, F, I(Q, {"u", "v"})));
  EXPECT_FALSE(is_basic_at({Q->element("u"), Q->element("v^2")}, F, I(Q, {"u", "v"})));
}

TEST(SymbolicSquare, Examples) {
  auto Zx = integer_ring({"x"}, {}, 5);
  auto t = not_in_symbolic_square(Zx->element("p"), I(Zx, {"p"}));
  EXPECT_TRUE(t.outside);
  EXPECT_FALSE(t.differential_basic);
  EXPECT_TRUE(t.direct);
  EXPECT_EQ(t.method, "direct");

  auto R = quadric(5);
  auto m = I(R, {"p", "x1", "x2", "x3"});
  EXPECT_TRUE(not_in_symbolic_square(R->element("p + x1"), m).outside);
  auto sq = not_in_symbolic_square(R->element("x1*x2"), m);
  EXPECT_FALSE(sq.outside);

  auto Q = poly_ring({"u", "v"});
  auto d = not_in_symbolic_square(Q->element("u + v^2"), I(Q, {"u", "v"}));
  EXPECT_TRUE(d.outside);
  EXPECT_EQ(d.method, "differential");
}

TEST(Singular, FieldExamples) {
  auto F5 = quadric_mod(5);
  auto S = singular_ideal(F5);
  auto m = I(F5, {"x1", "x2", "x3"});
  EXPECT_TRUE(radical_contains(S, m));
  EXPECT_TRUE(radical_contains(m, S));
  // m^N ⊆ S for some N <= 4
  bool power_inside = false;
  for (unsigned n = 1; n <= 4 && !power_inside; ++n) power_inside = S.contains(m.power(n));
  EXPECT_TRUE(power_inside);

  auto uv = PresentedRing<Rationals>::parse(qring({"u", "v"}), {"u*v"}, RingFlags{false, true, false, {}});
  EXPECT_EQ(singular_ideal(uv), I(uv, {"u", "v"}));
  EXPECT_TRUE(singular_ideal(poly_ring({"x"})).is_unit());
  EXPECT_THROW(singular_ideal(PresentedRing<Rationals>::parse(qring({"u", "v"}), {"u*v"})), UnsupportedRepresentation);
}

TEST(Singular, IntegerModels) {
  for (long p : {5L, 7L}) {
    auto R = quadric(p);
    auto S = singular_ideal(R);
    ASSERT_TRUE(S.generic && S.special);
    auto mq = I(S.generic_ring, {"x1", "x2", "x3"});
    auto mp = I(S.special_ring, {"x1", "x2", "x3"});
    EXPECT_TRUE(radical_contains(*S.generic, mq) && radical_contains(mq, *S.generic));
    EXPECT_TRUE(radical_contains(*S.special, mp) && radical_contains(mp, *S.special));
  }
  // p = xy: the special fiber is a node but the ring is regular
  auto E = integer_ring({"x", "y"}, {"p - x*y"}, 5);
  auto SE = singular_ideal(E);
  EXPECT_FALSE(SE.generic && !SE.generic->is_unit());
  ASSERT_TRUE(SE.special);
  EXPECT_TRUE(SE.special->is_unit());
  // x^2 = p^2 is singular at (p, x)
  auto N = integer_ring({"x"}, {"x^2 - p^2"}, 5);
  auto SN = singular_ideal(N);
  ASSERT_TRUE(SN.special);
  EXPECT_FALSE(SN.special->is_unit());
  EXPECT_TRUE(radical_contains(*SN.special, SN.special_ring->element("x")));
}

TEST(Serre, Examples) {
  auto R = quadric(5);
  EXPECT_EQ(serre_condition(R, SerreCondition::parse("R1")).status, Status::pass);
  EXPECT_EQ(serre_condition(R, SerreCondition::parse("S2")).status, Status::pass);
  EXPECT_EQ(is_normal(R).verdict(), Verdict::pass);

  auto uv = PresentedRing<Rationals>::parse(qring({"u", "v"}), {"u*v"}, RingFlags{false, true, false, {}});
  EXPECT_EQ(serre_condition(uv, {'R', 1}).status, Status::fail);
  EXPECT_EQ(serre_condition(uv, {'R', 0}).status, Status::pass);
  EXPECT_EQ(is_normal(uv).verdict(), Verdict::fail);

  auto A = poly_ring({"x", "y"});
  for (int n = 0; n < 4; ++n) {
    EXPECT_EQ(serre_condition(A, {'R', n}).status, Status::pass);
    EXPECT_EQ(serre_condition(A, {'S', n}).status, Status::pass);
  }
  EXPECT_EQ(is_normal(cone()).verdict(), Verdict::pass);

  RingFlags codim_only;
  codim_only.codimension = 1;
  auto plain = PresentedRing<Rationals>::parse(qring({"a", "b", "c"}), {"b^2 - a*c"}, codim_only);
  EXPECT_EQ(serre_condition(plain, {'S', 2}).status, Status::unknown);
  EXPECT_EQ(is_normal(plain).verdict(), Verdict::conditional);
  EXPECT_THROW(SerreCondition::parse("T2"), ParseError);
}

TEST(Padic, SpecializePoint) {
  EXPECT_EQ(specialize_point(Z({5, 7, 10}), 5), (ResiduePoint{0, 1, 0}));  // = (0 : 2 : 0)
  EXPECT_EQ(specialize_point(Z({25, 50}), 5), (ResiduePoint{1, 2}));
  EXPECT_EQ(specialize_point(Z({3 * 5, 3 * 7, 3 * 10}), 5), specialize_point(Z({5, 7, 10}), 5));
  EXPECT_THROW(specialize_point(Z({0, 0}), 5), PreconditionError);
}

TEST(Padic, Teichmuller) {
  EXPECT_EQ(teichmuller_lift(0, 5, 4), 0);
  EXPECT_EQ(teichmuller_lift(1, 5, 4), 1);
  EXPECT_EQ(teichmuller_lift(4, 5, 4), 624);
  EXPECT_EQ(teichmuller_lift(6, 7, 3), 342);
  mpz_class w = teichmuller_lift(2, 5, 4), w4;
  EXPECT_EQ(w % 5, 2);
  mpz_class mod = 625;
  mpz_powm_ui(w4.get_mpz_t(), w.get_mpz_t(), 4, mod.get_mpz_t());
  EXPECT_EQ(w4, 1);
  EXPECT_EQ(w, oracle::teichmuller_bruteforce(2, 5, 4));
}

TEST(Padic, NormalizeContent) {
  auto R = zring({"x", "y"});
  EXPECT_EQ(normalize_pi_content(P(R, "5x + 25y"), 5), P(R, "x + 5y"));
  EXPECT_EQ(normalize_pi_content(P(R, "5x + 3y"), 5), P(R, "5x + 3y"));
  EXPECT_EQ(normalize_pi_content(P(R, "125"), 5), P(R, "1"));
  EXPECT_THROW(normalize_pi_content(P(R, "0"), 5), PreconditionError);
}

TEST(Sections, LinearForm) {
  auto R = quadric(5);
  EXPECT_EQ(section_generators(R).size(), 4u);
  EXPECT_EQ(linear_form(R, pt({1, 1, 0, 0}, 5)), R->element("p + x1"));
  EXPECT_EQ(linear_form(R, pt({1, 0, 0, 0}, 5)), R->element("p"));
  EXPECT_THROW(pt({0, 0, 0, 0}, 5), PreconditionError);
  EXPECT_THROW(linear_form(R, pt({1, 0}, 5)), PreconditionError);
  auto T = linear_form(R, pt({1, 4, 0, 0}, 5, LiftMode::teichmuller(3)));
  EXPECT_EQ(T, R->element("p + 124x1"));
}

TEST(Sections, MinimalGenerators) {
  auto A = integer_ring({"x", "y"}, {}, 5);
  EXPECT_EQ(minimal_generator_count(A), 3u);
  auto E = integer_ring({"x", "y"}, {"p - x*y"}, 5);
  EXPECT_EQ(minimal_generator_count(E), 2u);
  EXPECT_FALSE(is_minimal_generator(E, E->element("p")));
  EXPECT_EQ(section_generators(E).size(), 2u);

  auto R = quadric(5);
  EXPECT_EQ(minimal_generator_count(R), 4u);
  RingFlags f;
  f.complete_intersection = true;
  f.domain = true;
  auto Q = R->quotient({R->element("p + x1")}, f);
  EXPECT_EQ(minimal_generator_count(Q), 3u);
  EXPECT_TRUE(is_minimal_generator(Q, Q->element("p")));
  EXPECT_EQ(minimal_generator_count(cone()), 3u);
}

TEST(Sections, CertifyQuadric) {
  auto R = quadric(5);
  std::vector<Ideal<Integers>> avoid{I(R, {"x1", "x2", "x3"}), I(R, {"p"})};
  auto good = certify_hyperplane(R, pt({1, 1, 0, 0}, 5), avoid, SectionTarget::parse("normal"));
  EXPECT_EQ(good.verdict(), Verdict::pass);

  auto charp = certify_hyperplane(R, pt({1, 0, 0, 0}, 5), avoid, SectionTarget::parse("normal"));
  EXPECT_EQ(charp.verdict(), Verdict::fail);
  ASSERT_NE(charp.find("mixed characteristic"), nullptr);
  EXPECT_EQ(charp.find("mixed characteristic")->status, Status::fail);

  auto cone_section = certify_hyperplane(R, pt({0, 1, 0, 0}, 5), {}, SectionTarget::parse("normal"));
  EXPECT_EQ(cone_section.verdict(), Verdict::fail);
  ASSERT_NE(cone_section.find("R1"), nullptr);
  EXPECT_EQ(cone_section.find("R1")->status, Status::fail);
}

TEST(Sections, EnumerateQuadricAtThree) {
  auto R = quadric(3);
  std::vector<Ideal<Integers>> avoid{I(R, {"x1", "x2", "x3"}), I(R, {"p"})};
  EnumerationOptions opt;
  opt.jobs = 4;
  opt.expected = OpenSet{{{0}, {1, 2, 3}}};
  auto report = enumerate_normal_sections(R, 3, avoid, SectionTarget::parse("normal"), opt);
  EXPECT_EQ(report.points.size(), 40u);
  EXPECT_TRUE(report.expected_contained());
  EXPECT_EQ(report.passing.size(), 26u);
  opt.cap = 10;
  EXPECT_THROW(enumerate_normal_sections(R, 3, avoid, SectionTarget::parse("normal"), opt), CapExceeded);
}

TEST(Sections, ConeHasNoNormalSections) {
  auto C = cone();
  EnumerationOptions opt;
  opt.jobs = 2;
  auto normal = enumerate_normal_sections(C, 3, {}, SectionTarget::parse("normal"), opt);
  EXPECT_EQ(normal.points.size(), 13u);
  EXPECT_TRUE(normal.passing.empty());
  auto reduced = enumerate_normal_sections(C, 3, {}, SectionTarget::parse("reduced"), opt);
  EXPECT_FALSE(reduced.passing.empty());
}

TEST(Sections, Distinct) {
  auto A = integer_ring({"x", "y"}, {}, 5);
  std::vector<Polynomial<Integers>> xy{A->element("x"), A->element("y")};
  auto T = LiftMode::teichmuller(4);
  auto d = distinct_sections(A, {pt({1, 0}, 5, T), pt({0, 1}, 5, T), pt({1, 0}, 5, T)}, 4, xy);
  EXPECT_EQ(d[0][1], Distinctness::distinct);
  EXPECT_EQ(d[0][2], Distinctness::indistinguishable);
  std::vector<HyperplanePoint> five;
  for (std::uint64_t a = 0; a < 5; ++a) five.push_back(pt({1, a}, 5, T));
  auto m = distinct_sections(A, five, 4, xy);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      if (i != j) EXPECT_EQ(m[i][j], Distinctness::distinct);
}

// Whenever dx is basic at P the element lies outside P^(2); the check
// throws otherwise.
TEST(BertiniProperties, DifferentialCriterionImpliesDirect) {
  std::mt19937_64 rng(201);
  auto Q = poly_ring({"u", "v", "w"});
  auto C = cone();
  std::vector<Ideal<Rationals>> qprimes{I(Q, {"u"}), I(Q, {"u", "v"}), I(Q, {"u - v^2", "w"}), I(Q, {"u", "v", "w"})};
  std::vector<Ideal<Rationals>> cprimes{I(C, {"a", "b"}), I(C, {"b", "c"}), I(C, {"a", "b", "c"})};
  int basic = 0, outside = 0;
  for (int iter = 0; iter < 200; ++iter) {
    bool on_cone = iter % 2;
    const auto& primes = on_cone ? cprimes : qprimes;
    const auto& P = primes[std::uniform_int_distribution<std::size_t>(0, primes.size() - 1)(rng)];
    auto R = P.ring();
    // an element of P: a random combination of its generators, sometimes plus a square
    Polynomial<Rationals> x = R->zero();
    for (const auto& g : P.generators()) x += random_poly(rng, R->ambient(), 1, 2, 2) * g;
    if (iter % 3 == 0) x = x * x;
    if (R->is_zero(x)) continue;
    SymbolicSquareTest t;
    ASSERT_NO_THROW(t = not_in_symbolic_square(x, P)) << x;
    if (t.differential_basic) ASSERT_TRUE(t.direct);
    basic += t.differential_basic;
    outside += t.outside;
  }
  EXPECT_GT(basic, 20);
  EXPECT_GT(outside, basic / 2);
}

// m basic at P iff its image in M/IM is basic at P/I, for I ⊆ P.
TEST(BertiniProperties, BasicnessSurvivesBaseChange) {
  std::mt19937_64 rng(202);
  auto R = poly_ring({"u", "v", "w"});
  std::vector<Ideal<Rationals>> primes{I(R, {"u"}), I(R, {"u", "v"}), I(R, {"u - v^2", "w"}), I(R, {"u", "v", "w"})};
  int basic = 0;
  for (int iter = 0; iter < 200; ++iter) {
    const auto& P = primes[iter % primes.size()];
    std::vector<Vector<Rationals>> cols;
    std::size_t ncols = std::uniform_int_distribution<std::size_t>(0, 2)(rng);
    for (std::size_t j = 0; j < ncols; ++j)
      cols.push_back({random_poly(rng, R->ambient(), 2, 2, 2), random_poly(rng, R->ambient(), 2, 2, 2)});
    auto M = ModuleRep<Rationals>::presented(R, 2, cols);
    Vector<Rationals> m{random_poly(rng, R->ambient(), 1, 2, 2), random_poly(rng, R->ambient(), 1, 2, 2)};
    // I = (g) with g a random element of P
    Polynomial<Rationals> g = R->zero();
    for (const auto& q : P.generators()) g += random_poly(rng, R->ambient(), 1, 1, 2) * q;
    if (g.is_zero()) g = P.generators()[0];
    auto Rbar = R->quotient({g}, {});
    auto Mbar = ModuleRep<Rationals>::presented(Rbar, 2, cols);
    Ideal<Rationals> Pbar(Rbar, P.generators());
    bool before = is_basic_at(m, M, P);
    ASSERT_EQ(before, is_basic_at(m, Mbar, Pbar)) << M.to_string() << " modulo " << g;
    basic += before;
  }
  EXPECT_GT(basic, 20);
  EXPECT_LT(basic, 190);
}

TEST(BertiniProperties, SpecializationIgnoresUnits) {
  std::mt19937_64 rng(203);
  for (int iter = 0; iter < 200; ++iter) {
    long p = std::vector<long>{3, 5, 7}[iter % 3];
    std::vector<mpz_class> lift;
    bool nonzero = false;
    for (int i = 0; i < 4; ++i) {
      long a = std::uniform_int_distribution<long>(-200, 200)(rng);
      if (iter % 4 == 0) a *= p * p;
      lift.emplace_back(a);
      nonzero |= a != 0;
    }
    if (!nonzero) lift[0] = 1;
    long u = std::uniform_int_distribution<long>(1, 500)(rng);
    if (u % p == 0) u += 1;
    int k = std::uniform_int_distribution<int>(0, 3)(rng);
    mpz_class scale = u;
    for (int j = 0; j < k; ++j) scale *= p;
    auto scaled = lift;
    for (auto& a : scaled) a *= -scale;
    ASSERT_EQ(specialize_point(lift, p), specialize_point(scaled, p));
  }
}

TEST(BertiniProperties, TeichmullerLifts) {
  std::mt19937_64 rng(204);
  const unsigned N = 8;
  for (std::uint64_t p : {3u, 5u, 7u}) {
    mpz_class mod;
    mpz_ui_pow_ui(mod.get_mpz_t(), p, N);
    for (int iter = 0; iter < 200; ++iter) {
      std::uint64_t a = std::uniform_int_distribution<std::uint64_t>(0, p - 1)(rng);
      std::uint64_t b = std::uniform_int_distribution<std::uint64_t>(0, p - 1)(rng);
      mpz_class wa = teichmuller_lift(a, p, N), wb = teichmuller_lift(b, p, N), wab = teichmuller_lift(a * b % p, p, N);
      mpz_class pw;
      mpz_powm_ui(pw.get_mpz_t(), wa.get_mpz_t(), p, mod.get_mpz_t());
      ASSERT_EQ(pw, wa);
      ASSERT_EQ(mpz_class(wa % p), a);
      ASSERT_EQ(mpz_class((wa * wb) % mod), wab);
      if (iter < 20) ASSERT_EQ(wa, oracle::teichmuller_bruteforce(a, p, N));
    }
  }
}

// Adding primes to the avoid list can only add failing checks.
TEST(BertiniProperties, AvoidListMonotone) {
  std::mt19937_64 rng(205);
  auto C = cone();
  std::vector<Ideal<Rationals>> pool{I(C, {"a", "b"}), I(C, {"b", "c"}), I(C, {"a", "b", "c"}), I(C, {"a - c", "b"})};
  auto points = projective_points(2, 5);
  for (int iter = 0; iter < 200; ++iter) {
    HyperplanePoint a(points[std::uniform_int_distribution<std::size_t>(0, points.size() - 1)(rng)], 5);
    std::vector<Ideal<Rationals>> small, large;
    for (const auto& P : pool) {
      int r = std::uniform_int_distribution<int>(0, 2)(rng);
      if (r == 0) small.push_back(P);
      if (r <= 1) large.push_back(P);
    }
    auto target = SectionTarget::parse(iter % 2 ? "reduced" : "R0");
    auto vs = certify_hyperplane(C, a, small, target).verdict();
    auto vl = certify_hyperplane(C, a, large, target).verdict();
    if (vs == Verdict::fail) ASSERT_EQ(vl, Verdict::fail) << a.to_string();
    if (vl == Verdict::pass) ASSERT_EQ(vs, Verdict::pass) << a.to_string();
  }
}

// Distinct certified sections over the domain Z[x,y]: the intersection of
// k <= 4 of them is strictly inside each one.
TEST(BertiniProperties, DistinctSectionsIntersectProperly) {
  std::mt19937_64 rng(206);
  auto A = integer_ring({"x", "y"}, {}, 5);
  auto T = LiftMode::teichmuller(4);
  std::vector<HyperplanePoint> pool;
  for (auto& r : projective_points(2, 5)) {
    HyperplanePoint a(r, 5, T);
    if (certify_hyperplane(A, a, {I(A, {"p"})}, SectionTarget::parse("normal")).verdict() == Verdict::pass)
      pool.push_back(a);
  }
  ASSERT_GT(pool.size(), 10u);
  for (int iter = 0; iter < 200; ++iter) {
    std::size_t k = std::uniform_int_distribution<std::size_t>(2, 4)(rng);
    std::vector<HyperplanePoint> chosen;
    while (chosen.size() < k) {
      const auto& a = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
      bool dup = false;
      for (const auto& b : chosen) dup |= a == b;
      if (!dup) chosen.push_back(a);
    }
    auto d = distinct_sections(A, chosen, 4);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (i != j) ASSERT_EQ(d[i][j], Distinctness::distinct);
    std::vector<Ideal<Integers>> sections;
    for (const auto& a : chosen) sections.push_back(Ideal<Integers>::principal(A, linear_form(A, a)));
    Ideal<Integers> meet = sections[0];
    for (std::size_t i = 1; i < k; ++i) meet = intersect(meet, sections[i]);
    for (const auto& S : sections) {
      ASSERT_TRUE(S.contains(meet));
      ASSERT_FALSE(meet.contains(S));
    }
  }
}
