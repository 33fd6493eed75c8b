#include <doctest.h>

#include <algorithm>

#include "vclab/zpk.hpp"

using namespace vclab;

namespace {

PolyZpk poly_from_terms(PrimePower ring, int dim_m,
                        std::vector<std::pair<MultiIndex, long long>> terms) {
  PolyZpk f = poly_zero(ring, dim_m);
  for (auto& [idx, c] : terms) poly_add_term(f, std::move(idx), c);
  return f;
}

}  // namespace

TEST_SUITE("zpk") {
  TEST_CASE("parameter arithmetic") {
    CHECK(choose_m(2, 1, 1) == 2);
    CHECK(choose_m(2, 1, 2) == 3);
    CHECK(choose_m(3, 2, 1) == 49);
    CHECK(degree_cap(2, 1, 1) == 1);
    CHECK(degree_cap(2, 2, 1) == 2);
    CHECK(degree_cap(3, 1, 2) == 4);
  }

  TEST_CASE("polynomial evaluation") {
    PrimePower z2 = PrimePower::make(2, 1);
    CHECK(eval_poly(poly_zero(z2, 3), std::vector<long long>{1, 0, 1}) == 0);
    PolyZpk f = poly_from_terms(z2, 2, {{{1, 0}, 1}, {{0, 1}, 1}});
    CHECK(eval_poly(f, std::vector<long long>{1, 1}) == 0);
    PolyZpk g = poly_from_terms(z2, 3, {{{1, 1, 0}, 1}, {{0, 0, 1}, 1}});
    CHECK(eval_poly(g, std::vector<long long>{1, 1, 1}) == 0);
    CHECK_THROWS_AS(eval_poly(f, std::vector<long long>{1}), std::invalid_argument);
  }

  TEST_CASE("point set enumeration is lexicographic") {
    PointSet s = PointSet::make(PrimePower::make(2, 1), 2);
    REQUIRE(s.is_explicit);
    std::vector<std::vector<long long>> expect = {{0, 1}, {1, 0}, {1, 1}};
    CHECK(s.points == expect);
    CHECK(s.size_if_known() == 3);
    CHECK(s.contains(std::vector<long long>{1, 0}));
    CHECK_FALSE(s.contains(std::vector<long long>{0, 0}));

    PointSet s9 = PointSet::make(PrimePower::make(3, 2), 2);
    CHECK(s9.points.size() == 81 - 9);
    for (std::size_t i = 1; i < s9.points.size(); ++i)
      CHECK(s9.points[i - 1] < s9.points[i]);
  }

  TEST_CASE("family enumeration, smallest case") {
    PrimePower z2 = PrimePower::make(2, 1);
    PointSet s = PointSet::make(z2, 2);
    std::vector<FunctionTable> f = enumerate_F(z2, 1, 2, s, 1u << 20);
    REQUIRE(f.size() == 4);
    CHECK(f[0].values == std::vector<long long>{0, 0, 0});
    CHECK(f[1].values == std::vector<long long>{0, 1, 1});  // x1
    CHECK(f[2].values == std::vector<long long>{1, 0, 1});  // x2
    CHECK(f[3].values == std::vector<long long>{1, 1, 0});  // x1 + x2
  }

  TEST_CASE("family enumeration deduplicates as functions") {
    PrimePower z2 = PrimePower::make(2, 1);
    PointSet s = PointSet::make(z2, 3);
    // 512 raw polynomials collapse to the 2^6 multilinear functions
    std::vector<FunctionTable> f = enumerate_F(z2, 2, 3, s, 1u << 20);
    CHECK(f.size() == 64);
  }

  TEST_CASE("family enumeration refuses over budget") {
    PrimePower z2 = PrimePower::make(2, 1);
    PointSet s = PointSet::make(z2, 2);
    CHECK_THROWS_WITH_AS(enumerate_F(z2, 1, 2, s, 0), doctest::Contains("needs"),
                         BudgetExceeded);
  }

  TEST_CASE("interpolation hits the worked examples") {
    PrimePower z2 = PrimePower::make(2, 1);
    PointSet s = PointSet::make(z2, 2);
    PolyZpk f = interpolate_f_T(z2, 1, s, {{1, 1}});
    CHECK(f == poly_from_terms(z2, 2, {{{1, 0}, 1}}));  // x1
    PolyZpk f2 = interpolate_f_T(z2, 1, s, {{0, 1}});
    CHECK(f2 == poly_from_terms(z2, 2, {{{0, 1}, 1}}));  // x2

    PrimePower z4 = PrimePower::make(2, 2);
    PointSet s7 = PointSet::make(z4, 7, 1u << 17);
    std::vector<long long> t(7, 0);
    t[0] = 1;
    PolyZpk f3 = interpolate_f_T(z4, 1, s7, {t});
    MultiIndex sq(7, 0);
    sq[0] = 2;
    CHECK(f3 == poly_from_terms(z4, 7, {{sq, 1}}));  // x1^2, degree = cap
  }

  TEST_CASE("interpolation contract on random T") {
    Rng rng(23);
    struct Case {
      long long p;
      int k, n, m;
    } cases[] = {{2, 2, 1, 7}, {3, 1, 2, 9}, {2, 1, 2, 5}};
    for (const Case& c : cases) {
      PrimePower ring = PrimePower::make(c.p, c.k);
      PointSet s = PointSet::make(ring, c.m, 1u << 17);
      REQUIRE(s.is_explicit);
      std::uniform_int_distribution<std::size_t> pd(0, s.points.size() - 1);
      std::uniform_int_distribution<int> szd(1, c.n);
      for (int t = 0; t < 10; ++t) {
        std::vector<std::vector<long long>> pts;
        int sz = szd(rng);
        for (int i = 0; i < sz; ++i) pts.push_back(s.points[pd(rng)]);
        PolyZpk g;
        PolyZpk f = interpolate_f_T(ring, c.n, s, pts, 2'000'000, &g);
        CHECK_FALSE(f.has_free_term());
        CHECK(f.degree() <= degree_cap(c.p, c.k, c.n));
        for (const auto& pt : pts) CHECK(eval_poly(f, pt) == 1);
        if (c.k >= 2) {
          CHECK_FALSE(g.has_free_term());
          for (const auto& pt : pts) CHECK(eval_poly(g, pt) % c.p == 1);
        }
      }
    }
  }

  TEST_CASE("interpolation rejects bad input") {
    PrimePower z2 = PrimePower::make(2, 1);
    PointSet s = PointSet::make(z2, 2);
    CHECK_THROWS_AS(interpolate_f_T(z2, 1, s, {{1, 1}, {0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(interpolate_f_T(z2, 1, s, {{0, 0}}), std::invalid_argument);
  }

  TEST_CASE("schanuel root search") {
    PrimePower z2 = PrimePower::make(2, 1);
    PolyZpk x1 = poly_from_terms(z2, 2, {{{1, 0}, 1}});
    CHECK(schanuel_root(x1) == std::vector<int>{0, 1});

    PolyZpk sum = poly_from_terms(z2, 2, {{{1, 0}, 1}, {{0, 1}, 1}});
    CHECK(schanuel_root(sum) == std::vector<int>{1, 1});

    PolyZpk mixed = poly_from_terms(z2, 3, {{{1, 1, 0}, 1}, {{0, 0, 1}, 1}});
    std::vector<int> root = schanuel_root(mixed);
    CHECK(root == std::vector<int>{0, 1, 0});
    std::vector<long long> pt(root.begin(), root.end());
    CHECK(eval_poly(mixed, pt) == 0);

    PolyZpk narrow = poly_from_terms(z2, 1, {{{1}, 1}});
    CHECK_THROWS_AS(schanuel_root(narrow), std::invalid_argument);
    PolyZpk with_const = poly_from_terms(z2, 3, {{{0, 0, 0}, 1}, {{1, 0, 0}, 1}});
    CHECK_THROWS_AS(schanuel_root(with_const), std::invalid_argument);
  }

  TEST_CASE("schanuel stress across rings") {
    Rng rng(31);
    PrimePower rings[] = {PrimePower::make(2, 1), PrimePower::make(2, 2),
                          PrimePower::make(3, 1)};
    for (int t = 0; t < 60; ++t) {
      PrimePower ring = rings[t % 3];
      std::uniform_int_distribution<int> degd(1, 3);
      int deg = degd(rng);
      int m = int((ring.pk - 1) * deg) + 1;
      std::uniform_int_distribution<int> vard(0, m - 1);
      std::uniform_int_distribution<long long> cd(1, ring.pk - 1);
      PolyZpk f = poly_zero(ring, m);
      std::uniform_int_distribution<int> tcount(1, 6);
      int nt = tcount(rng);
      for (int i = 0; i < nt; ++i) {
        MultiIndex idx(m, 0);
        std::uniform_int_distribution<int> dd(1, deg);
        int d = dd(rng);
        for (int r = 0; r < d; ++r) idx[vard(rng)] += 1;
        poly_add_term(f, std::move(idx), cd(rng));
      }
      if (f.zero()) continue;
      std::vector<int> root = schanuel_root(f);
      std::vector<long long> pt(root.begin(), root.end());
      CHECK(eval_poly(f, pt) == 0);
      PointSet s{ring, m, false, {}};
      CHECK(s.contains(pt));
    }
  }

  TEST_CASE("units congruent to 1 mod p die at exponent p^{k-1}") {
    struct Case {
      long long p;
      int k;
    } cases[] = {{2, 2}, {2, 3}, {3, 2}, {2, 4}, {5, 2}, {3, 3}};
    for (const Case& c : cases) {
      long long pk = checked_pow(c.p, c.k);
      long long e = checked_pow(c.p, c.k - 1);
      for (long long u = 1; u < pk; u += c.p) CHECK(pow_mod(u, e, pk) == 1);
    }
  }

  TEST_CASE("function lemma, enumerable case") {
    FnLemmaReport rep = verify_function_lemma(PrimePower::make(2, 1), 1, 2);
    CHECK(rep.pass());
    CHECK(rep.bound_ok);
    CHECK(rep.family_size == 4);
    CHECK(rep.complete1);
    CHECK(rep.complete2);
    CHECK(rep.checked1 == 4);
    CHECK(rep.checked2 == 3);  // the three singletons
  }

  TEST_CASE("function lemma, sampled case") {
    FnLemmaOptions opt;
    opt.enumerate = false;
    opt.samples = 100;
    opt.seed = 7;
    FnLemmaReport rep = verify_function_lemma(PrimePower::make(3, 1), 1, 5, opt);
    CHECK(rep.pass());
    CHECK_FALSE(rep.complete1);
  }

  TEST_CASE("function lemma flags the dimension bound") {
    FnLemmaReport rep = verify_function_lemma(PrimePower::make(2, 1), 1, 1);
    CHECK_FALSE(rep.bound_ok);
    CHECK_FALSE(rep.pass());
    CHECK(!rep.notes.empty());
  }

  TEST_CASE("family certification") {
    PrimePower z2 = PrimePower::make(2, 1);
    PointSet s = PointSet::make(z2, 2);
    std::vector<FunctionTable> family = enumerate_F(z2, 1, 2, s, 1u << 20);
    FnLemmaReport rep = certify_family(s, family, 1);
    CHECK(rep.pass());
    // dropping the zero function breaks the group structure
    std::vector<FunctionTable> broken(family.begin() + 1, family.end());
    CHECK_THROWS_AS(certify_family(s, broken, 1), VerificationError);
    // a family violating property 1 is reported, not thrown
    std::vector<FunctionTable> constant1 = {FunctionTable{{0, 0, 0}, {}},
                                            FunctionTable{{1, 1, 1}, {}}};
    FnLemmaReport bad = certify_family(s, constant1, 1);
    CHECK_FALSE(bad.property1_ok);
  }

  TEST_CASE("polynomial formatting") {
    PrimePower z9 = PrimePower::make(3, 2);
    PolyZpk f = poly_from_terms(z9, 3, {{{2, 0, 1}, 1}, {{0, 1, 0}, 3}});
    CHECK(format_poly(f) == "3*x2 + x1^2*x3 (mod 9)");
    CHECK(format_poly(poly_zero(z9, 1)) == "0 (mod 9)");
  }
}
