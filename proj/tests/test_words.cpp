#include <doctest.h>

#include <numeric>

#include "vclab/catalog.hpp"
#include "vclab/words.hpp"

using namespace vclab;

namespace {

long long gcd_of(const std::vector<long long>& e) {
  long long g = 0;
  for (long long v : e) g = std::gcd(g, v < 0 ? -v : v);
  return g;
}

}  // namespace

TEST_SUITE("words") {
  TEST_CASE("free reduction") {
    FiniteGroup q8 = make_q8();
    MixedWord w = make_word({Letter::var(0, 1), Letter::var(0, -1)});
    CHECK(reduce(w, nullptr).letters.empty());

    FiniteGroup z4 = make_cyclic(4);
    MixedWord c = make_word({Letter::coeff(1), Letter::coeff(2)});
    CHECK(reduce(c, &z4).letters == std::vector<Letter>{Letter::coeff(3)});

    // x h h^-1 x -> x x (fuse to identity, drop, no variable cancellation)
    MixedWord m = make_word(
        {Letter::var(0, 1), Letter::coeff(2), Letter::coeff(3), Letter::var(0, 1)});
    CHECK(reduce(m, &q8).letters ==
          std::vector<Letter>{Letter::var(0, 1), Letter::var(0, 1)});

    // cancellation works through a fused-away coefficient pair
    MixedWord m2 = make_word(
        {Letter::var(0, 1), Letter::coeff(2), Letter::coeff(3), Letter::var(0, -1)});
    CHECK(reduce(m2, &q8).letters.empty());

    Rng rng(5);
    for (int t = 0; t < 50; ++t) {
      MixedWord w2 = random_reduced_word(rng, 15, 3);
      CHECK(reduce(w2, nullptr) == reduce(reduce(w2, nullptr), nullptr));
    }
  }

  TEST_CASE("exponent sums") {
    MixedWord comm = parse_word("x^-1 y^-1 x y");
    CHECK(exponent_sums(comm) == std::vector<long long>{0, 0});
    CHECK(exponent_sums(parse_word("x^2 y^-2")) == std::vector<long long>{2, -2});
    CHECK(exponent_sums(parse_word("x^3")) == std::vector<long long>{3});
  }

  TEST_CASE("normalize power form on the worked examples") {
    auto [m0, s0] = normalize_power_form(parse_word("x^-1 y^-1 x y"));
    CHECK(m0 == 0);
    CHECK(s0.identity());

    auto [m3, s3] = normalize_power_form(parse_word("x^3"));
    CHECK(m3 == 3);
    CHECK(s3.identity());

    MixedWord w = parse_word("x^2 y^-2");
    auto [m2, s2] = normalize_power_form(w);
    CHECK(m2 == 2);
    std::vector<long long> e = exponent_sums(apply_substitution(s2, w));
    CHECK(e == std::vector<long long>{2, 0});

    CHECK_THROWS_AS(normalize_power_form(
                        make_word({Letter::var(0, 1), Letter::coeff(1)})),
                    std::invalid_argument);
  }

  TEST_CASE("apply substitution") {
    MixedWord x = parse_word("x");
    VariableSubstitution id{1, {}};
    CHECK(apply_substitution(id, x) == x);

    VariableSubstitution inv{1, {NielsenMove::invert(0)}};
    CHECK(apply_substitution(inv, x).letters == std::vector<Letter>{Letter::var(0, -1)});

    // y -> y x^-1 applied to xy gives x y x^-1
    VariableSubstitution mul{2, {NielsenMove::multiply(1, 0, -1)}};
    CHECK(apply_substitution(mul, parse_word("x y")) == parse_word("x y x^-1"));
  }

  TEST_CASE("evaluation") {
    FiniteGroup q8 = make_q8();
    std::vector<int> a = {2, 0};  // x := i, y := 1
    CHECK(evaluate(MixedWord{}, q8, a) == 0);
    CHECK(evaluate(parse_word("x^2"), q8, a) == 1);  // i^2 = -1
    CHECK(evaluate(parse_word("x^-1 y^-1 x y"), q8, a) == 0);
    CHECK_THROWS_AS(evaluate(parse_word("x y z"), q8, a), std::invalid_argument);
    // coefficients embed through the supplied map
    MixedWord wc = parse_word("x `i`", &q8);
    CHECK(evaluate(wc, q8, a) == q8.mul(2, 2));
  }

  TEST_CASE("normalize round trip and gcd contract, randomized") {
    Rng rng(7);
    for (int t = 0; t < 200; ++t) {
      MixedWord w = random_reduced_word(rng, 20, 4);
      auto [m, sub] = normalize_power_form(w);
      CHECK(m == gcd_of(exponent_sums(w)));
      std::vector<long long> e = exponent_sums(apply_substitution(sub, w));
      for (std::size_t i = 0; i < e.size(); ++i)
        CHECK(e[i] == (i == 0 ? m : 0));
      MixedWord back = apply_substitution(sub.inverse(), apply_substitution(sub, w));
      CHECK(back == reduce(w, nullptr));
    }
  }

  TEST_CASE("exponent sums transform by the substitution matrix") {
    Rng rng(13);
    for (int t = 0; t < 100; ++t) {
      MixedWord w = random_reduced_word(rng, 16, 4);
      VariableSubstitution sub = normalize_power_form(random_reduced_word(rng, 12, 4)).second;
      std::vector<long long> lhs = exponent_sums(apply_substitution(sub, w));
      std::vector<long long> rhs = act_on_exponents(sub, exponent_sums(w));
      lhs.resize(std::max(lhs.size(), rhs.size()), 0);
      rhs.resize(std::max(lhs.size(), rhs.size()), 0);
      CHECK(lhs == rhs);
    }
  }

  TEST_CASE("evaluation commutes with substitution") {
    Rng rng(17);
    FiniteGroup groups[] = {make_q8(), make_symmetric(3), make_cyclic(6)};
    for (int t = 0; t < 100; ++t) {
      const FiniteGroup& g = groups[t % 3];
      MixedWord w = random_reduced_word(rng, 12, 3);
      VariableSubstitution sub = normalize_power_form(random_reduced_word(rng, 10, 3)).second;
      int nv = std::max(w.nvars, sub.nvars);
      std::uniform_int_distribution<int> d(0, g.order() - 1);
      std::vector<int> assign(nv);
      for (int& v : assign) v = d(rng);
      std::vector<int> transformed(nv);
      for (int i = 0; i < nv; ++i)
        transformed[i] = evaluate(apply_substitution(sub, generator_word(i, nv)), g, assign);
      CHECK(evaluate(apply_substitution(sub, w), g, assign) ==
            evaluate(w, g, transformed));
    }
  }

  TEST_CASE("text syntax round trip") {
    FiniteGroup q8 = make_q8();
    MixedWord w = parse_word("x^-1 y^-1 x y `-k`", &q8);
    CHECK(w.letters.size() == 5);
    CHECK(w.letters.back() == Letter::coeff(7));
    CHECK(parse_word(format_word(w, &q8), &q8) == w);

    CHECK(parse_word("x^2").letters.size() == 2);
    CHECK(parse_word("x^0").letters.empty());
    CHECK(parse_word("x3 x4").nvars == 5);
    CHECK(parse_word("`i`^-1", &q8).letters == std::vector<Letter>{Letter::coeff(3)});
    CHECK(format_word(MixedWord{}) == "1");
    CHECK_THROWS_AS(parse_word("q"), std::invalid_argument);
    CHECK_THROWS_AS(parse_word("`nope`", &q8), std::invalid_argument);
    CHECK_THROWS_AS(parse_word("`i`"), std::invalid_argument);
  }
}
