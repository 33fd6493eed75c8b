#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "vclab/catalog.hpp"
#include "vclab/group.hpp"

using namespace vclab;

namespace {

// Purity checked directly from the definition: every exponent up to the
// group exponent, no prime-power reduction. Oracle for p_pure_check.
bool pure_direct(const FiniteGroup& a, const Subgroup& b) {
  for (long long e = 1; e <= a.exponent(); ++e) {
    std::set<int> in_b;
    for (int x : b.members) in_b.insert(a.pow(x, e));
    for (int x = 0; x < a.order(); ++x) {
      int xe = a.pow(x, e);
      if (b.contains(xe) && !in_b.count(xe)) return false;
    }
  }
  return true;
}

FiniteGroup relabel(const FiniteGroup& g, const std::vector<int>& perm) {
  std::vector<std::vector<int>> rows(g.order(), std::vector<int>(g.order()));
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b) rows[perm[a]][perm[b]] = perm[g.mul(a, b)];
  return FiniteGroup(std::move(rows));
}

const std::vector<std::string> kSmallCatalog = {
    "z1", "z2", "z3", "z4",  "z6",    "z8",    "z12",      "z2xz2", "z4xz2",
    "q8", "s3", "s4", "d4",  "d6",    "s3xz2", "z2xz2xz2", "ut3_2", "ut3_3"};

}  // namespace

TEST_SUITE("group-core") {
  TEST_CASE("catalog groups pass construction invariants") {
    for (const std::string& name : catalog_names()) CHECK_NOTHROW(catalog_group(name));
  }

  TEST_CASE("table validation rejects bad input") {
    CHECK_THROWS_WITH_AS(FiniteGroup({{0, 0}, {1, 0}}),
                         doctest::Contains("row 0 repeats index 0"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(FiniteGroup({{1, 0}, {0, 1}}),
                         doctest::Contains("identity"), std::invalid_argument);
    // smallest loop with identity that is not associative
    std::vector<std::vector<int>> loop = {{0, 1, 2, 3, 4},
                                          {1, 0, 3, 4, 2},
                                          {2, 3, 4, 0, 1},
                                          {3, 4, 1, 2, 0},
                                          {4, 2, 0, 1, 3}};
    CHECK_THROWS_WITH_AS(FiniteGroup(loop), doctest::Contains("associativity"),
                         std::invalid_argument);
  }

  TEST_CASE("centre") {
    FiniteGroup z6 = make_cyclic(6);
    CHECK(centre(z6).order() == 6);
    CHECK(centre(make_q8()).members == std::vector<int>{0, 1});
    CHECK(centre(make_symmetric(3)).members == std::vector<int>{0});
    CHECK(centre(make_dihedral(4)).members == std::vector<int>{0, 2});
  }

  TEST_CASE("centralizer") {
    FiniteGroup q8 = make_q8();
    std::vector<int> id = {0};
    CHECK(centralizer(q8, id).order() == 8);
    std::vector<int> i = {2};
    CHECK(centralizer(q8, i).members == std::vector<int>{0, 1, 2, 3});
    FiniteGroup s3 = make_symmetric(3);
    std::vector<int> t = {1};  // a transposition
    CHECK(centralizer(s3, t).members == std::vector<int>{0, 1});
  }

  TEST_CASE("special set") {
    FiniteGroup q8 = make_q8();
    CHECK(special_set(q8, {2, 2, 1}) == std::vector<int>{0, 1});
    FiniteGroup d4 = make_dihedral(4);
    CHECK(special_set(d4, {1, 2, 1}) == std::vector<int>{0, 2});
    // exponent divides p^k and b central: both conditions are vacuous
    FiniteGroup z4 = make_cyclic(4);
    CHECK(special_set(z4, {0, 2, 2}) == std::vector<int>{0, 1, 2, 3});
  }

  TEST_CASE("special set contains identity and is inverse-closed") {
    for (const std::string& name : {"q8", "d4", "ut3_3", "z4xz2"}) {
      FiniteGroup g = catalog_group(name);
      auto w = purity_witness_search(g);
      if (!w) continue;
      std::vector<int> e = special_set(g, *w);
      CHECK(!e.empty());
      CHECK(e.front() == 0);
      for (int x : e)
        CHECK(std::binary_search(e.begin(), e.end(), g.inv(x)));
    }
  }

  TEST_CASE("purity witness search") {
    auto wq8 = purity_witness_search(make_q8());
    REQUIRE(wq8.has_value());
    CHECK(wq8->b == 2);
    CHECK(wq8->p == 2);
    CHECK(wq8->k == 1);

    auto wd4 = purity_witness_search(make_dihedral(4));
    REQUIRE(wd4.has_value());
    CHECK(wd4->b == 1);
    CHECK(wd4->p == 2);
    CHECK(wd4->k == 1);

    CHECK_FALSE(purity_witness_search(make_symmetric(3)).has_value());
    for (const std::string& name : {"z4", "z6", "z2xz2", "z12"})
      CHECK_FALSE(purity_witness_search(catalog_group(name)).has_value());
  }

  TEST_CASE("witness validity matches the search") {
    FiniteGroup q8 = make_q8();
    CHECK(witness_valid(q8, {2, 2, 1}));
    CHECK_FALSE(witness_valid(q8, {0, 2, 1}));  // 1 is a central square
    CHECK(central_power_ok(q8, {0, 2, 1}));
    CHECK(central_power_ok(make_symmetric(3), {3, 3, 1}));         // c^3 = 1 central
    CHECK(central_power_ok(make_symmetric(3), {1, 2, 1}));         // t^2 = 1 central
    CHECK_FALSE(central_power_ok(make_symmetric(3), {1, 3, 1}));   // t^3 = t
  }

  TEST_CASE("p-pure check") {
    FiniteGroup z4 = make_cyclic(4);
    Subgroup whole{{0, 1, 2, 3}};
    CHECK(p_pure_check(z4, whole, 2, 1));
    Subgroup half{{0, 2}};
    CHECK_FALSE(p_pure_check(z4, half, 2, 1));
    FiniteGroup q8 = make_q8();
    CHECK_FALSE(p_pure_check(q8, centre(q8), 2, 1));
    Subgroup noncentral{{0, 1, 2, 3}};
    CHECK_THROWS_AS(p_pure_check(q8, noncentral, 2, 1), std::invalid_argument);
  }

  TEST_CASE("purity reduces to prime powers on the catalog") {
    for (const std::string& name : kSmallCatalog) {
      FiniteGroup a = catalog_group(name);
      if (a.order() > 64) continue;
      Subgroup z = centre(a);
      long long expo = a.exponent();
      for (const Subgroup& b : subgroup_lattice(a)) {
        bool central = true;
        for (int x : b.members)
          if (!z.contains(x)) central = false;
        if (!central) continue;
        bool all_pk = true;
        for (long long p = 2; p <= expo; ++p) {
          if (!is_prime(p)) continue;
          for (long long pk = p; pk <= expo; pk *= p) {
            int k = 0;
            for (long long t = pk; t > 1; t /= p) ++k;
            if (!p_pure_check(a, b, p, k)) all_pk = false;
          }
        }
        CHECK(pure_direct(a, b) == all_pk);
      }
    }
  }

  TEST_CASE("bounded n search") {
    FiniteGroup q8 = make_q8();
    std::vector<int> eq8 = {0, 1};
    BoundedN r = bounded_n_search(q8, eq8);
    CHECK(r.n == 0);
    CHECK(r.exact);

    FiniteGroup d4 = make_dihedral(4);
    std::vector<int> ed4 = {0, 2};
    r = bounded_n_search(d4, ed4);
    CHECK(r.n == 0);
    CHECK(r.exact);

    FiniteGroup s3 = make_symmetric(3);
    std::vector<int> trans = {1, 2, 5};
    r = bounded_n_search(s3, trans);
    CHECK(r.n == 1);
    CHECK(r.exact);
  }

  TEST_CASE("bounded n search is isomorphism invariant") {
    Rng rng(11);
    for (const std::string& name : {"s3", "d4", "q8", "ut3_2"}) {
      FiniteGroup g = catalog_group(name);
      auto w = purity_witness_search(g);
      std::vector<int> e =
          w ? special_set(g, *w) : std::vector<int>{1};  // s3: a noncentral element
      BoundedN base = bounded_n_search(g, e);
      std::vector<int> perm(g.order());
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin() + 1, perm.end(), rng);
      FiniteGroup h = relabel(g, perm);
      std::vector<int> e2;
      for (int x : e) e2.push_back(perm[x]);
      BoundedN moved = bounded_n_search(h, e2);
      CHECK(base.n == moved.n);
      CHECK(base.exact == moved.exact);
    }
  }

  TEST_CASE("generators modulo the centre") {
    CHECK(generators_mod_centre(make_cyclic(6)).empty());
    CHECK(generators_mod_centre(make_q8()) == std::vector<int>{2, 4});
    CHECK(generators_mod_centre(make_dihedral(4)) == std::vector<int>{1, 4});
    for (const std::string& name : {"q8", "d4", "s3", "ut3_3", "s3xz2"}) {
      FiniteGroup g = catalog_group(name);
      std::vector<int> gens = generators_mod_centre(g);
      CHECK(double(gens.size()) <= std::log2(double(g.order())) + 1e-9);
      Subgroup z = centre(g);
      std::vector<int> all = gens;
      all.insert(all.end(), z.members.begin(), z.members.end());
      CHECK(closure(g, all).order() == g.order());
    }
  }

  TEST_CASE("transfer map") {
    FiniteGroup q8 = make_q8();
    std::vector<int> tau = transfer_map(q8, centre(q8));
    for (int x = 0; x < 8; ++x) CHECK(tau[x] == 0);  // exponent 4, index 4

    FiniteGroup z4 = make_cyclic(4);
    CHECK(transfer_map(z4, Subgroup{{0, 2}}) == std::vector<int>{0, 2, 0, 2});

    FiniteGroup z6 = make_cyclic(6);
    std::vector<int> idmap = transfer_map(z6, centre(z6));
    for (int x = 0; x < 6; ++x) CHECK(idmap[x] == x);

    Subgroup noncentral{{0, 1, 2, 3}};
    CHECK_THROWS_AS(transfer_map(q8, noncentral), std::invalid_argument);
  }

  TEST_CASE("transfer is a homomorphism for every central subgroup, small catalog") {
    for (const std::string& name : {"q8", "d4", "z8", "z4xz2", "ut3_2"}) {
      FiniteGroup g = catalog_group(name);
      Subgroup z = centre(g);
      for (const Subgroup& f : subgroup_lattice(g)) {
        bool central = true;
        for (int x : f.members)
          if (!z.contains(x)) central = false;
        if (!central) continue;
        CHECK_NOTHROW(transfer_map(g, f));  // the hom check lives inside
      }
    }
  }

  TEST_CASE("centre direct factor") {
    FiniteGroup z6 = make_cyclic(6);
    auto c = centre_direct_factor(z6);
    REQUIRE(c.has_value());
    CHECK(c->members == std::vector<int>{0});

    CHECK_FALSE(centre_direct_factor(make_q8()).has_value());
    CHECK_FALSE(centre_direct_factor(make_dihedral(4)).has_value());

    FiniteGroup g = catalog_group("s3xz2");
    auto comp = centre_direct_factor(g);
    REQUIRE(comp.has_value());
    std::vector<int> expected;  // S3 x {0} under the product indexing
    for (int a = 0; a < 6; ++a) expected.push_back(a * 2);
    CHECK(comp->members == expected);
    // (z, c) -> z*c is a bijection respecting componentwise products
    Subgroup z = centre(g);
    std::set<int> image;
    for (int zz : z.members)
      for (int cc : comp->members) image.insert(g.mul(zz, cc));
    CHECK(int(image.size()) == g.order());
    for (int z1 : z.members)
      for (int c1 : comp->members)
        for (int z2 : z.members)
          for (int c2 : comp->members)
            CHECK(g.mul(g.mul(z1, c1), g.mul(z2, c2)) ==
                  g.mul(g.mul(z1, z2), g.mul(c1, c2)));
  }

  TEST_CASE("subgroup lattice sizes of known groups") {
    CHECK(subgroup_lattice(make_q8()).size() == 6);
    CHECK(subgroup_lattice(make_dihedral(4)).size() == 10);
    CHECK(subgroup_lattice(make_symmetric(3)).size() == 6);
    CHECK(subgroup_lattice(catalog_group("z2xz2")).size() == 5);
  }

  TEST_CASE("element helpers") {
    FiniteGroup q8 = make_q8();
    CHECK(q8.pow(2, 2) == 1);   // i^2 = -1
    CHECK(q8.pow(2, -1) == 3);  // i^-1 = -i
    CHECK(q8.order_of(2) == 4);
    CHECK(q8.exponent() == 4);
    CHECK(q8.element_by_name("-k") == 7);
    CHECK_FALSE(q8.element_by_name("w").has_value());
    CHECK(q8.conjugate(4, 2) == 5);  // j^i = -j
  }
}
