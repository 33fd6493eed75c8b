#include "vclab/catalog.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace vclab {

FiniteGroup make_cyclic(int n) {
  if (n < 1) throw std::invalid_argument("cyclic group order must be positive");
  std::vector<std::vector<int>> rows(n, std::vector<int>(n));
  std::vector<std::string> names(n);
  for (int a = 0; a < n; ++a) {
    names[a] = std::to_string(a);
    for (int b = 0; b < n; ++b) rows[a][b] = (a + b) % n;
  }
  return FiniteGroup(std::move(rows), std::move(names));
}

FiniteGroup make_dihedral(int n) {
  if (n < 1) throw std::invalid_argument("dihedral parameter must be positive");
  int order = 2 * n;
  // index = a + n*e for r^a f^e
  auto mul = [n](int x, int y) {
    int a1 = x % n, e1 = x / n, a2 = y % n, e2 = y / n;
    int a = ((e1 ? a1 - a2 : a1 + a2) % n + n) % n;
    return a + n * (e1 ^ e2);
  };
  std::vector<std::vector<int>> rows(order, std::vector<int>(order));
  for (int x = 0; x < order; ++x)
    for (int y = 0; y < order; ++y) rows[x][y] = mul(x, y);
  std::vector<std::string> names(order);
  for (int a = 0; a < n; ++a) {
    names[a] = a == 0 ? "1" : (a == 1 ? "r" : "r" + std::to_string(a));
    names[a + n] = (a == 0 ? "" : (a == 1 ? "r" : "r" + std::to_string(a))) + "f";
  }
  return FiniteGroup(std::move(rows), std::move(names));
}

FiniteGroup make_symmetric(int n) {
  if (n < 1 || n > 5) throw std::invalid_argument("symmetric group supported for n <= 5");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  auto rank = [&](const std::vector<int>& q) {
    return int(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };
  int order = int(perms.size());
  std::vector<std::vector<int>> rows(order, std::vector<int>(order));
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      std::vector<int> c(n);
      for (int x = 0; x < n; ++x) c[x] = perms[a][perms[b][x]];
      rows[a][b] = rank(c);
    }
  std::vector<std::string> names(order);
  for (int a = 0; a < order; ++a) {
    std::string s;
    for (int x : perms[a]) s += std::to_string(x);
    names[a] = s;
  }
  return FiniteGroup(std::move(rows), std::move(names));
}

FiniteGroup make_q8() {
  // element = (unit, sign), index = 2*unit + (sign < 0)
  static const int umul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int usgn[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  std::vector<std::vector<int>> rows(8, std::vector<int>(8));
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      int u1 = x / 2, s1 = x % 2 ? -1 : 1, u2 = y / 2, s2 = y % 2 ? -1 : 1;
      int u = umul[u1][u2];
      int s = s1 * s2 * usgn[u1][u2];
      rows[x][y] = 2 * u + (s < 0);
    }
  return FiniteGroup(std::move(rows), {"1", "-1", "i", "-i", "j", "-j", "k", "-k"});
}

FiniteGroup make_ut3(int p) {
  if (!is_prime(p) || p > 5) throw std::invalid_argument("ut3 supported for primes p <= 5");
  int order = p * p * p;
  auto idx = [p](int a, int b, int c) { return (a * p + b) * p + c; };
  std::vector<std::vector<int>> rows(order, std::vector<int>(order));
  for (int a1 = 0; a1 < p; ++a1)
    for (int b1 = 0; b1 < p; ++b1)
      for (int c1 = 0; c1 < p; ++c1)
        for (int a2 = 0; a2 < p; ++a2)
          for (int b2 = 0; b2 < p; ++b2)
            for (int c2 = 0; c2 < p; ++c2)
              rows[idx(a1, b1, c1)][idx(a2, b2, c2)] =
                  idx((a1 + a2) % p, (b1 + b2) % p, (c1 + c2 + a1 * b2) % p);
  std::vector<std::string> names(order);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      for (int c = 0; c < p; ++c)
        names[idx(a, b, c)] =
            std::to_string(a) + std::to_string(b) + std::to_string(c);
  return FiniteGroup(std::move(rows), std::move(names));
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  int order = a.order() * b.order();
  auto idx = [&](int x, int y) { return x * b.order() + y; };
  std::vector<std::vector<int>> rows(order, std::vector<int>(order));
  std::vector<std::string> names(order);
  for (int x1 = 0; x1 < a.order(); ++x1)
    for (int y1 = 0; y1 < b.order(); ++y1) {
      names[idx(x1, y1)] = a.name(x1) + "," + b.name(y1);
      for (int x2 = 0; x2 < a.order(); ++x2)
        for (int y2 = 0; y2 < b.order(); ++y2)
          rows[idx(x1, y1)][idx(x2, y2)] = idx(a.mul(x1, x2), b.mul(y1, y2));
    }
  return FiniteGroup(std::move(rows), std::move(names));
}

namespace {

const std::map<std::string, std::function<FiniteGroup()>>& builders() {
  static const std::map<std::string, std::function<FiniteGroup()>> m = [] {
    std::map<std::string, std::function<FiniteGroup()>> b;
    for (int n = 1; n <= 16; ++n)
      b["z" + std::to_string(n)] = [n] { return make_cyclic(n); };
    for (int n = 3; n <= 8; ++n)
      b["d" + std::to_string(n)] = [n] { return make_dihedral(n); };
    b["q8"] = [] { return make_q8(); };
    b["s3"] = [] { return make_symmetric(3); };
    b["s4"] = [] { return make_symmetric(4); };
    b["ut3_2"] = [] { return make_ut3(2); };
    b["ut3_3"] = [] { return make_ut3(3); };
    b["z2xz2"] = [] { return direct_product(make_cyclic(2), make_cyclic(2)); };
    b["z4xz2"] = [] { return direct_product(make_cyclic(4), make_cyclic(2)); };
    b["z2xz2xz2"] = [] {
      return direct_product(direct_product(make_cyclic(2), make_cyclic(2)), make_cyclic(2));
    };
    b["s3xz2"] = [] { return direct_product(make_symmetric(3), make_cyclic(2)); };
    b["q8xz2"] = [] { return direct_product(make_q8(), make_cyclic(2)); };
    return b;
  }();
  return m;
}

}  // namespace

std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : builders()) out.push_back(k);
  return out;
}

bool catalog_has(const std::string& name) { return builders().count(name) > 0; }

FiniteGroup catalog_group(const std::string& name) {
  auto it = builders().find(name);
  if (it == builders().end())
    throw std::invalid_argument("unknown catalog group: " + name);
  return it->second();
}

}  // namespace vclab
