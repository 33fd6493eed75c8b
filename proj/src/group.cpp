#include "vclab/group.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

namespace vclab {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> rows,
                         std::vector<std::string> names)
    : order_(int(rows.size())), names_(std::move(names)) {
  if (order_ == 0) throw std::invalid_argument("empty Cayley table");
  table_.resize(std::size_t(order_) * order_);
  for (int r = 0; r < order_; ++r) {
    if (int(rows[r].size()) != order_)
      throw std::invalid_argument("Cayley table row " + std::to_string(r) +
                                  " has " + std::to_string(rows[r].size()) +
                                  " entries, expected " + std::to_string(order_));
    for (int c = 0; c < order_; ++c) table_[std::size_t(r) * order_ + c] = rows[r][c];
  }
  if (names_.empty()) {
    names_.reserve(order_);
    for (int i = 0; i < order_; ++i) names_.push_back(std::to_string(i));
  }
  if (int(names_.size()) != order_)
    throw std::invalid_argument("names list length does not match group order");
  validate();
  inv_.assign(order_, -1);
  for (int a = 0; a < order_; ++a)
    for (int b = 0; b < order_; ++b)
      if (mul(a, b) == 0 && mul(b, a) == 0) inv_[a] = b;
  for (int a = 0; a < order_; ++a)
    if (inv_[a] < 0) throw std::invalid_argument("no two-sided inverse for element " +
                                                 std::to_string(a));
}

void FiniteGroup::validate() const {
  const int n = order_;
  for (std::size_t i = 0; i < table_.size(); ++i)
    if (table_[i] < 0 || table_[i] >= n)
      throw std::invalid_argument("Cayley table entry out of range at row " +
                                  std::to_string(i / n) + " column " +
                                  std::to_string(i % n));
  for (int h = 0; h < n; ++h) {
    if (mul(0, h) != h || mul(h, 0) != h)
      throw std::invalid_argument("index 0 is not the identity (fails at element " +
                                  std::to_string(h) + ")");
  }
  std::vector<char> seen(n);
  for (int r = 0; r < n; ++r) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int c = 0; c < n; ++c) {
      int v = mul(r, c);
      if (seen[v])
        throw std::invalid_argument("row " + std::to_string(r) +
                                    " repeats index " + std::to_string(v));
      seen[v] = 1;
    }
  }
  for (int c = 0; c < n; ++c) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int r = 0; r < n; ++r) {
      int v = mul(r, c);
      if (seen[v])
        throw std::invalid_argument("column " + std::to_string(c) +
                                    " repeats index " + std::to_string(v));
      seen[v] = 1;
    }
  }
  auto check_triple = [&](int a, int b, int c) {
    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
      throw std::invalid_argument("associativity fails on triple (" +
                                  std::to_string(a) + ", " + std::to_string(b) +
                                  ", " + std::to_string(c) + ")");
  };
  if (n <= 128) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) check_triple(a, b, c);
  } else {
    Rng rng(0xA550C1A7EDull);
    std::uniform_int_distribution<int> d(0, n - 1);
    for (int t = 0; t < 4096; ++t) check_triple(d(rng), d(rng), d(rng));
  }
}

int FiniteGroup::pow(int a, long long e) const {
  if (e < 0) return pow(inv(a), -e);
  int r = 0, base = a;
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

int FiniteGroup::order_of(int a) const {
  int r = a, n = 1;
  while (r != 0) {
    r = mul(r, a);
    ++n;
  }
  return n;
}

long long FiniteGroup::exponent() const {
  long long e = 1;
  for (int a = 0; a < order_; ++a) e = std::lcm(e, (long long)order_of(a));
  return e;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order_; ++a)
    for (int b = a + 1; b < order_; ++b)
      if (!commutes(a, b)) return false;
  return true;
}

std::optional<int> FiniteGroup::element_by_name(const std::string& s) const {
  for (int i = 0; i < order_; ++i)
    if (names_[i] == s) return i;
  return std::nullopt;
}

std::vector<std::vector<int>> FiniteGroup::rows() const {
  std::vector<std::vector<int>> r(order_, std::vector<int>(order_));
  for (int a = 0; a < order_; ++a)
    for (int b = 0; b < order_; ++b) r[a][b] = mul(a, b);
  return r;
}

bool Subgroup::contains(int e) const {
  return std::binary_search(members.begin(), members.end(), e);
}

Subgroup centre(const FiniteGroup& g) {
  Subgroup z;
  for (int a = 0; a < g.order(); ++a) {
    bool central = true;
    for (int b = 0; b < g.order() && central; ++b) central = g.commutes(a, b);
    if (central) z.members.push_back(a);
  }
  return z;
}

Subgroup centralizer(const FiniteGroup& g, std::span<const int> xs) {
  Subgroup c;
  for (int a = 0; a < g.order(); ++a) {
    bool ok = true;
    for (int x : xs)
      if (!g.commutes(a, x)) {
        ok = false;
        break;
      }
    if (ok) c.members.push_back(a);
  }
  return c;
}

Subgroup closure(const FiniteGroup& g, std::span<const int> gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<int> work;
  in[0] = 1;
  work.push_back(0);
  auto add = [&](int e) {
    if (!in[e]) {
      in[e] = 1;
      work.push_back(e);
    }
  };
  for (int e : gens) add(e);
  for (std::size_t i = 0; i < work.size(); ++i)
    for (std::size_t j = 0; j < work.size(); ++j) {
      add(g.mul(work[i], work[j]));
      add(g.mul(work[j], work[i]));
    }
  Subgroup s;
  for (int e = 0; e < g.order(); ++e)
    if (in[e]) s.members.push_back(e);
  return s;
}

bool is_subgroup(const FiniteGroup& g, const Subgroup& s) {
  if (s.members.empty() || s.members.front() != 0) return false;
  for (int a : s.members) {
    if (!s.contains(g.inv(a))) return false;
    for (int b : s.members)
      if (!s.contains(g.mul(a, b))) return false;
  }
  return true;
}

bool is_normal(const FiniteGroup& g, const Subgroup& s) {
  for (int a : s.members)
    for (int x = 0; x < g.order(); ++x)
      if (!s.contains(g.conjugate(a, x))) return false;
  return true;
}

bool is_central_subgroup(const FiniteGroup& g, const Subgroup& s) {
  for (int a : s.members)
    for (int x = 0; x < g.order(); ++x)
      if (!g.commutes(a, x)) return false;
  return true;
}

bool central_power_ok(const FiniteGroup& h, const PurityWitness& w) {
  if (w.b < 0 || w.b >= h.order() || w.k < 1 || !is_prime(w.p)) return false;
  long long pk = checked_pow(w.p, w.k);
  int bpk = h.pow(w.b, pk);
  for (int x = 0; x < h.order(); ++x)
    if (!h.commutes(bpk, x)) return false;
  return true;
}

bool witness_valid(const FiniteGroup& h, const PurityWitness& w) {
  if (!central_power_ok(h, w)) return false;
  long long pk = checked_pow(w.p, w.k);
  int bpk = h.pow(w.b, pk);
  Subgroup z = centre(h);
  for (int zel : z.members)
    if (h.pow(zel, pk) == bpk) return false;
  return true;
}

void require_witness(const FiniteGroup& h, const PurityWitness& w) {
  if (!witness_valid(h, w))
    throw std::invalid_argument("(b=" + h.name(w.b) + ", p=" + std::to_string(w.p) +
                                ", k=" + std::to_string(w.k) +
                                ") is not a purity witness");
}

std::vector<int> special_set(const FiniteGroup& h, const PurityWitness& w) {
  long long pk = checked_pow(w.p, w.k);
  std::vector<int> out;
  for (int x = 0; x < h.order(); ++x)
    if (h.pow(x, pk) == 0 && h.commutes(x, w.b)) out.push_back(x);
  return out;
}

std::vector<long long> prime_divisors(long long n) {
  std::vector<long long> ps;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      ps.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) ps.push_back(n);
  return ps;
}

std::optional<PurityWitness> purity_witness_search(const FiniteGroup& h) {
  Subgroup z = centre(h);
  long long expo = h.exponent();
  for (long long p : prime_divisors(h.order())) {
    for (long long pk = p; pk <= expo; pk *= p) {
      int k = 0;
      for (long long t = pk; t > 1; t /= p) ++k;
      // z^{p^k} over the centre, then look for a b whose p^k-th power
      // is central but missing from that set.
      std::set<int> central_powers;
      for (int zel : z.members) central_powers.insert(h.pow(zel, pk));
      for (int b = 0; b < h.order(); ++b) {
        int bpk = h.pow(b, pk);
        if (!z.contains(bpk)) continue;
        if (!central_powers.count(bpk)) return PurityWitness{b, p, k};
      }
    }
  }
  return std::nullopt;
}

bool p_pure_check(const FiniteGroup& a, const Subgroup& b, long long p, int k) {
  if (!is_subgroup(a, b) || !is_central_subgroup(a, b))
    throw std::invalid_argument("p_pure_check requires a central subgroup");
  if (!is_prime(p) || k < 1) throw std::invalid_argument("p_pure_check: bad prime power");
  long long pk = checked_pow(p, k);
  std::set<int> b_powers;
  for (int e : b.members) b_powers.insert(a.pow(e, pk));
  for (int x = 0; x < a.order(); ++x) {
    int xpk = a.pow(x, pk);
    if (b.contains(xpk) && !b_powers.count(xpk)) return false;
  }
  return true;
}

namespace {

// Subgroups as 64-bit member masks; requires |G| <= 64.
uint64_t closure_mask(const FiniteGroup& g, uint64_t seed) {
  uint64_t cur = seed | 1;
  std::vector<int> work;
  for (int e = 0; e < g.order(); ++e)
    if (cur >> e & 1) work.push_back(e);
  for (std::size_t i = 0; i < work.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      for (int v : {g.mul(work[i], work[j]), g.mul(work[j], work[i])})
        if (!(cur >> v & 1)) {
          cur |= 1ull << v;
          work.push_back(v);
        }
    }
  return cur;
}

Subgroup mask_to_subgroup(uint64_t m) {
  Subgroup s;
  for (int e = 0; e < 64; ++e)
    if (m >> e & 1) s.members.push_back(e);
  return s;
}

std::vector<uint64_t> lattice_masks(const FiniteGroup& g, const Budgets& budgets) {
  if (g.order() > budgets.lattice_group_cap || g.order() > 64)
    throw BudgetExceeded("subgroup lattice enumeration capped at order " +
                         std::to_string(std::min(budgets.lattice_group_cap, 64)) +
                         ", group has order " + std::to_string(g.order()));
  std::set<uint64_t> all;
  std::vector<uint64_t> queue;
  uint64_t triv = closure_mask(g, 1);
  all.insert(triv);
  queue.push_back(triv);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    uint64_t k = queue[qi];
    for (int e = 0; e < g.order(); ++e) {
      if (k >> e & 1) continue;
      uint64_t m = closure_mask(g, k | (1ull << e));
      if (all.insert(m).second) {
        if (all.size() > budgets.lattice_subgroup_cap)
          throw BudgetExceeded("subgroup lattice larger than " +
                               std::to_string(budgets.lattice_subgroup_cap));
        queue.push_back(m);
      }
    }
  }
  return {all.begin(), all.end()};
}

}  // namespace

std::vector<Subgroup> subgroup_lattice(const FiniteGroup& g, const Budgets& budgets) {
  std::vector<Subgroup> subs;
  for (uint64_t m : lattice_masks(g, budgets)) subs.push_back(mask_to_subgroup(m));
  std::sort(subs.begin(), subs.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.members < b.members;
  });
  return subs;
}

namespace {

struct CliqueSearch {
  const FiniteGroup& g;
  const std::vector<uint64_t>& verts;  // active subgroup masks
  std::vector<std::vector<char>> compat;
  uint64_t full;
  uint64_t nodes = 0, node_cap;
  int cap;
  int best = 0;
  bool exact = true;

  void run() {
    std::vector<int> cand(verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) cand[i] = int(i);
    extend(1, 0, cand);  // empty family generates the trivial subgroup
  }

  // cover: subgroup mask generated by the clique members so far.
  void extend(uint64_t cover, int size, const std::vector<int>& cand) {
    if (++nodes > node_cap) {
      exact = false;
      return;
    }
    if (cover == full && size > best) best = size;
    if (size >= cap) {
      if (!cand.empty()) exact = false;  // cap cut a live branch
      return;
    }
    if (size + int(cand.size()) <= best) return;
    for (std::size_t ci = 0; ci < cand.size(); ++ci) {
      int v = cand[ci];
      std::vector<int> next;
      for (std::size_t cj = ci + 1; cj < cand.size(); ++cj)
        if (compat[v][cand[cj]]) next.push_back(cand[cj]);
      uint64_t u = cover | verts[v];
      uint64_t cov = (u == cover) ? cover : closure_mask(g, u);
      extend(cov, size + 1, next);
      if (!exact) return;
    }
  }
};

}  // namespace

BoundedN bounded_n_search(const FiniteGroup& h, std::span<const int> e,
                          int size_cap, const Budgets& budgets) {
  Subgroup ce = centralizer(h, e);
  if (ce.order() == h.order()) return {0, true};  // E central: no valid family at all

  std::vector<uint64_t> masks;
  try {
    masks = lattice_masks(h, budgets);
  } catch (const BudgetExceeded&) {
    return {1, false};  // {H} is always a valid 1-family here
  }
  uint64_t cmask = 0;
  for (int x : ce.members) cmask |= 1ull << x;
  uint64_t full = 0;
  for (int x = 0; x < h.order(); ++x) full |= 1ull << x;

  std::vector<uint64_t> active;
  for (uint64_t m : masks)
    if (m & ~cmask) active.push_back(m);
  std::sort(active.begin(), active.end(), [](uint64_t a, uint64_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    return a < b;
  });

  CliqueSearch cs{h, active, {}, full, 0, budgets.clique_nodes, size_cap};
  cs.compat.assign(active.size(), std::vector<char>(active.size(), 0));
  for (std::size_t i = 0; i < active.size(); ++i)
    for (std::size_t j = i + 1; j < active.size(); ++j) {
      bool ok = true;
      Subgroup a = mask_to_subgroup(active[i]), b = mask_to_subgroup(active[j]);
      for (int x : a.members) {
        for (int y : b.members)
          if (!h.commutes(x, y)) {
            ok = false;
            break;
          }
        if (!ok) break;
      }
      cs.compat[i][j] = cs.compat[j][i] = ok;
    }
  cs.run();
  return {cs.best, cs.exact};
}

std::vector<int> generators_mod_centre(const FiniteGroup& h) {
  Subgroup z = centre(h);
  std::vector<int> gens;
  std::vector<int> span = z.members;
  while (int(span.size()) < h.order()) {
    bool grew = false;
    for (int cand = 1; cand < h.order() && !grew; ++cand) {
      std::vector<int> g2 = gens;
      g2.push_back(cand);
      for (int zel : z.members) g2.push_back(zel);
      Subgroup s = closure(h, g2);
      if (s.order() > int(span.size())) {
        gens.push_back(cand);
        span = s.members;
        grew = true;
      }
    }
    if (!grew) throw std::logic_error("generators_mod_centre failed to cover the group");
  }
  return gens;
}

std::vector<int> transfer_map(const FiniteGroup& h, const Subgroup& f) {
  if (!is_subgroup(h, f) || !is_central_subgroup(h, f))
    throw std::invalid_argument("transfer_map requires a central subgroup");
  long long index = h.order() / f.order();
  std::vector<int> tau(h.order());
  for (int x = 0; x < h.order(); ++x) {
    tau[x] = h.pow(x, index);
    if (!f.contains(tau[x]))
      throw std::logic_error("transfer image escaped the target subgroup at element " +
                             std::to_string(x));
  }
  for (int x = 0; x < h.order(); ++x)
    for (int y = 0; y < h.order(); ++y)
      if (tau[h.mul(x, y)] != h.mul(tau[x], tau[y]))
        throw std::logic_error("transfer map is not a homomorphism at (" +
                               std::to_string(x) + ", " + std::to_string(y) + ")");
  return tau;
}

std::optional<Subgroup> centre_direct_factor(const FiniteGroup& h,
                                             const Budgets& budgets) {
  Subgroup z = centre(h);
  for (const Subgroup& c : subgroup_lattice(h, budgets)) {
    if (c.order() * z.order() != h.order()) continue;
    bool trivial_meet = true;
    for (int e : c.members)
      if (e != 0 && z.contains(e)) {
        trivial_meet = false;
        break;
      }
    if (!trivial_meet) continue;
    std::vector<int> both = c.members;
    both.insert(both.end(), z.members.begin(), z.members.end());
    if (closure(h, both).order() != h.order()) continue;
    if (!is_normal(h, c)) continue;
    return c;
  }
  return std::nullopt;
}

}  // namespace vclab
