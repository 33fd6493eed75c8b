#include "vclab/zpk.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <set>

namespace vclab {

PrimePower PrimePower::make(long long p, int k) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (k < 1) throw std::invalid_argument("k must be positive");
  return {p, k, checked_pow(p, k)};
}

int PolyZpk::degree() const {
  int d = 0;
  for (const auto& [idx, c] : terms)
    d = std::max(d, std::accumulate(idx.begin(), idx.end(), 0));
  return d;
}

bool PolyZpk::has_free_term() const {
  return terms.count(MultiIndex(dim_m, 0)) > 0;
}

PolyZpk poly_zero(PrimePower ring, int dim_m) { return {ring, dim_m, {}}; }

PolyZpk poly_const(PrimePower ring, int dim_m, long long c) {
  PolyZpk f{ring, dim_m, {}};
  poly_add_term(f, MultiIndex(dim_m, 0), c);
  return f;
}

PolyZpk poly_var(PrimePower ring, int dim_m, int var) {
  PolyZpk f{ring, dim_m, {}};
  MultiIndex idx(dim_m, 0);
  idx[var] = 1;
  poly_add_term(f, std::move(idx), 1);
  return f;
}

void poly_add_term(PolyZpk& f, MultiIndex idx, long long c) {
  c %= f.ring.pk;
  if (c < 0) c += f.ring.pk;
  if (c == 0) return;
  auto [it, fresh] = f.terms.try_emplace(std::move(idx), 0);
  it->second = (it->second + c) % f.ring.pk;
  if (it->second == 0) f.terms.erase(it);
}

PolyZpk poly_add(const PolyZpk& a, const PolyZpk& b) {
  if (a.ring.pk != b.ring.pk || a.dim_m != b.dim_m)
    throw std::invalid_argument("polynomial ring/dimension mismatch");
  PolyZpk out = a;
  for (const auto& [idx, c] : b.terms) poly_add_term(out, idx, c);
  return out;
}

PolyZpk poly_neg(const PolyZpk& a) {
  PolyZpk out{a.ring, a.dim_m, {}};
  for (const auto& [idx, c] : a.terms) out.terms[idx] = a.ring.pk - c;
  return out;
}

PolyZpk poly_mul(const PolyZpk& a, const PolyZpk& b, uint64_t term_cap) {
  if (a.ring.pk != b.ring.pk || a.dim_m != b.dim_m)
    throw std::invalid_argument("polynomial ring/dimension mismatch");
  PolyZpk out{a.ring, a.dim_m, {}};
  for (const auto& [ia, ca] : a.terms)
    for (const auto& [ib, cb] : b.terms) {
      MultiIndex idx(a.dim_m);
      for (int v = 0; v < a.dim_m; ++v) idx[v] = ia[v] + ib[v];
      poly_add_term(out, std::move(idx), (ca * cb) % a.ring.pk);
      if (out.terms.size() > term_cap)
        throw BudgetExceeded("polynomial product exceeds " + std::to_string(term_cap) +
                             " terms");
    }
  return out;
}

PolyZpk poly_pow(const PolyZpk& a, long long e, uint64_t term_cap) {
  if (e < 0) throw std::invalid_argument("negative polynomial power");
  PolyZpk out = poly_const(a.ring, a.dim_m, 1);
  PolyZpk base = a;
  while (e > 0) {
    if (e & 1) out = poly_mul(out, base, term_cap);
    e >>= 1;
    if (e > 0) base = poly_mul(base, base, term_cap);
  }
  return out;
}

long long eval_poly(const PolyZpk& f, std::span<const long long> point) {
  if (int(point.size()) != f.dim_m)
    throw std::invalid_argument("point dimension " + std::to_string(point.size()) +
                                " does not match polynomial in " +
                                std::to_string(f.dim_m) + " variables");
  long long acc = 0;
  for (const auto& [idx, c] : f.terms) {
    long long t = c;
    for (int v = 0; v < f.dim_m; ++v)
      if (idx[v] > 0) t = (t * pow_mod(point[v], idx[v], f.ring.pk)) % f.ring.pk;
    acc = (acc + t) % f.ring.pk;
  }
  return acc;
}

std::string format_poly(const PolyZpk& f) {
  std::string out;
  for (const auto& [idx, c] : f.terms) {
    if (!out.empty()) out += " + ";
    bool constant = std::all_of(idx.begin(), idx.end(), [](int e) { return e == 0; });
    std::string vars;
    for (int v = 0; v < f.dim_m; ++v) {
      if (idx[v] == 0) continue;
      if (!vars.empty()) vars += "*";
      vars += "x" + std::to_string(v + 1);
      if (idx[v] > 1) vars += "^" + std::to_string(idx[v]);
    }
    if (constant || c != 1) {
      out += std::to_string(c);
      if (!vars.empty()) out += "*";
    }
    out += vars;
  }
  if (out.empty()) out = "0";
  return out + " (mod " + std::to_string(f.ring.pk) + ")";
}

long long PointSet::size_if_known() const {
  // p^{km} - p^{(k-1)m}, saturating to -1 when too large
  long long total = 1, inner = 1;
  for (int i = 0; i < dim_m; ++i) {
    if (total > (1LL << 60) / ring.pk) return -1;
    total *= ring.pk;
    long long q = ring.pk / ring.p;
    if (q > 0 && inner > (1LL << 60) / std::max(q, 1LL)) return -1;
    inner *= q;
  }
  return total - inner;
}

PointSet PointSet::make(PrimePower ring, int dim_m, std::size_t explicit_cap) {
  if (dim_m < 1) throw std::invalid_argument("dim_m must be positive");
  PointSet s{ring, dim_m, false, {}};
  long long total = s.size_if_known();
  if (total >= 0 && std::size_t(total) <= explicit_cap) {
    s.is_explicit = true;
    std::vector<long long> pt(dim_m, 0);
    for (;;) {
      bool primitive = false;
      for (long long c : pt)
        if (c % ring.p != 0) primitive = true;
      if (primitive) s.points.push_back(pt);
      int pos = dim_m - 1;
      while (pos >= 0 && pt[pos] == ring.pk - 1) pt[pos--] = 0;
      if (pos < 0) break;
      ++pt[pos];
    }
  }
  return s;
}

bool PointSet::contains(std::span<const long long> pt) const {
  if (int(pt.size()) != dim_m) return false;
  bool primitive = false;
  for (long long c : pt) {
    if (c < 0 || c >= ring.pk) return false;
    if (c % ring.p != 0) primitive = true;
  }
  return primitive;
}

std::optional<std::size_t> PointSet::index_of(std::span<const long long> pt) const {
  if (!is_explicit) return std::nullopt;
  std::vector<long long> v(pt.begin(), pt.end());
  auto it = std::lower_bound(points.begin(), points.end(), v);
  if (it == points.end() || *it != v) return std::nullopt;
  return std::size_t(it - points.begin());
}

FunctionTable table_of(const PolyZpk& f, const PointSet& s) {
  if (!s.is_explicit)
    throw std::invalid_argument("function tables need an explicit point set");
  FunctionTable t;
  t.values.reserve(s.points.size());
  for (const auto& pt : s.points) t.values.push_back(eval_poly(f, pt));
  t.provenance = f;
  return t;
}

long long degree_cap(long long p, int k, int n) {
  return n * (p - 1) * checked_pow(p, k - 1);
}

int choose_m(long long p, int k, int n) {
  long long bound = degree_cap(p, k, n) * (checked_pow(p, k) - 1);
  if (bound + 1 > (1LL << 30)) throw BudgetExceeded("choose_m bound too large");
  return int(bound + 1);
}

namespace {

void gen_monomials(int dim_m, int max_deg, int pos, int left, MultiIndex& cur,
                   std::vector<MultiIndex>& out) {
  if (pos == dim_m) {
    if (left < max_deg) out.push_back(cur);  // skip the constant monomial
    return;
  }
  for (int e = 0; e <= left; ++e) {
    cur[pos] = e;
    gen_monomials(dim_m, max_deg, pos + 1, left - e, cur, out);
  }
  cur[pos] = 0;
}

std::vector<MultiIndex> nonconstant_monomials(int dim_m, int max_deg) {
  std::vector<MultiIndex> out;
  MultiIndex cur(dim_m, 0);
  gen_monomials(dim_m, max_deg, 0, max_deg, cur, out);
  return out;
}

}  // namespace

std::vector<FunctionTable> enumerate_F(PrimePower ring, int n, int dim_m,
                                       const PointSet& s, uint64_t cap) {
  if (!s.is_explicit)
    throw std::invalid_argument("enumerate_F needs an explicit point set");
  long long capdeg = degree_cap(ring.p, ring.k, n);
  std::vector<MultiIndex> monos = nonconstant_monomials(dim_m, int(capdeg));

  // raw enumeration count pk^#monomials, saturating
  uint64_t raw = 1;
  bool overflow = false;
  for (std::size_t i = 0; i < monos.size(); ++i) {
    if (raw > cap) {
      overflow = true;
      break;
    }
    raw *= uint64_t(ring.pk);
  }
  if (overflow || raw > cap)
    throw BudgetExceeded(
        "family enumeration needs " +
        (overflow ? (">2^64 of " + std::to_string(monos.size()) + " monomials")
                  : std::to_string(raw) + " polynomials") +
        ", cap is " + std::to_string(cap));

  // value vector of each monomial on S
  std::vector<std::vector<long long>> mv(monos.size());
  for (std::size_t i = 0; i < monos.size(); ++i) {
    mv[i].reserve(s.points.size());
    for (const auto& pt : s.points) {
      long long t = 1;
      for (int v = 0; v < dim_m; ++v)
        if (monos[i][v] > 0) t = (t * pow_mod(pt[v], monos[i][v], ring.pk)) % ring.pk;
      mv[i].push_back(t);
    }
  }

  std::map<std::vector<long long>, PolyZpk> dedup;
  std::vector<int> coeffs(monos.size(), 0);
  for (;;) {
    std::vector<long long> table(s.points.size(), 0);
    for (std::size_t i = 0; i < monos.size(); ++i) {
      if (coeffs[i] == 0) continue;
      for (std::size_t pi = 0; pi < table.size(); ++pi)
        table[pi] = (table[pi] + coeffs[i] * mv[i][pi]) % ring.pk;
    }
    if (!dedup.count(table)) {
      PolyZpk f{ring, dim_m, {}};
      for (std::size_t i = 0; i < monos.size(); ++i)
        if (coeffs[i] != 0) poly_add_term(f, monos[i], coeffs[i]);
      dedup.emplace(std::move(table), std::move(f));
    }
    int pos = int(monos.size()) - 1;
    while (pos >= 0 && coeffs[pos] == ring.pk - 1) coeffs[pos--] = 0;
    if (pos < 0) break;
    ++coeffs[pos];
  }

  std::vector<FunctionTable> out;
  out.reserve(dedup.size());
  for (auto& [values, poly] : dedup)
    out.push_back(FunctionTable{values, std::move(poly)});
  // dedup map is keyed by value vector, so `out` is already sorted

  // group structure under pointwise addition
  std::set<std::vector<long long>> keys;
  for (const auto& t : out) keys.insert(t.values);
  if (!keys.count(std::vector<long long>(s.points.size(), 0)))
    throw VerificationError("function family misses the zero function");
  for (const auto& a : out)
    for (const auto& b : out) {
      std::vector<long long> sum(a.values.size());
      for (std::size_t i = 0; i < sum.size(); ++i)
        sum[i] = (a.values[i] + b.values[i]) % ring.pk;
      if (!keys.count(sum))
        throw VerificationError("function family not closed under pointwise addition");
    }
  return out;
}

namespace {

int valuation(long long x, const PrimePower& ring) {
  if (x % ring.pk == 0) return ring.k;
  int v = 0;
  while (x % ring.p == 0) {
    x /= ring.p;
    ++v;
  }
  return v;
}

long long inv_unit(long long u, const PrimePower& ring) {
  // u is a unit mod p^k; extended Euclid on the representative
  long long a = u % ring.pk, m = ring.pk;
  long long x0 = 0, x1 = 1, r0 = m, r1 = a;
  while (r1 != 0) {
    long long q = r0 / r1;
    std::tie(r0, r1) = std::make_tuple(r1, r0 - q * r1);
    std::tie(x0, x1) = std::make_tuple(x1, x0 - q * x1);
  }
  if (r0 != 1) throw std::logic_error("inverse of a non-unit requested");
  return ((x0 % m) + m) % m;
}

// q with q*b = a, given v_p(a) >= v_p(b).
long long exact_div(long long a, long long b, const PrimePower& ring) {
  int vb = valuation(b, ring);
  long long unit = (b / checked_pow(ring.p, vb)) % ring.pk;
  long long t = (a * inv_unit(unit, ring)) % ring.pk;
  return (t / checked_pow(ring.p, vb)) % ring.pk;
}

}  // namespace

PolyZpk interpolate_f_T(PrimePower ring, int n, const PointSet& s,
                        const std::vector<std::vector<long long>>& t,
                        uint64_t term_cap, PolyZpk* g_out) {
  if (int(t.size()) > n)
    throw std::invalid_argument("interpolate_f_T: |T| exceeds n");
  for (const auto& pt : t)
    if (!s.contains(pt))
      throw std::invalid_argument("interpolate_f_T: point outside S");
  if (t.empty())
    return poly_zero(ring, s.dim_m);  // nothing to hit; zero has no free term

  const int m = s.dim_m;
  const int ncols = std::min(n, m);

  // Row-reduce the T matrix so every point is supported in the first
  // ncols coordinates; each point has a unit coordinate, so a minimal-
  // valuation pivot always divides the entries below it.
  std::vector<std::vector<long long>> mat(m, std::vector<long long>(t.size(), 0));
  for (std::size_t c = 0; c < t.size(); ++c)
    for (int r = 0; r < m; ++r) mat[r][c] = t[c][r] % ring.pk;
  std::vector<std::vector<long long>> u(m, std::vector<long long>(m, 0));
  for (int r = 0; r < m; ++r) u[r][r] = 1;

  int rho = 0;
  for (std::size_t c = 0; c < t.size() && rho < m; ++c) {
    int pivot = -1, best = ring.k + 1;
    for (int r = rho; r < m; ++r) {
      if (mat[r][c] == 0) continue;
      int v = valuation(mat[r][c], ring);
      if (v < best) {
        best = v;
        pivot = r;
      }
    }
    if (pivot < 0) continue;  // column already supported above rho
    std::swap(mat[pivot], mat[rho]);
    std::swap(u[pivot], u[rho]);
    for (int r = rho + 1; r < m; ++r) {
      if (mat[r][c] == 0) continue;
      long long q = exact_div(mat[r][c], mat[rho][c], ring);
      for (std::size_t cc = 0; cc < t.size(); ++cc)
        mat[r][cc] = ((mat[r][cc] - q * mat[rho][cc]) % ring.pk + ring.pk) % ring.pk;
      for (int cc = 0; cc < m; ++cc)
        u[r][cc] = ((u[r][cc] - q * u[rho][cc]) % ring.pk + ring.pk) % ring.pk;
    }
    ++rho;
  }
  if (rho > ncols) throw std::logic_error("rank exceeded |T| during reduction");

  // Reductions mod p of the transformed points, deduplicated.
  std::set<std::vector<long long>> reduced;
  for (std::size_t c = 0; c < t.size(); ++c) {
    std::vector<long long> red(ncols);
    bool nonzero = false;
    for (int r = 0; r < ncols; ++r) {
      red[r] = mat[r][c] % ring.p;
      if (red[r] != 0) nonzero = true;
    }
    for (int r = ncols; r < m; ++r)
      if (mat[r][c] % ring.pk != 0)
        throw std::logic_error("reduction left support outside the first n rows");
    if (!nonzero)
      throw std::logic_error("transformed point is divisible by p; input not primitive?");
    reduced.insert(std::move(red));
  }

  // Indicator of the reduced point set over Z_p, degree <= n(p-1).
  PrimePower zp = PrimePower::make(ring.p, 1);
  PolyZpk gbar = poly_zero(zp, ncols);
  for (const auto& red : reduced) {
    PolyZpk prod = poly_const(zp, ncols, 1);
    for (int j = 0; j < ncols; ++j) {
      PolyZpk shifted = poly_var(zp, ncols, j);
      poly_add_term(shifted, MultiIndex(ncols, 0), zp.p - red[j]);
      PolyZpk factor =
          poly_add(poly_const(zp, ncols, 1), poly_neg(poly_pow(shifted, zp.p - 1, term_cap)));
      prod = poly_mul(prod, factor, term_cap);
    }
    gbar = poly_add(gbar, prod);
  }
  if (gbar.has_free_term())
    throw std::logic_error("indicator polynomial has a free term");

  // Lift to Z_{p^k}, substitute the new coordinates (Ux)_j back in, then
  // raise to p^{k-1} (substitution is a ring map, so the order is free).
  PolyZpk glift{ring, ncols, {}};
  for (const auto& [idx, c] : gbar.terms) glift.terms[idx] = c;

  std::vector<PolyZpk> lin(ncols, poly_zero(ring, m));
  for (int j = 0; j < ncols; ++j)
    for (int i = 0; i < m; ++i)
      if (u[j][i] != 0) {
        MultiIndex idx(m, 0);
        idx[i] = 1;
        poly_add_term(lin[j], std::move(idx), u[j][i]);
      }
  PolyZpk g = poly_zero(ring, m);
  for (const auto& [idx, c] : glift.terms) {
    PolyZpk term = poly_const(ring, m, c);
    for (int j = 0; j < ncols; ++j)
      if (idx[j] > 0) term = poly_mul(term, poly_pow(lin[j], idx[j], term_cap), term_cap);
    g = poly_add(g, term);
  }
  if (g.has_free_term()) throw std::logic_error("interpolation base has a free term");
  for (const auto& pt : t)
    if (eval_poly(g, pt) % ring.p != 1)
      throw std::logic_error("interpolation base is not 1 mod p on T");
  if (g_out) *g_out = g;

  PolyZpk f = poly_pow(g, checked_pow(ring.p, ring.k - 1), term_cap);
  if (f.has_free_term()) throw std::logic_error("interpolant acquired a free term");
  if (f.degree() > degree_cap(ring.p, ring.k, n))
    throw std::logic_error("interpolant exceeds the degree cap");
  for (const auto& pt : t)
    if (eval_poly(f, pt) != 1 % ring.pk)
      throw std::logic_error("interpolant misses value 1 on T");
  return f;
}

std::vector<int> schanuel_root(const PolyZpk& f, uint64_t budget) {
  if (f.has_free_term())
    throw std::invalid_argument("schanuel_root expects a polynomial without free term");
  const int m = f.dim_m;
  if (m < 1 || (long long)m <= (f.ring.pk - 1) * f.degree())
    throw std::invalid_argument("schanuel_root precondition violated: need dim_m > (p^k-1)*deg");
  if (m > 63) throw BudgetExceeded("schanuel_root supports at most 63 variables");

  // Support masks, bit (m-1-i) for variable i so that numeric order on
  // masks is lexicographic order on 0/1 tuples.
  std::vector<std::pair<uint64_t, long long>> supp;
  supp.reserve(f.terms.size());
  for (const auto& [idx, c] : f.terms) {
    uint64_t mask = 0;
    for (int v = 0; v < m; ++v)
      if (idx[v] > 0) mask |= 1ull << (m - 1 - v);
    supp.emplace_back(mask, c);
  }

  uint64_t examined = 0;
  const uint64_t limit = (m == 63) ? ~0ull : ((1ull << m) - 1);
  for (int c = 1; c <= m; ++c) {
    uint64_t mask = (c == 64) ? ~0ull : ((1ull << c) - 1);
    while (mask <= limit) {
      if (++examined > budget)
        throw BudgetExceeded("schanuel_root search budget exhausted");
      long long acc = 0;
      for (const auto& [sm, coeff] : supp)
        if ((sm & ~mask) == 0) acc += coeff;
      if (acc % f.ring.pk == 0) {
        std::vector<int> v(m, 0);
        for (int i = 0; i < m; ++i)
          if (mask >> (m - 1 - i) & 1) v[i] = 1;
        return v;
      }
      // Gosper: next mask with the same popcount
      uint64_t lo = mask & -mask;
      uint64_t left = mask + lo;
      if (left == 0) break;
      mask = left | (((mask ^ left) / lo) >> 2);
    }
  }
  throw std::logic_error("no 0/1 root found although the dimension bound holds");
}

namespace {

PolyZpk random_sparse_poly(PrimePower ring, int dim_m, long long capdeg, Rng& rng) {
  std::uniform_int_distribution<int> nterms(1, 8);
  std::uniform_int_distribution<long long> degd(1, std::max<long long>(1, capdeg));
  std::uniform_int_distribution<int> vard(0, dim_m - 1);
  std::uniform_int_distribution<long long> coeffd(1, ring.pk - 1);
  PolyZpk f = poly_zero(ring, dim_m);
  int k = nterms(rng);
  for (int i = 0; i < k; ++i) {
    MultiIndex idx(dim_m, 0);
    long long d = degd(rng);
    for (long long j = 0; j < d; ++j) idx[vard(rng)] += 1;
    poly_add_term(f, std::move(idx), coeffd(rng));
  }
  if (f.zero()) poly_add_term(f, [&] {
    MultiIndex idx(dim_m, 0);
    idx[vard(rng)] = 1;
    return idx;
  }(), 1);
  return f;
}

std::vector<long long> random_s_point(const PointSet& s, Rng& rng) {
  std::uniform_int_distribution<long long> cd(0, s.ring.pk - 1);
  for (;;) {
    std::vector<long long> pt(s.dim_m);
    for (auto& c : pt) c = cd(rng);
    if (s.contains(pt)) return pt;
  }
}

// all subsets of {0..count-1} of size 1..n, invoking fn; returns false
// if the subset count exceeds cap.
bool for_each_subset(std::size_t count, int n, uint64_t cap,
                     const std::function<void(const std::vector<std::size_t>&)>& fn) {
  uint64_t total = 0;
  for (int sz = 1; sz <= n; ++sz) {
    // C(count, sz), saturating
    uint64_t c = 1;
    for (int i = 0; i < sz; ++i) {
      if (std::size_t(i) >= count) {
        c = 0;
        break;
      }
      if (c > cap * 2) break;
      c = c * (count - i) / (i + 1);
    }
    total += c;
    if (total > cap) return false;
  }
  std::vector<std::size_t> pick;
  std::function<void(std::size_t, int)> rec = [&](std::size_t start, int left) {
    if (left == 0) {
      fn(pick);
      return;
    }
    for (std::size_t i = start; i + left <= count; ++i) {
      pick.push_back(i);
      rec(i + 1, left - 1);
      pick.pop_back();
    }
  };
  for (int sz = 1; sz <= n; ++sz) rec(0, sz);
  return true;
}

}  // namespace

FnLemmaReport verify_function_lemma(PrimePower ring, int n, int dim_m,
                                    const FnLemmaOptions& opt) {
  FnLemmaReport rep;
  rep.bound = degree_cap(ring.p, ring.k, n) * (ring.pk - 1);
  rep.bound_ok = dim_m > rep.bound;
  if (!rep.bound_ok)
    rep.notes.push_back("dimension bound violated: " + std::to_string(dim_m) +
                        " is not greater than " + std::to_string(rep.bound));
  PointSet s = PointSet::make(ring, dim_m, opt.s_explicit_cap);
  long long capdeg = degree_cap(ring.p, ring.k, n);
  Rng rng(opt.seed);

  if (opt.enumerate) {
    std::vector<FunctionTable> family = enumerate_F(ring, n, dim_m, s, opt.family_cap);
    rep.family_size = family.size();
    rep.complete1 = true;
    rep.property1_ok = true;
    for (const auto& tab : family) {
      ++rep.checked1;
      if (rep.bound_ok && !tab.provenance->zero()) {
        std::vector<int> root = schanuel_root(*tab.provenance, opt.schanuel_budget);
        std::vector<long long> pt(root.begin(), root.end());
        if (!s.contains(pt) || eval_poly(*tab.provenance, pt) != 0) {
          rep.property1_ok = false;
          rep.notes.push_back("schanuel root failed verification");
        }
      } else if (std::find(tab.values.begin(), tab.values.end(), 0) == tab.values.end()) {
        rep.property1_ok = false;
        rep.notes.push_back("a family member has no zero on S");
      }
    }
    rep.property2_ok = true;
    bool complete = for_each_subset(
        s.points.size(), n, opt.subset_cap, [&](const std::vector<std::size_t>& pick) {
          std::vector<std::vector<long long>> t;
          for (std::size_t i : pick) t.push_back(s.points[i]);
          PolyZpk f = interpolate_f_T(ring, n, s, t);
          ++rep.checked2;
          FunctionTable ft = table_of(f, s);
          if (f.has_free_term() || f.degree() > capdeg ||
              !std::binary_search(family.begin(), family.end(), ft)) {
            rep.property2_ok = false;
            rep.notes.push_back("interpolant not a certified family member");
          }
        });
    rep.complete2 = complete;
    if (!complete) rep.notes.push_back("property 2 subset enumeration exceeded cap");
  } else {
    rep.complete1 = rep.complete2 = false;
    rep.property1_ok = rep.bound_ok;
    if (rep.bound_ok) {
      for (int i = 0; i < opt.samples; ++i) {
        PolyZpk f = random_sparse_poly(ring, dim_m, capdeg, rng);
        std::vector<int> root = schanuel_root(f, opt.schanuel_budget);
        std::vector<long long> pt(root.begin(), root.end());
        ++rep.checked1;
        if (!s.contains(pt) || eval_poly(f, pt) != 0) {
          rep.property1_ok = false;
          rep.notes.push_back("schanuel root failed verification");
        }
      }
    }
    rep.property2_ok = true;
    std::uniform_int_distribution<int> szd(1, std::max(1, n));
    for (int i = 0; i < opt.samples; ++i) {
      std::vector<std::vector<long long>> t;
      int sz = szd(rng);
      for (int j = 0; j < sz; ++j) t.push_back(random_s_point(s, rng));
      PolyZpk f = interpolate_f_T(ring, n, s, t);
      ++rep.checked2;
      if (f.has_free_term() || f.degree() > capdeg) {
        rep.property2_ok = false;
        rep.notes.push_back("interpolant violates the membership checks");
      }
    }
  }
  return rep;
}

FnLemmaReport certify_family(const PointSet& s, const std::vector<FunctionTable>& family,
                             int n, const FnLemmaOptions& opt) {
  if (!s.is_explicit)
    throw std::invalid_argument("certify_family needs an explicit point set");
  FnLemmaReport rep;
  rep.bound = degree_cap(s.ring.p, s.ring.k, n) * (s.ring.pk - 1);
  rep.bound_ok = s.dim_m > rep.bound;
  rep.family_size = family.size();

  std::set<std::vector<long long>> keys;
  for (const auto& tab : family) {
    if (tab.values.size() != s.points.size())
      throw std::invalid_argument("family table size does not match |S|");
    keys.insert(tab.values);
  }
  if (!keys.count(std::vector<long long>(s.points.size(), 0)))
    throw VerificationError("family misses the zero function");
  for (const auto& a : family)
    for (const auto& b : family) {
      std::vector<long long> sum(a.values.size());
      for (std::size_t i = 0; i < sum.size(); ++i)
        sum[i] = (a.values[i] + b.values[i]) % s.ring.pk;
      if (!keys.count(sum))
        throw VerificationError("family not closed under pointwise addition");
    }

  rep.property1_ok = true;
  rep.complete1 = true;
  for (const auto& tab : family) {
    ++rep.checked1;
    if (std::find(tab.values.begin(), tab.values.end(), 0) == tab.values.end()) {
      rep.property1_ok = false;
      rep.notes.push_back("a family member has no zero on S");
    }
  }

  rep.property2_ok = true;
  auto covered = [&](const std::vector<std::size_t>& pick) {
    for (const auto& tab : family) {
      bool all1 = true;
      for (std::size_t i : pick)
        if (tab.values[i] != 1 % s.ring.pk) {
          all1 = false;
          break;
        }
      if (all1) return true;
    }
    return false;
  };
  bool complete = for_each_subset(s.points.size(), n, opt.subset_cap,
                                  [&](const std::vector<std::size_t>& pick) {
                                    ++rep.checked2;
                                    if (!covered(pick)) {
                                      rep.property2_ok = false;
                                      rep.notes.push_back("an uncovered T exists");
                                    }
                                  });
  rep.complete2 = complete;
  if (!complete) {
    Rng rng(opt.seed);
    std::uniform_int_distribution<std::size_t> pd(0, s.points.size() - 1);
    std::uniform_int_distribution<int> szd(1, std::max(1, n));
    for (int i = 0; i < opt.samples; ++i) {
      std::set<std::size_t> pick;
      int sz = szd(rng);
      while (int(pick.size()) < sz) pick.insert(pd(rng));
      ++rep.checked2;
      if (!covered(std::vector<std::size_t>(pick.begin(), pick.end()))) {
        rep.property2_ok = false;
        rep.notes.push_back("an uncovered T exists");
      }
    }
    rep.notes.push_back("property 2 checked on sampled subsets only");
  }
  return rep;
}

}  // namespace vclab
