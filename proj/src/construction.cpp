#include "vclab/construction.hpp"

#include <algorithm>
#include <set>

namespace vclab {

void CounterexampleSpec::finalize() {
  pk = checked_pow(witness.p, witness.k);
  const int ns = s_size();
  f_val.assign(family.size(), std::vector<int>(ns));
  for (std::size_t fi = 0; fi < family.size(); ++fi)
    for (int si = 0; si < ns; ++si) f_val[fi][si] = int(family[fi].values[si]);

  f_add.assign(family.size(), std::vector<int>(family.size(), -1));
  f_neg.assign(family.size(), -1);
  for (std::size_t a = 0; a < family.size(); ++a) {
    for (std::size_t b = 0; b < family.size(); ++b) {
      std::vector<long long> sum(ns);
      for (int si = 0; si < ns; ++si)
        sum[si] = (family[a].values[si] + family[b].values[si]) % pk;
      f_add[a][b] = f_index(sum);
      if (f_add[a][b] < 0)
        throw VerificationError("family not closed under addition");
    }
    std::vector<long long> neg(ns);
    for (int si = 0; si < ns; ++si) neg[si] = (pk - family[a].values[si]) % pk;
    f_neg[a] = f_index(neg);
    if (f_neg[a] < 0) throw VerificationError("family not closed under negation");
  }

  b_pow.assign(pk, 0);
  for (long long r = 1; r < pk; ++r) b_pow[r] = h.mul(b_pow[r - 1], witness.b);
  conj_b.assign(pk, std::vector<int>(h.order()));
  for (long long r = 0; r < pk; ++r)
    for (int x = 0; x < h.order(); ++x) conj_b[r][x] = h.conjugate(x, b_pow[r]);
}

int CounterexampleSpec::f_index(const std::vector<long long>& values) const {
  auto it = std::lower_bound(family.begin(), family.end(), values,
                             [](const FunctionTable& t, const std::vector<long long>& v) {
                               return t.values < v;
                             });
  if (it == family.end() || it->values != values) return -1;
  return int(it - family.begin());
}

uint64_t CounterexampleSpec::g_order() const {
  uint64_t total = family.size();
  for (int si = 0; si < s_size(); ++si) {
    if (total > (1ull << 62) / h.order())
      throw BudgetExceeded("|G| does not fit in 64 bits");
    total *= uint64_t(h.order());
  }
  return total;
}

void CounterexampleSpec::validate() const {
  require_witness(h, witness);
  if (!s.is_explicit) throw std::invalid_argument("spec needs an explicit point set");
  if (family.empty() || f_index(std::vector<long long>(s_size(), 0)) != 0)
    throw std::invalid_argument("family[0] must be the zero function");
  if (!std::is_sorted(family.begin(), family.end()))
    throw std::invalid_argument("family must be sorted by value vector");
  FnLemmaReport rep = certify_family(s, family, n_used);
  if (!rep.pass())
    throw std::invalid_argument("family fails the two-property certification");
  // every generator list must still generate modulo the centre
  Subgroup z = centre(h);
  std::vector<int> g2 = gens;
  g2.insert(g2.end(), z.members.begin(), z.members.end());
  if (closure(h, g2).order() != h.order())
    throw std::invalid_argument("gens do not generate H modulo its centre");
}

BigElement big_identity(const CounterexampleSpec& spec) {
  return {0, std::vector<int>(spec.s_size(), 0)};
}

void big_mul_into(const CounterexampleSpec& spec, BigElement& dst,
                  const BigElement& a, const BigElement& b) {
  // (f1, d1)(f2, d2) = (f1 + f2, d1^{f2} d2), with (d1^{f2})_s = d1_s^{b^{f2(s)}}
  dst.f = spec.f_add[a.f][b.f];
  dst.comps.resize(spec.s_size());
  const std::vector<int>& bv = spec.f_val[b.f];
  for (int si = 0; si < spec.s_size(); ++si)
    dst.comps[si] = spec.h.mul(spec.conj_b[bv[si]][a.comps[si]], b.comps[si]);
}

BigElement big_mul(const CounterexampleSpec& spec, const BigElement& a,
                   const BigElement& b) {
  BigElement out;
  big_mul_into(spec, out, a, b);
  return out;
}

void big_inv_into(const CounterexampleSpec& spec, BigElement& dst, const BigElement& a) {
  dst.f = spec.f_neg[a.f];
  dst.comps.resize(spec.s_size());
  const std::vector<int>& nv = spec.f_val[dst.f];
  for (int si = 0; si < spec.s_size(); ++si)
    dst.comps[si] = spec.conj_b[nv[si]][spec.h.inv(a.comps[si])];
}

BigElement big_inv(const CounterexampleSpec& spec, const BigElement& a) {
  BigElement out;
  big_inv_into(spec, out, a);
  return out;
}

BigElement big_pow(const CounterexampleSpec& spec, const BigElement& a, long long e) {
  if (e < 0) return big_pow(spec, big_inv(spec, a), -e);
  BigElement acc = big_identity(spec), base = a, tmp;
  while (e > 0) {
    if (e & 1) {
      big_mul_into(spec, tmp, acc, base);
      std::swap(acc, tmp);
    }
    e >>= 1;
    if (e > 0) {
      big_mul_into(spec, tmp, base, base);
      std::swap(base, tmp);
    }
  }
  return acc;
}

BigElement big_comm(const CounterexampleSpec& spec, const BigElement& a,
                    const BigElement& b) {
  return big_mul(spec, big_mul(spec, big_inv(spec, a), big_inv(spec, b)),
                 big_mul(spec, a, b));
}

BigElement diag(const CounterexampleSpec& spec, int h) {
  return {0, std::vector<int>(spec.s_size(), h)};
}

std::optional<int> is_diagonal(const CounterexampleSpec& spec, const BigElement& x) {
  if (x.f != 0) return std::nullopt;
  for (int si = 1; si < spec.s_size(); ++si)
    if (x.comps[si] != x.comps[0]) return std::nullopt;
  return x.comps[0];
}

BigElement g_element(const CounterexampleSpec& spec, uint64_t idx) {
  BigElement x;
  x.comps.resize(spec.s_size());
  for (int si = spec.s_size() - 1; si >= 0; --si) {
    x.comps[si] = int(idx % spec.h.order());
    idx /= spec.h.order();
  }
  x.f = int(idx);
  return x;
}

uint64_t g_index(const CounterexampleSpec& spec, const BigElement& x) {
  uint64_t idx = uint64_t(x.f);
  for (int si = 0; si < spec.s_size(); ++si)
    idx = idx * spec.h.order() + uint64_t(x.comps[si]);
  return idx;
}

Htilde build_htilde(const FiniteGroup& h, const PurityWitness& w, int order_cap) {
  if (!central_power_ok(h, w))
    throw std::invalid_argument("b^{p^k} must be central to build the extension");
  long long pk = checked_pow(w.p, w.k);
  long long order = pk * h.order();
  if (order > order_cap)
    throw BudgetExceeded("extension order " + std::to_string(order) +
                         " exceeds cap " + std::to_string(order_cap));
  Htilde ht;
  ht.pk = pk;
  ht.h_order = h.order();
  int n = int(order);
  std::vector<std::vector<int>> rows(n, std::vector<int>(n));
  for (long long a1 = 0; a1 < pk; ++a1)
    for (int h1 = 0; h1 < h.order(); ++h1)
      for (long long a2 = 0; a2 < pk; ++a2)
        for (int h2 = 0; h2 < h.order(); ++h2) {
          int conj = h.conjugate(h1, h.pow(w.b, a2));
          rows[std::size_t(a1) * h.order() + h1][std::size_t(a2) * h.order() + h2] =
              int(((a1 + a2) % pk) * h.order() + h.mul(conj, h2));
        }
  std::vector<std::string> names(n);
  for (long long a = 0; a < pk; ++a)
    for (int x = 0; x < h.order(); ++x)
      names[std::size_t(a) * h.order() + x] =
          a == 0 ? h.name(x)
                 : "B" + (a > 1 ? "^" + std::to_string(a) : "") + "*" + h.name(x);
  ht.group = FiniteGroup(std::move(rows), std::move(names));
  return ht;
}

HtildeElem phi(const CounterexampleSpec& spec, int s_idx, const BigElement& x) {
  return {spec.f_val[x.f][s_idx], x.comps[s_idx]};
}

int beta_to_b(const FiniteGroup& h, const PurityWitness& w, const HtildeElem& t) {
  return h.mul(h.pow(w.b, t.a), t.h);
}

int x_var(const CounterexampleSpec& spec, int f) { return f; }

int y_var(const CounterexampleSpec& spec, int gen_idx, int s_idx) {
  return int(spec.family.size()) + gen_idx * spec.s_size() + s_idx;
}

std::vector<int> EquationSystem::family_counts() const {
  std::vector<int> counts(6, 0);
  for (const Equation& e : equations)
    if (e.family >= 1 && e.family <= 5) ++counts[e.family];
  return counts;
}

EquationSystem build_equation_system(const CounterexampleSpec& spec) {
  EquationSystem sys;
  const int nf = int(spec.family.size());
  const int ns = spec.s_size();
  const int ng = int(spec.gens.size());
  sys.nvars = nf + ng * ns;
  sys.var_names.resize(sys.nvars);
  for (int f = 0; f < nf; ++f) sys.var_names[f] = "x_f" + std::to_string(f);
  for (int i = 0; i < ng; ++i)
    for (int si = 0; si < ns; ++si)
      sys.var_names[y_var(spec, i, si)] =
          "y_g" + std::to_string(i) + "_s" + std::to_string(si);

  const int b = spec.witness.b;
  auto add = [&](std::vector<Letter> letters, int fam, std::string label) {
    MixedWord w = reduce(MixedWord{std::move(letters), sys.nvars}, &spec.h);
    w.nvars = sys.nvars;
    sys.equations.push_back({std::move(w), fam, std::move(label)});
  };

  // (1) x_f^{p^k} = 1
  for (int f = 0; f < nf; ++f) {
    std::vector<Letter> ls;
    for (long long r = 0; r < spec.pk; ++r) ls.push_back(Letter::var(x_var(spec, f), 1));
    add(std::move(ls), 1, sys.var_names[f] + "^" + std::to_string(spec.pk) + " = 1");
  }
  // (2) y_{i,s}^{x_f} = y_{i,s}^{b^{f(s)}}
  for (int i = 0; i < ng; ++i)
    for (int si = 0; si < ns; ++si)
      for (int f = 0; f < nf; ++f) {
        int xv = x_var(spec, f), yv = y_var(spec, i, si);
        int e = spec.f_val[f][si];
        int be = spec.h.pow(b, e);
        add({Letter::var(xv, -1), Letter::var(yv, 1), Letter::var(xv, 1),
             Letter::coeff(spec.h.inv(be)), Letter::var(yv, -1), Letter::coeff(be)},
            2,
            sys.var_names[yv] + "^" + sys.var_names[xv] + " = " + sys.var_names[yv] +
                "^b^" + std::to_string(e));
      }
  // (3) prod_{q in S} y_{i,q} = h_i
  for (int i = 0; i < ng; ++i) {
    std::vector<Letter> ls;
    for (int si = 0; si < ns; ++si) ls.push_back(Letter::var(y_var(spec, i, si), 1));
    ls.push_back(Letter::coeff(spec.h.inv(spec.gens[i])));
    add(std::move(ls), 3,
        "prod_s y_g" + std::to_string(i) + " = " + spec.h.name(spec.gens[i]));
  }
  // (4) [y_{i,s}, y_{j,s'}] = 1 for s != s'
  for (int i = 0; i < ng; ++i)
    for (int j = 0; j < ng; ++j)
      for (int si = 0; si < ns; ++si)
        for (int sj = 0; sj < ns; ++sj) {
          if (si == sj) continue;
          int yi = y_var(spec, i, si), yj = y_var(spec, j, sj);
          add({Letter::var(yi, -1), Letter::var(yj, -1), Letter::var(yi, 1),
               Letter::var(yj, 1)},
              4, "[" + sys.var_names[yi] + ", " + sys.var_names[yj] + "] = 1");
        }
  // (5) [x_f, b] = 1
  for (int f = 0; f < nf; ++f) {
    int xv = x_var(spec, f);
    add({Letter::var(xv, -1), Letter::coeff(spec.h.inv(b)), Letter::var(xv, 1),
         Letter::coeff(b)},
        5, "[" + sys.var_names[xv] + ", b] = 1");
  }
  return sys;
}

std::vector<BigElement> obvious_solution(const CounterexampleSpec& spec) {
  const int nf = int(spec.family.size());
  const int ns = spec.s_size();
  const int ng = int(spec.gens.size());
  std::vector<BigElement> sol(nf + ng * ns, big_identity(spec));
  for (int f = 0; f < nf; ++f) sol[f].f = f;
  for (int i = 0; i < ng; ++i)
    for (int si = 0; si < ns; ++si) sol[y_var(spec, i, si)].comps[si] = spec.gens[i];
  return sol;
}

void evaluate_big_into(BigElement& out, const MixedWord& w, const CounterexampleSpec& spec,
                       std::span<const BigElement> assignment, BigEvalScratch& scratch) {
  if (int(assignment.size()) < w.nvars)
    throw std::invalid_argument("assignment does not cover the word's variables");
  out = big_identity(spec);
  for (const Letter& l : w.letters) {
    const BigElement* v;
    if (l.kind == Letter::Kind::Var) {
      if (l.sign > 0) {
        v = &assignment[l.id];
      } else {
        big_inv_into(spec, scratch.letter, assignment[l.id]);
        v = &scratch.letter;
      }
    } else {
      scratch.letter.f = 0;
      scratch.letter.comps.assign(spec.s_size(), l.id);  // diagonal embedding
      v = &scratch.letter;
    }
    big_mul_into(spec, scratch.tmp, out, *v);
    std::swap(out, scratch.tmp);
  }
}

BigElement evaluate_big(const MixedWord& w, const CounterexampleSpec& spec,
                        std::span<const BigElement> assignment) {
  BigElement out;
  BigEvalScratch scratch;
  evaluate_big_into(out, w, spec, assignment, scratch);
  return out;
}

CounterexampleSpec build_spec(const FiniteGroup& h, const BuildOptions& opt) {
  CounterexampleSpec spec{h};
  if (opt.witness) {
    spec.witness = *opt.witness;
    require_witness(h, spec.witness);
  } else {
    auto w = purity_witness_search(h);
    if (!w)
      throw std::invalid_argument(
          "the centre is pure: the construction does not apply to this group");
    spec.witness = *w;
  }

  std::vector<int> e = special_set(h, spec.witness);
  BoundedN bn = bounded_n_search(h, e, opt.budgets.family_size_cap, opt.budgets);
  spec.n = bn.n;
  spec.n_exact = bn.exact;
  spec.n_caveat = !bn.exact;
  spec.n_used = bn.exact ? std::max(bn.n, 1) : std::max(bn.n + 1, 1);
  if (opt.n_used_override) {
    if (*opt.n_used_override < 1)
      throw std::invalid_argument("n override must be positive");
    spec.n_used = *opt.n_used_override;
  }

  PrimePower ring = PrimePower::make(spec.witness.p, spec.witness.k);
  spec.pk = ring.pk;
  spec.dim_m = choose_m(ring.p, ring.k, spec.n_used);
  if (opt.dim_m_override) {
    if (*opt.dim_m_override > spec.dim_m)
      throw std::invalid_argument("dim_m can only be overridden downward");
    if (*opt.dim_m_override < 1) throw std::invalid_argument("dim_m must be positive");
    spec.dim_m = *opt.dim_m_override;
  }

  spec.s = PointSet::make(ring, spec.dim_m, opt.budgets.s_explicit_cap);
  if (!spec.s.is_explicit)
    throw BudgetExceeded("point set too large to enumerate explicitly");

  if (opt.family) {
    spec.family = *opt.family;
    std::sort(spec.family.begin(), spec.family.end());
  } else {
    spec.family =
        enumerate_F(ring, spec.n_used, spec.dim_m, spec.s, opt.budgets.family_enum_cap);
  }
  spec.certification = certify_family(spec.s, spec.family, spec.n_used);
  if (!spec.certification.pass())
    throw std::invalid_argument("function family failed certification");

  spec.gens = generators_mod_centre(h);
  spec.finalize();
  spec.validate();
  return spec;
}

}  // namespace vclab
