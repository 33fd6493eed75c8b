#include "vclab/solvers.hpp"

#include <algorithm>
#include <numeric>

namespace vclab {

std::vector<bool> eval_system(const EquationSystem& sys, const FiniteGroup& carrier,
                              std::span<const int> assignment) {
  std::vector<bool> out;
  out.reserve(sys.equations.size());
  for (const Equation& eq : sys.equations)
    out.push_back(evaluate(eq.word, carrier, assignment) == 0);
  return out;
}

std::vector<bool> eval_system_g(const EquationSystem& sys, const CounterexampleSpec& spec,
                                std::span<const BigElement> assignment) {
  std::vector<bool> out;
  out.reserve(sys.equations.size());
  BigElement val;
  BigEvalScratch scratch;
  const BigElement id = big_identity(spec);
  for (const Equation& eq : sys.equations) {
    evaluate_big_into(val, eq.word, spec, assignment, scratch);
    out.push_back(val == id);
  }
  return out;
}

namespace {

std::vector<int> word_support(const MixedWord& w) {
  std::vector<int> vars;
  for (const Letter& l : w.letters)
    if (l.kind == Letter::Kind::Var) vars.push_back(l.id);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

struct Elimination {
  int target = -1;
  std::vector<int> prefix;  // variable ids in word order
  int rhs = 0;              // target = (prefix product)^-1 * rhs
};

// A product equation y_0 y_1 ... y_t c = 1 with distinct positive
// variables determines its last variable.
std::optional<Elimination> elimination_shape(const Equation& eq, const FiniteGroup& g) {
  if (eq.family != 3) return std::nullopt;
  Elimination e;
  std::vector<int> vars;
  for (std::size_t i = 0; i < eq.word.letters.size(); ++i) {
    const Letter& l = eq.word.letters[i];
    if (l.kind == Letter::Kind::Var) {
      if (l.sign != 1 || !e.prefix.empty()) return std::nullopt;  // vars first, +1 only
      vars.push_back(l.id);
    } else {
      if (i + 1 != eq.word.letters.size()) return std::nullopt;  // one trailing coeff
      e.rhs = g.inv(l.id);
    }
  }
  if (vars.size() < 2) return std::nullopt;
  std::vector<int> sorted = vars;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return std::nullopt;
  e.target = vars.back();
  e.prefix.assign(vars.begin(), vars.end() - 1);
  return e;
}

struct Search {
  const EquationSystem& sys;
  const FiniteGroup& g;
  uint64_t budget;

  std::vector<std::vector<int>> domains;
  std::vector<std::vector<int>> eq_vars;      // support per equation
  std::vector<std::vector<int>> var_eqs;      // equations touching a variable
  std::vector<Elimination> elims;
  std::vector<int> var_elim;                  // -1 or index into elims
  std::vector<int> branch;

  std::vector<int> assign;
  std::vector<int> pending;  // unassigned vars per equation
  std::vector<int> trail;
  uint64_t nodes = 0;
  bool aborted = false;
  std::optional<std::vector<int>> solution;

  explicit Search(const EquationSystem& s, const FiniteGroup& grp, uint64_t b)
      : sys(s), g(grp), budget(b) {
    domains.assign(sys.nvars, {});
    for (auto& d : domains) {
      d.resize(g.order());
      std::iota(d.begin(), d.end(), 0);
    }
    eq_vars.resize(sys.equations.size());
    var_eqs.assign(sys.nvars, {});
    for (std::size_t ei = 0; ei < sys.equations.size(); ++ei) {
      eq_vars[ei] = word_support(sys.equations[ei].word);
      for (int v : eq_vars[ei]) var_eqs[v].push_back(int(ei));
    }
    seed_domains();
    var_elim.assign(sys.nvars, -1);
    for (std::size_t ei = 0; ei < sys.equations.size(); ++ei) {
      auto e = elimination_shape(sys.equations[ei], g);
      if (!e) continue;
      if (var_elim[e->target] >= 0) continue;
      bool clean = true;  // prefix must stay branchable
      for (int v : e->prefix)
        if (var_elim[v] >= 0) clean = false;
      if (!clean) continue;
      var_elim[e->target] = int(elims.size());
      elims.push_back(*e);
    }
    for (int v = 0; v < sys.nvars; ++v)
      if (var_elim[v] < 0) branch.push_back(v);
    std::stable_sort(branch.begin(), branch.end(), [&](int a, int b) {
      if (domains[a].size() != domains[b].size())
        return domains[a].size() < domains[b].size();
      return a < b;
    });
  }

  void seed_domains() {
    std::vector<int> probe(sys.nvars, 0);
    for (std::size_t ei = 0; ei < sys.equations.size(); ++ei) {
      if (eq_vars[ei].size() != 1) continue;
      int v = eq_vars[ei].front();
      std::vector<int> keep;
      for (int cand : domains[v]) {
        probe[v] = cand;
        if (evaluate(sys.equations[ei].word, g, probe) == 0) keep.push_back(cand);
      }
      domains[v] = std::move(keep);
      probe[v] = 0;
    }
  }

  bool set_value(int v, int val) {
    assign[v] = val;
    trail.push_back(v);
    for (int ei : var_eqs[v]) {
      if (--pending[ei] == 0 &&
          evaluate(sys.equations[ei].word, g, assign) != 0)
        return false;
    }
    // a completed prefix pins the eliminated variable of the same product
    for (const Elimination& e : elims) {
      if (assign[e.target] >= 0) continue;
      bool ready = true;
      for (int pv : e.prefix)
        if (assign[pv] < 0) {
          ready = false;
          break;
        }
      if (!ready) continue;
      int prod = 0;
      for (int pv : e.prefix) prod = g.mul(prod, assign[pv]);
      int val2 = g.mul(g.inv(prod), e.rhs);
      if (!std::binary_search(domains[e.target].begin(), domains[e.target].end(), val2))
        return false;
      if (!set_value(e.target, val2)) return false;
    }
    return true;
  }

  void undo_to(std::size_t mark) {
    while (trail.size() > mark) {
      int v = trail.back();
      trail.pop_back();
      for (int ei : var_eqs[v]) ++pending[ei];
      assign[v] = -1;
    }
  }

  bool dfs(std::size_t depth) {
    if (aborted) return false;
    if (depth == branch.size()) {
      solution = assign;
      return true;
    }
    int v = branch[depth];
    if (assign[v] >= 0) return dfs(depth + 1);  // pinned by an elimination
    for (int val : domains[v]) {
      if (++nodes > budget) {
        aborted = true;
        return false;
      }
      std::size_t mark = trail.size();
      if (set_value(v, val) && dfs(depth + 1)) return true;
      undo_to(mark);
    }
    return false;
  }

  SolveResult run() {
    assign.assign(sys.nvars, -1);
    pending.resize(sys.equations.size());
    for (std::size_t ei = 0; ei < sys.equations.size(); ++ei)
      pending[ei] = int(eq_vars[ei].size());
    // constant equations fail or pass outright
    for (std::size_t ei = 0; ei < sys.equations.size(); ++ei)
      if (eq_vars[ei].empty() &&
          evaluate(sys.equations[ei].word, g, assign) != 0)
        return finish(false);
    for (int v = 0; v < sys.nvars; ++v)
      if (domains[v].empty()) return finish(false);
    dfs(0);
    return finish(true);
  }

  SolveResult finish(bool searched) {
    SolveResult r;
    r.solution = solution;
    r.exhausted = searched ? !aborted : true;
    r.nodes = nodes;
    for (const auto& d : domains) r.domain_sizes.push_back(int(d.size()));
    r.branch_order = branch;
    return r;
  }
};

}  // namespace

SolveResult backtracking_solve(const EquationSystem& sys, const FiniteGroup& carrier,
                               uint64_t node_budget) {
  Search s(sys, carrier, node_budget);
  return s.run();
}

ValueSet value_set(const MixedWord& w, const FiniteGroup& carrier, uint64_t budget,
                   uint64_t seed) {
  ValueSet out;
  const int nv = w.nvars;
  uint64_t total = 1;
  bool fits = true;
  for (int i = 0; i < nv; ++i) {
    if (total > budget / std::max(1, carrier.order())) {
      fits = false;
      break;
    }
    total *= uint64_t(carrier.order());
  }
  std::vector<int> assign(std::max(nv, 1), 0);
  if (fits && total <= budget) {
    out.complete = true;
    for (;;) {
      out.values.insert(evaluate(w, carrier, assign));
      int pos = nv - 1;
      while (pos >= 0 && assign[pos] == carrier.order() - 1) assign[pos--] = 0;
      if (pos < 0) break;
      ++assign[pos];
    }
  } else {
    out.complete = false;
    Rng rng(seed);
    std::uniform_int_distribution<int> d(0, carrier.order() - 1);
    for (uint64_t t = 0; t < budget; ++t) {
      for (int i = 0; i < nv; ++i) assign[i] = d(rng);
      out.values.insert(evaluate(w, carrier, assign));
    }
  }
  return out;
}

std::vector<int> solution_transfer(const CounterexampleSpec& spec, const MixedWord& w,
                                   int h, std::span<const BigElement> gsol) {
  if (!w.pure())
    throw std::invalid_argument("solution_transfer expects a coefficient-free word");
  MixedWord wr = reduce(w, nullptr);
  wr.nvars = w.nvars;
  const int nv = wr.nvars;
  if (int(gsol.size()) < nv)
    throw std::invalid_argument("G-assignment does not cover the word's variables");

  const BigElement target = diag(spec, h);
  if (!(evaluate_big(wr, spec, gsol) == target))
    throw std::invalid_argument("assignment does not solve w = diag(h) in G");
  if (nv == 0) return {};

  const VariableSubstitution sub = normalize_power_form(wr).second;
  MixedWord what = apply_substitution(sub, wr);
  VariableSubstitution inv = sub.inverse();

  std::vector<BigElement> transported(nv);
  for (int v = 0; v < nv; ++v)
    transported[v] =
        evaluate_big(apply_substitution(inv, generator_word(v, nv)), spec, gsol);
  if (!(evaluate_big(what, spec, transported) == target))
    throw std::logic_error("change of variables failed to transport the G-solution");

  // the power variable's function part vanishes somewhere on S
  int fidx = transported[0].f;
  int sidx = -1;
  for (int si = 0; si < spec.s_size(); ++si)
    if (spec.f_val[fidx][si] == 0) {
      sidx = si;
      break;
    }
  if (sidx < 0)
    throw std::logic_error("certified family member without a vanishing point");

  std::vector<int> over_h(nv);
  for (int v = 0; v < nv; ++v)
    over_h[v] = beta_to_b(spec.h, spec.witness, phi(spec, sidx, transported[v]));
  if (evaluate(what, spec.h, over_h) != h)
    throw std::logic_error("coordinate projection did not solve the normalized equation");

  std::vector<int> out(nv);
  for (int v = 0; v < nv; ++v)
    out[v] = evaluate(apply_substitution(sub, generator_word(v, nv)), spec.h, over_h);
  if (evaluate(wr, spec.h, out) != h)
    throw std::logic_error("transferred assignment failed re-evaluation in H");
  return out;
}

bool VcEvidence::pass() const {
  for (const VcTier& t : tiers)
    if (t.violations > 0) return false;
  return true;
}

namespace {

long long g_exponent(const CounterexampleSpec& spec, uint64_t order) {
  long long e = 1;
  BigElement x, p, tmp;
  const BigElement id = big_identity(spec);
  for (uint64_t idx = 0; idx < order; ++idx) {
    x = g_element(spec, idx);
    p = x;
    long long o = 1;
    while (!(p == id)) {
      big_mul_into(spec, tmp, p, x);
      std::swap(p, tmp);
      ++o;
    }
    e = std::lcm(e, o);
  }
  return e;
}

VcTier audit_power_word(const CounterexampleSpec& spec, long long e, uint64_t order) {
  VcTier tier{"power", "x^" + std::to_string(e), true};
  std::set<int> g_side;
  for (uint64_t idx = 0; idx < order; ++idx) {
    BigElement x = g_element(spec, idx);
    ++tier.checked;
    if (auto d = is_diagonal(spec, big_pow(spec, x, e))) g_side.insert(*d);
  }
  std::set<int> h_side;
  for (int x = 0; x < spec.h.order(); ++x) h_side.insert(spec.h.pow(x, e));
  tier.hits = g_side.size();
  if (g_side != h_side) ++tier.violations;
  return tier;
}

VcTier audit_word_sweep(const CounterexampleSpec& spec, const MixedWord& w,
                        const std::string& display, uint64_t pair_cap, int samples,
                        Rng& rng) {
  VcTier tier{"curated", display, false};
  const int nv = w.nvars;
  uint64_t order = spec.g_order();
  uint64_t total = 1;
  bool fits = true;
  for (int i = 0; i < nv; ++i) {
    if (total > pair_cap / std::max<uint64_t>(order, 1)) {
      fits = false;
      break;
    }
    total *= order;
  }
  ValueSet h_values = value_set(w, spec.h, 1u << 22);

  std::vector<BigElement> assign(std::max(nv, 1), big_identity(spec));
  BigEvalScratch scratch;
  BigElement val;
  auto check_one = [&]() {
    ++tier.checked;
    evaluate_big_into(val, w, spec, assign, scratch);
    if (auto d = is_diagonal(spec, val)) {
      ++tier.hits;
      if (!h_values.values.count(*d)) {
        ++tier.violations;
        return;
      }
      try {
        std::vector<int> hs = solution_transfer(spec, w, *d, assign);
        if (evaluate(w, spec.h, hs) != *d)
          ++tier.violations;
        else
          ++tier.transferred;
      } catch (const std::exception&) {
        ++tier.violations;
      }
    }
  };

  if (fits && total <= pair_cap) {
    tier.complete = true;
    std::vector<uint64_t> idx(nv, 0);
    for (int i = 0; i < nv; ++i) assign[i] = g_element(spec, 0);
    for (;;) {
      check_one();
      int pos = nv - 1;
      while (pos >= 0 && idx[pos] == order - 1) {
        idx[pos] = 0;
        assign[pos] = g_element(spec, 0);
        --pos;
      }
      if (pos < 0) break;
      ++idx[pos];
      assign[pos] = g_element(spec, idx[pos]);
    }
  } else {
    tier.note = "sweep exceeds cap; sampled";
    std::uniform_int_distribution<uint64_t> d(0, order - 1);
    for (int t = 0; t < samples; ++t) {
      for (int i = 0; i < nv; ++i) assign[i] = g_element(spec, d(rng));
      check_one();
    }
  }
  return tier;
}

}  // namespace

VcEvidence verbal_closedness_audit(const CounterexampleSpec& spec,
                                   const AuditOptions& opt) {
  VcEvidence ev;
  ev.seed = opt.seed;
  Rng rng(opt.seed);
  uint64_t order = spec.g_order();

  if (opt.tier1) {
    if (order <= opt.budgets.g_enum_cap) {
      long long expg = g_exponent(spec, order);
      for (long long e = 1; e <= expg; ++e)
        ev.tiers.push_back(audit_power_word(spec, e, order));
    } else {
      VcTier tier{"power", "x^e", false};
      tier.note = "|G| exceeds the enumeration cap; power sweep sampled";
      std::uniform_int_distribution<uint64_t> d(0, order - 1);
      std::set<int> h_powers;
      for (long long e = 1; e <= spec.h.exponent(); ++e) {
        h_powers.clear();
        for (int x = 0; x < spec.h.order(); ++x) h_powers.insert(spec.h.pow(x, e));
        for (int t = 0; t < opt.assignments; ++t) {
          BigElement x = g_element(spec, d(rng));
          ++tier.checked;
          if (auto dd = is_diagonal(spec, big_pow(spec, x, e))) {
            ++tier.hits;
            if (!h_powers.count(*dd)) ++tier.violations;
          }
        }
      }
      ev.tiers.push_back(tier);
    }
  }

  if (opt.tier2) {
    for (const std::string& text : opt.curated) {
      MixedWord w = parse_word(text, &spec.h);
      ev.tiers.push_back(
          audit_word_sweep(spec, w, text, opt.budgets.g_pair_cap, opt.assignments, rng));
    }
  }

  if (opt.tier3) {
    std::uniform_int_distribution<uint64_t> gd(0, order - 1);
    std::uniform_int_distribution<int> hd(0, spec.h.order() - 1);
    for (int t = 0; t < opt.trials; ++t) {
      MixedWord w = random_reduced_word(rng, opt.max_len, opt.max_vars);
      VcTier tier{"sampled", format_word(w), false};
      std::vector<BigElement> assign(w.nvars, big_identity(spec));
      BigEvalScratch scratch;
      BigElement val;
      for (int a = 0; a < opt.assignments; ++a) {
        bool diagonal_seeded = a % 2 == 0;
        for (int v = 0; v < w.nvars; ++v)
          assign[v] = diagonal_seeded ? diag(spec, hd(rng)) : g_element(spec, gd(rng));
        ++tier.checked;
        evaluate_big_into(val, w, spec, assign, scratch);
        if (auto d = is_diagonal(spec, val)) {
          ++tier.hits;
          try {
            std::vector<int> hs = solution_transfer(spec, w, *d, assign);
            if (evaluate(w, spec.h, hs) != *d)
              ++tier.violations;
            else
              ++tier.transferred;
          } catch (const std::exception&) {
            ++tier.violations;
          }
        }
      }
      ev.tiers.push_back(std::move(tier));
    }
  }
  return ev;
}

Certificate certify_not_algebraically_closed(const CounterexampleSpec& spec,
                                             const Budgets& budgets, uint64_t seed) {
  spec.validate();
  Certificate cert;
  cert.seed = seed;
  cert.spec = spec;

  EquationSystem sys = build_equation_system(spec);
  cert.eq_count = sys.equations.size();
  cert.eq_family_counts = sys.family_counts();

  cert.g_solution = obvious_solution(spec);
  std::vector<bool> residuals = eval_system_g(sys, spec, cert.g_solution);
  cert.residuals_ok =
      std::all_of(residuals.begin(), residuals.end(), [](bool b) { return b; });
  if (!cert.residuals_ok)
    throw VerificationError("the G-solution left a nonidentity residual");

  SolveResult res = backtracking_solve(sys, spec.h, budgets.solver_nodes);
  if (res.solution)
    throw VerificationError("the system is solvable over H; construction invalid");
  if (!res.exhausted)
    throw BudgetExceeded("H-side search ran out of budget before exhausting the space");
  cert.h_exhausted = true;
  cert.h_nodes = res.nodes;
  cert.h_domain_sizes = res.domain_sizes;
  return cert;
}

}  // namespace vclab
