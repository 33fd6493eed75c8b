#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vclab/group.hpp"
#include "vclab/words.hpp"
#include "vclab/zpk.hpp"

namespace vclab {

/// Everything needed to work inside G = F |x prod_{s in S} H_s without
/// materializing G: the base group, the witness, the certified function
/// family, and lookup tables for the twisting action.
struct CounterexampleSpec {
  FiniteGroup h;
  PurityWitness witness;
  int n = 0;
  bool n_exact = true;
  bool n_caveat = false;
  int n_used = 1;
  int dim_m = 0;
  PointSet s;
  std::vector<FunctionTable> family;  // sorted by values; family[0] is zero
  std::vector<int> gens;
  FnLemmaReport certification;

  // derived lookup tables
  long long pk = 0;
  std::vector<std::vector<int>> f_val;  // f_val[fi][si] in [0, p^k)
  std::vector<std::vector<int>> f_add;
  std::vector<int> f_neg;
  std::vector<std::vector<int>> conj_b;  // conj_b[r][x] = x^{b^r}
  std::vector<int> b_pow;

  void finalize();        // build the lookup tables
  void validate() const;  // spec invariants; throws on violation
  int f_index(const std::vector<long long>& values) const;  // -1 if absent

  int s_size() const { return int(s.points.size()); }
  uint64_t g_order() const;  // |F| * |H|^|S|, throws on overflow
};

/// Element of G: the function part as an index into the family, one
/// H-component per point of S in S-order.
struct BigElement {
  int f = 0;
  std::vector<int> comps;
  bool operator==(const BigElement&) const = default;
};

BigElement big_identity(const CounterexampleSpec& spec);
void big_mul_into(const CounterexampleSpec& spec, BigElement& dst,
                  const BigElement& a, const BigElement& b);
BigElement big_mul(const CounterexampleSpec& spec, const BigElement& a,
                   const BigElement& b);
void big_inv_into(const CounterexampleSpec& spec, BigElement& dst, const BigElement& a);
BigElement big_inv(const CounterexampleSpec& spec, const BigElement& a);
BigElement big_pow(const CounterexampleSpec& spec, const BigElement& a, long long e);
BigElement big_comm(const CounterexampleSpec& spec, const BigElement& a,
                    const BigElement& b);

BigElement diag(const CounterexampleSpec& spec, int h);
std::optional<int> is_diagonal(const CounterexampleSpec& spec, const BigElement& x);

/// Enumeration of G by index: f part first, then components in S-order.
BigElement g_element(const CounterexampleSpec& spec, uint64_t idx);
uint64_t g_index(const CounterexampleSpec& spec, const BigElement& x);

/// The auxiliary group <beta>_{p^k} |x H with h^beta = h^b, materialized
/// as a Cayley table; element (a, h) has index a * |H| + h.
struct Htilde {
  FiniteGroup group;
  long long pk = 0;
  int h_order = 0;
  int encode(long long a, int h) const { return int(a) * h_order + h; }
  std::pair<long long, int> decode(int idx) const { return {idx / h_order, idx % h_order}; }
};

struct HtildeElem {
  long long a = 0;  // beta exponent in [0, p^k)
  int h = 0;
  bool operator==(const HtildeElem&) const = default;
};

Htilde build_htilde(const FiniteGroup& h, const PurityWitness& w, int order_cap = 4096);

/// Coordinate homomorphism at the point with index s_idx.
HtildeElem phi(const CounterexampleSpec& spec, int s_idx, const BigElement& x);

/// beta^a h  ->  b^a h, computed in H.
int beta_to_b(const FiniteGroup& h, const PurityWitness& w, const HtildeElem& t);

struct Equation {
  MixedWord word;  // the equation is word = 1 over H
  int family = 0;  // 1..5
  std::string label;
};

/// Variables: x_f for f in F (ids 0..|F|-1), then y_{i,s} with id
/// |F| + i*|S| + s. Coefficients live in H; over G they embed diagonally.
struct EquationSystem {
  int nvars = 0;
  std::vector<std::string> var_names;
  std::vector<Equation> equations;
  std::vector<int> family_counts() const;  // indexed 1..5
};

int x_var(const CounterexampleSpec& spec, int f);
int y_var(const CounterexampleSpec& spec, int gen_idx, int s_idx);

EquationSystem build_equation_system(const CounterexampleSpec& spec);

/// x_f -> the pure-F element f, y_{i,s} -> (h_i)_s.
std::vector<BigElement> obvious_solution(const CounterexampleSpec& spec);

/// Word evaluation over G with coefficients embedded diagonally.
struct BigEvalScratch {
  BigElement acc, tmp, letter;
};
void evaluate_big_into(BigElement& out, const MixedWord& w, const CounterexampleSpec& spec,
                       std::span<const BigElement> assignment, BigEvalScratch& scratch);
BigElement evaluate_big(const MixedWord& w, const CounterexampleSpec& spec,
                        std::span<const BigElement> assignment);

struct BuildOptions {
  std::optional<PurityWitness> witness;
  std::optional<int> n_used_override;
  std::optional<int> dim_m_override;  // downward only; re-certified
  std::optional<std::vector<FunctionTable>> family;
  Budgets budgets;
};

/// Assemble and certify the full spec for a group whose centre is not
/// pure. Throws when no witness exists or certification fails.
CounterexampleSpec build_spec(const FiniteGroup& h, const BuildOptions& opt = {});

}  // namespace vclab
