#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "vclab/construction.hpp"

namespace vclab {

std::vector<bool> eval_system(const EquationSystem& sys, const FiniteGroup& carrier,
                              std::span<const int> assignment);
std::vector<bool> eval_system_g(const EquationSystem& sys, const CounterexampleSpec& spec,
                                std::span<const BigElement> assignment);

struct SolveResult {
  std::optional<std::vector<int>> solution;  // first under the branch order
  bool exhausted = false;                    // full search space covered
  uint64_t nodes = 0;
  std::vector<int> domain_sizes;  // after propagation, by variable id
  std::vector<int> branch_order;  // canonical order used by the search
};

/// Depth-first search with unary-constraint seeding and functional
/// elimination of one product-equation variable per generator. UNSAT is
/// reported only with exhausted=true; running out of budget returns an
/// empty result with exhausted=false.
SolveResult backtracking_solve(const EquationSystem& sys, const FiniteGroup& carrier,
                               uint64_t node_budget = 200'000'000);

struct ValueSet {
  std::set<int> values;
  bool complete = false;
};

ValueSet value_set(const MixedWord& w, const FiniteGroup& carrier, uint64_t budget,
                   uint64_t seed = 0);

/// Constructive transfer of a G-solution of w = diag(h) to an H-solution
/// of w = h: change of variables, coordinate homomorphism at a vanishing
/// point of the power variable's function part, beta -> b replacement,
/// transport back. The result is re-verified in H.
std::vector<int> solution_transfer(const CounterexampleSpec& spec, const MixedWord& w,
                                   int h, std::span<const BigElement> gsol);

struct VcTier {
  std::string tier;  // "power" / "curated" / "sampled"
  std::string word;
  bool complete = false;
  uint64_t checked = 0;
  uint64_t hits = 0;
  uint64_t transferred = 0;
  uint64_t violations = 0;
  std::string note;
};

struct VcEvidence {
  std::vector<VcTier> tiers;
  uint64_t seed = 0;
  bool pass() const;
};

struct AuditOptions {
  bool tier1 = true;
  bool tier2 = true;
  bool tier3 = true;
  std::vector<std::string> curated = {"x^-1 y^-1 x y", "x x y y", "x y x y",
                                      "x x y^-1 y^-1"};
  int trials = 12;       // tier-3 random words
  int assignments = 64;  // tier-3 assignments per word
  int max_len = 12;
  int max_vars = 3;
  uint64_t seed = 0;
  Budgets budgets;
};

VcEvidence verbal_closedness_audit(const CounterexampleSpec& spec,
                                   const AuditOptions& opt = {});

/// End-to-end record: the spec, the G-solution with its residual check,
/// and the exhaustive-UNSAT statistics for H. Deterministic given the
/// seed; carries no timing.
struct Certificate {
  std::string version = kToolVersion;
  uint64_t seed = 0;
  CounterexampleSpec spec;
  std::size_t eq_count = 0;
  std::vector<int> eq_family_counts;  // indexed 1..5
  std::vector<BigElement> g_solution;
  bool residuals_ok = false;
  bool h_exhausted = false;
  uint64_t h_nodes = 0;
  std::vector<int> h_domain_sizes;
  std::optional<VcEvidence> vc;
};

Certificate certify_not_algebraically_closed(const CounterexampleSpec& spec,
                                             const Budgets& budgets = {},
                                             uint64_t seed = 0);

}  // namespace vclab
