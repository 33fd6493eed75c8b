#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace vclab {

inline constexpr const char* kToolVersion = "0.1.0";

// A search or enumeration was asked to exceed its configured limits.
// Distinct from verification failure: nothing is known to be wrong,
// we simply refused to do the work.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// A check that was expected to pass did not (bad certificate, violated
// residual, unsolvable-claimed system with a solution, ...).
struct VerificationError : std::runtime_error {
  explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

using Rng = std::mt19937_64;

// p^e with overflow detection; throws on overflow past 2^62.
inline long long checked_pow(long long base, long long exp) {
  long long r = 1;
  for (long long i = 0; i < exp; ++i) {
    if (r > (1LL << 62) / (base > 1 ? base : 1))
      throw BudgetExceeded("integer power overflow: " + std::to_string(base) + "^" +
                           std::to_string(exp));
    r *= base;
  }
  return r;
}

inline long long pow_mod(long long base, long long exp, long long mod) {
  base %= mod;
  if (base < 0) base += mod;
  long long r = 1 % mod;
  while (exp > 0) {
    if (exp & 1) r = (r * base) % mod;
    base = (base * base) % mod;
    exp >>= 1;
  }
  return r;
}

inline bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Knobs for every exhaustive search in the toolkit. Exceeding one raises
// BudgetExceeded (or downgrades to a sampled check where the caller says so).
struct Budgets {
  int lattice_group_cap = 64;            // max |H| for subgroup-lattice work
  std::size_t lattice_subgroup_cap = 60000;
  std::uint64_t clique_nodes = 20'000'000;
  int family_size_cap = 64;              // bounded_n_search family size
  std::uint64_t family_enum_cap = 1u << 20;
  std::size_t s_explicit_cap = 1u << 16;
  std::uint64_t solver_nodes = 200'000'000;
  std::uint64_t schanuel_cap = 1u << 22;
  std::uint64_t poly_terms_cap = 2'000'000;
  int htilde_cap = 4096;
  std::uint64_t g_enum_cap = 1u << 22;   // tier (i) full sweep
  std::uint64_t g_pair_cap = 8'000'000;  // tier (ii) full sweep
};

}  // namespace vclab
