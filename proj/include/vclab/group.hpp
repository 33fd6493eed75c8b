#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vclab/common.hpp"

namespace vclab {

/// A finite group given by its full Cayley table over element indices
/// 0..order-1. Index 0 is the identity. Tables are validated on
/// construction (Latin square, identity, associativity) and immutable
/// afterwards; sharing across threads is safe.
class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup({{0}}, {"0"}) {}  // trivial group
  explicit FiniteGroup(std::vector<std::vector<int>> rows,
                       std::vector<std::string> names = {});

  int order() const { return order_; }
  int mul(int a, int b) const { return table_[std::size_t(a) * order_ + b]; }
  int inv(int a) const { return inv_[a]; }
  int conjugate(int a, int b) const { return mul(mul(inv(b), a), b); }  // a^b
  int comm(int a, int b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }
  bool commutes(int a, int b) const { return mul(a, b) == mul(b, a); }
  int pow(int a, long long e) const;
  int order_of(int a) const;
  long long exponent() const;
  bool is_abelian() const;

  const std::string& name(int a) const { return names_[a]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<int> element_by_name(const std::string& s) const;
  std::vector<std::vector<int>> rows() const;

 private:
  int order_;
  std::vector<int> table_;
  std::vector<int> inv_;
  std::vector<std::string> names_;
  void validate() const;
};

/// Members are a strictly increasing list of element indices of a parent
/// group; always contains 0.
struct Subgroup {
  std::vector<int> members;
  bool contains(int e) const;
  int order() const { return int(members.size()); }
  bool operator==(const Subgroup& o) const { return members == o.members; }
};

/// Witness that the centre is not pure: b^{p^k} is central but not the
/// p^k-th power of any central element.
struct PurityWitness {
  int b = 0;
  long long p = 2;
  int k = 1;
};

Subgroup centre(const FiniteGroup& g);
Subgroup centralizer(const FiniteGroup& g, std::span<const int> xs);
Subgroup closure(const FiniteGroup& g, std::span<const int> gens);
bool is_subgroup(const FiniteGroup& g, const Subgroup& s);
bool is_normal(const FiniteGroup& g, const Subgroup& s);
bool is_central_subgroup(const FiniteGroup& g, const Subgroup& s);

/// b^{p^k} lies in the centre. The hypothesis of the embedding
/// construction; weaker than full witness validity.
bool central_power_ok(const FiniteGroup& h, const PurityWitness& w);

/// Full witness validity: central_power_ok and b^{p^k} is not z^{p^k}
/// for any central z.
bool witness_valid(const FiniteGroup& h, const PurityWitness& w);
void require_witness(const FiniteGroup& h, const PurityWitness& w);

/// {h | h^{p^k} = 1 and [h,b] = 1}.
std::vector<int> special_set(const FiniteGroup& h, const PurityWitness& w);

/// Smallest (p, k, b) witness in lexicographic order, if the centre is
/// not pure; p ranges over primes dividing |H|, k over p^k <= exponent(H).
std::optional<PurityWitness> purity_witness_search(const FiniteGroup& h);

/// B cap {a^{p^k}} == {b^{p^k} | b in B} for a central subgroup B.
bool p_pure_check(const FiniteGroup& a, const Subgroup& b, long long p, int k);

/// All subgroups, sorted by (order, member list). Requires
/// |G| <= budgets.lattice_group_cap.
std::vector<Subgroup> subgroup_lattice(const FiniteGroup& g, const Budgets& budgets = {});

struct BoundedN {
  int n = 0;
  bool exact = false;
};

/// Largest family of pairwise elementwise-commuting subgroups whose
/// product is H, none of which centralises E. n = 0 (exact) when E is
/// central; exact=false when a budget stopped the search (lower bound).
BoundedN bounded_n_search(const FiniteGroup& h, std::span<const int> e,
                          int size_cap = 64, const Budgets& budgets = {});

/// Greedy generating list modulo the centre (smallest index first).
std::vector<int> generators_mod_centre(const FiniteGroup& h);

/// x -> x^{|H:F|} for central F; checked to be a homomorphism into F.
std::vector<int> transfer_map(const FiniteGroup& h, const Subgroup& f);

/// Normal complement C with C * Z(H) = H and C cap Z(H) = 1, if any.
std::optional<Subgroup> centre_direct_factor(const FiniteGroup& h,
                                             const Budgets& budgets = {});

std::vector<long long> prime_divisors(long long n);

}  // namespace vclab
