#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vclab/common.hpp"

namespace vclab {

/// The coefficient ring Z_{p^k}.
struct PrimePower {
  long long p;
  int k;
  long long pk;
  static PrimePower make(long long p, int k);
  bool operator==(const PrimePower&) const = default;
};

using MultiIndex = std::vector<int>;

/// Sparse multivariate polynomial over Z_{p^k}. Stored coefficients are
/// nonzero and reduced into [0, p^k).
struct PolyZpk {
  PrimePower ring{2, 1, 2};
  int dim_m = 0;
  std::map<MultiIndex, long long> terms;

  int degree() const;  // max total degree, 0 for the zero polynomial
  bool has_free_term() const;
  bool zero() const { return terms.empty(); }
  bool operator==(const PolyZpk&) const = default;
};

PolyZpk poly_zero(PrimePower ring, int dim_m);
PolyZpk poly_const(PrimePower ring, int dim_m, long long c);
PolyZpk poly_var(PrimePower ring, int dim_m, int var);
void poly_add_term(PolyZpk& f, MultiIndex idx, long long c);
PolyZpk poly_add(const PolyZpk& a, const PolyZpk& b);
PolyZpk poly_neg(const PolyZpk& a);
PolyZpk poly_mul(const PolyZpk& a, const PolyZpk& b, uint64_t term_cap = 2'000'000);
PolyZpk poly_pow(const PolyZpk& a, long long e, uint64_t term_cap = 2'000'000);
long long eval_poly(const PolyZpk& f, std::span<const long long> point);
std::string format_poly(const PolyZpk& f);

/// S = Z_{p^k}^m \ p Z_{p^k}^m in lexicographic order. Enumerated
/// explicitly when its size fits the cap, otherwise kept implicit with
/// a membership test only.
struct PointSet {
  PrimePower ring{2, 1, 2};
  int dim_m = 0;
  bool is_explicit = false;
  std::vector<std::vector<long long>> points;

  static PointSet make(PrimePower ring, int dim_m, std::size_t explicit_cap = 1u << 16);
  bool contains(std::span<const long long> pt) const;
  std::optional<std::size_t> index_of(std::span<const long long> pt) const;
  long long size_if_known() const;  // -1 when not representable
};

/// A member of the function family: values on an explicit S in S-order,
/// with the defining polynomial when one is known.
struct FunctionTable {
  std::vector<long long> values;
  std::optional<PolyZpk> provenance;
  bool operator==(const FunctionTable& o) const { return values == o.values; }
  bool operator<(const FunctionTable& o) const { return values < o.values; }
};

FunctionTable table_of(const PolyZpk& f, const PointSet& s);

/// Smallest m strictly greater than n(p-1)p^{k-1}(p^k - 1).
int choose_m(long long p, int k, int n);
/// n(p-1)p^{k-1}.
long long degree_cap(long long p, int k, int n);

/// All distinct function tables of polynomials without free term of
/// degree <= degree_cap(p,k,n), deduplicated as functions on S and
/// sorted by value vector; verified to be a group under pointwise
/// addition. Refuses (with the required budget) when the raw
/// enumeration would exceed `cap`.
std::vector<FunctionTable> enumerate_F(PrimePower ring, int n, int dim_m,
                                       const PointSet& s, uint64_t cap);

/// A polynomial f with no free term, deg f <= degree_cap, f = 1 on T.
/// Construction: unit-pivot basis change concentrating T in the first n
/// coordinates, mod-p indicator interpolation, then the p^{k-1}-th power.
/// `g_out`, when given, receives the intermediate polynomial g (before
/// powering) with g(0) = 0 and g = 1 mod p on T.
PolyZpk interpolate_f_T(PrimePower ring, int n, const PointSet& s,
                        const std::vector<std::vector<long long>>& t,
                        uint64_t term_cap = 2'000'000, PolyZpk* g_out = nullptr);

/// Nonzero 0/1 root of a free-term-less polynomial, guaranteed when
/// dim_m > (p^k - 1) deg f; search by increasing popcount then lex.
std::vector<int> schanuel_root(const PolyZpk& f, uint64_t budget = 1u << 22);

struct FnLemmaReport {
  long long bound = 0;  // n(p-1)p^{k-1}(p^k-1)
  bool bound_ok = false;
  bool property1_ok = false;
  bool property2_ok = false;
  bool complete1 = false;
  bool complete2 = false;
  long long checked1 = 0;
  long long checked2 = 0;
  std::size_t family_size = 0;
  std::vector<std::string> notes;
  bool pass() const { return property1_ok && property2_ok; }
};

struct FnLemmaOptions {
  bool enumerate = true;
  int samples = 100;
  uint64_t seed = 0;
  uint64_t family_cap = 1u << 20;
  std::size_t s_explicit_cap = 1u << 16;
  uint64_t schanuel_budget = 1u << 22;
  uint64_t subset_cap = 1u << 16;  // property-2 T enumeration
};

/// Certify both family properties for the full polynomial family with
/// the given parameters (enumerating when feasible, sampling otherwise).
FnLemmaReport verify_function_lemma(PrimePower ring, int n, int dim_m,
                                    const FnLemmaOptions& opt = {});

/// Certify both properties for a user-supplied family of tables on an
/// explicit S: direct vanishing scan, direct T coverage, closure check.
FnLemmaReport certify_family(const PointSet& s, const std::vector<FunctionTable>& family,
                             int n, const FnLemmaOptions& opt = {});

}  // namespace vclab
