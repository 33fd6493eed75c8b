#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vclab/group.hpp"

namespace vclab {

/// One letter of a word in H * F(x, y, ...): a signed variable or a
/// coefficient element of a designated group.
struct Letter {
  enum class Kind : uint8_t { Var, Coeff };
  Kind kind;
  int id;    // variable index, or element index in the coefficient group
  int sign;  // +1/-1 for variables; unused for coefficients

  static Letter var(int id, int sign) { return {Kind::Var, id, sign}; }
  static Letter coeff(int e) { return {Kind::Coeff, e, 0}; }
  bool operator==(const Letter&) const = default;
};

struct MixedWord {
  std::vector<Letter> letters;
  int nvars = 0;

  bool empty() const { return letters.empty(); }
  bool pure() const;  // no coefficient letters
  bool operator==(const MixedWord&) const = default;
};

MixedWord make_word(std::vector<Letter> letters);
MixedWord generator_word(int var, int nvars);

/// Free reduction: cancel adjacent inverse variable pairs, fuse adjacent
/// coefficients through the coefficient group, drop identity coefficients.
/// Idempotent. `coeff` may be null for pure words.
MixedWord reduce(const MixedWord& w, const FiniteGroup* coeff);

std::vector<long long> exponent_sums(const MixedWord& w);

struct NielsenMove {
  enum class Kind : uint8_t { Swap, Invert, Multiply };
  Kind kind;
  int i = 0;
  int j = 0;
  int sign = 0;  // Multiply: x_i -> x_i * x_j^sign

  static NielsenMove swap(int i, int j) { return {Kind::Swap, i, j, 0}; }
  static NielsenMove invert(int i) { return {Kind::Invert, i, 0, 0}; }
  static NielsenMove multiply(int i, int j, int sign) { return {Kind::Multiply, i, j, sign}; }
  NielsenMove inverse() const;
  bool operator==(const NielsenMove&) const = default;
};

/// An automorphism of the free group as a composition of elementary
/// moves, applied left to right. Invertible by construction.
struct VariableSubstitution {
  int nvars = 0;
  std::vector<NielsenMove> moves;
  VariableSubstitution inverse() const;
  bool identity() const { return moves.empty(); }
};

MixedWord apply_substitution(const VariableSubstitution& sub, const MixedWord& w,
                             const FiniteGroup* coeff = nullptr);

/// Integer-matrix action of the substitution on an exponent-sum vector.
std::vector<long long> act_on_exponents(const VariableSubstitution& sub,
                                        std::vector<long long> e);

/// Change of variables carrying w to a word whose exponent sums are
/// (m, 0, ..., 0) with m = gcd of the original sums (0 if all vanish).
/// Rejects words with coefficient letters.
std::pair<long long, VariableSubstitution> normalize_power_form(const MixedWord& w);

using CoeffEmbed = std::function<int(int)>;

/// Product of the letter images; `embed` maps coefficient elements into
/// the carrier (identity when the groups coincide).
int evaluate(const MixedWord& w, const FiniteGroup& carrier,
             std::span<const int> assignment, const CoeffEmbed& embed = {});

/// CLI text syntax: whitespace-separated letters; variables x, y, z,
/// x3, x4, ...; `name` for coefficients; ^e exponents expand.
MixedWord parse_word(const std::string& text, const FiniteGroup* coeff = nullptr);
std::string format_word(const MixedWord& w, const FiniteGroup* coeff = nullptr);
std::string var_display_name(int id);

MixedWord random_reduced_word(Rng& rng, int max_len, int max_vars);

}  // namespace vclab
