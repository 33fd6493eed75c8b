#include "vclab/words.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace vclab {

bool MixedWord::pure() const {
  return std::none_of(letters.begin(), letters.end(),
                      [](const Letter& l) { return l.kind == Letter::Kind::Coeff; });
}

static int count_vars(const std::vector<Letter>& letters) {
  int n = 0;
  for (const Letter& l : letters)
    if (l.kind == Letter::Kind::Var) n = std::max(n, l.id + 1);
  return n;
}

MixedWord make_word(std::vector<Letter> letters) {
  MixedWord w{std::move(letters), 0};
  w.nvars = count_vars(w.letters);
  return w;
}

MixedWord generator_word(int var, int nvars) {
  return {{Letter::var(var, 1)}, std::max(nvars, var + 1)};
}

MixedWord reduce(const MixedWord& w, const FiniteGroup* coeff) {
  std::vector<Letter> stack;
  stack.reserve(w.letters.size());
  auto push = [&](const Letter& l) {
    if (l.kind == Letter::Kind::Var) {
      if (!stack.empty() && stack.back().kind == Letter::Kind::Var &&
          stack.back().id == l.id && stack.back().sign == -l.sign) {
        stack.pop_back();
        return;
      }
      stack.push_back(l);
    } else {
      if (coeff == nullptr)
        throw std::invalid_argument("coefficient letter without a coefficient group");
      int e = l.id;
      if (!stack.empty() && stack.back().kind == Letter::Kind::Coeff) {
        e = coeff->mul(stack.back().id, e);
        stack.pop_back();
      }
      if (e != 0) stack.push_back(Letter::coeff(e));
    }
  };
  for (const Letter& l : w.letters) push(l);
  MixedWord out{std::move(stack), std::max(w.nvars, count_vars(w.letters))};
  return out;
}

std::vector<long long> exponent_sums(const MixedWord& w) {
  std::vector<long long> e(w.nvars, 0);
  for (const Letter& l : w.letters)
    if (l.kind == Letter::Kind::Var) e[l.id] += l.sign;
  return e;
}

NielsenMove NielsenMove::inverse() const {
  if (kind == Kind::Multiply) return multiply(i, j, -sign);
  return *this;
}

VariableSubstitution VariableSubstitution::inverse() const {
  VariableSubstitution inv{nvars, {}};
  inv.moves.reserve(moves.size());
  for (auto it = moves.rbegin(); it != moves.rend(); ++it)
    inv.moves.push_back(it->inverse());
  return inv;
}

static MixedWord apply_move(const NielsenMove& m, const MixedWord& w,
                            const FiniteGroup* coeff) {
  std::vector<Letter> out;
  out.reserve(w.letters.size() * 2);
  for (const Letter& l : w.letters) {
    if (l.kind != Letter::Kind::Var) {
      out.push_back(l);
      continue;
    }
    switch (m.kind) {
      case NielsenMove::Kind::Swap: {
        Letter c = l;
        if (c.id == m.i)
          c.id = m.j;
        else if (c.id == m.j)
          c.id = m.i;
        out.push_back(c);
        break;
      }
      case NielsenMove::Kind::Invert: {
        Letter c = l;
        if (c.id == m.i) c.sign = -c.sign;
        out.push_back(c);
        break;
      }
      case NielsenMove::Kind::Multiply: {
        if (l.id != m.i) {
          out.push_back(l);
        } else if (l.sign > 0) {  // x_i -> x_i x_j^s
          out.push_back(Letter::var(m.i, 1));
          out.push_back(Letter::var(m.j, m.sign));
        } else {  // x_i^-1 -> x_j^-s x_i^-1
          out.push_back(Letter::var(m.j, -m.sign));
          out.push_back(Letter::var(m.i, -1));
        }
        break;
      }
    }
  }
  int nv = std::max({w.nvars, m.i + 1, m.j + 1});
  return reduce(MixedWord{std::move(out), nv}, coeff);
}

MixedWord apply_substitution(const VariableSubstitution& sub, const MixedWord& w,
                             const FiniteGroup* coeff) {
  MixedWord cur = reduce(w, coeff);
  cur.nvars = std::max(cur.nvars, sub.nvars);
  for (const NielsenMove& m : sub.moves) cur = apply_move(m, cur, coeff);
  return cur;
}

std::vector<long long> act_on_exponents(const VariableSubstitution& sub,
                                        std::vector<long long> e) {
  e.resize(std::max<std::size_t>(e.size(), sub.nvars), 0);
  for (const NielsenMove& m : sub.moves) {
    switch (m.kind) {
      case NielsenMove::Kind::Swap:
        std::swap(e[m.i], e[m.j]);
        break;
      case NielsenMove::Kind::Invert:
        e[m.i] = -e[m.i];
        break;
      case NielsenMove::Kind::Multiply:
        e[m.j] += m.sign * e[m.i];
        break;
    }
  }
  return e;
}

std::pair<long long, VariableSubstitution> normalize_power_form(const MixedWord& w) {
  if (!w.pure())
    throw std::invalid_argument("normalize_power_form expects a pure free-group word");
  VariableSubstitution sub{w.nvars, {}};
  std::vector<long long> e = exponent_sums(w);
  auto emit = [&](NielsenMove m) {
    sub.moves.push_back(m);
    e = act_on_exponents(VariableSubstitution{sub.nvars, {m}}, std::move(e));
  };
  for (;;) {
    std::vector<int> nz;
    for (int i = 0; i < int(e.size()); ++i)
      if (e[i] != 0) nz.push_back(i);
    if (nz.empty()) return {0, sub};
    if (nz.size() == 1) {
      int i = nz[0];
      if (i != 0) emit(NielsenMove::swap(0, i));
      if (e[0] < 0) emit(NielsenMove::invert(0));
      return {e[0], sub};
    }
    // Euclid between the two lowest-index nonzero entries, the pivot
    // holding the smaller magnitude.
    int i = nz[0], j = nz[1];
    if (std::abs(e[j]) < std::abs(e[i])) {
      emit(NielsenMove::swap(i, j));
      continue;
    }
    int s = (e[i] > 0) == (e[j] > 0) ? -1 : 1;
    emit(NielsenMove::multiply(i, j, s));
  }
}

int evaluate(const MixedWord& w, const FiniteGroup& carrier,
             std::span<const int> assignment, const CoeffEmbed& embed) {
  if (int(assignment.size()) < w.nvars)
    throw std::invalid_argument("assignment covers " + std::to_string(assignment.size()) +
                                " variables, word needs " + std::to_string(w.nvars));
  int acc = 0;
  for (const Letter& l : w.letters) {
    int v;
    if (l.kind == Letter::Kind::Var) {
      v = assignment[l.id];
      if (l.sign < 0) v = carrier.inv(v);
    } else {
      v = embed ? embed(l.id) : l.id;
    }
    acc = carrier.mul(acc, v);
  }
  return acc;
}

std::string var_display_name(int id) {
  switch (id) {
    case 0: return "x";
    case 1: return "y";
    case 2: return "z";
    default: return "x" + std::to_string(id);
  }
}

static int var_id_from_name(const std::string& s) {
  if (s == "x") return 0;
  if (s == "y") return 1;
  if (s == "z") return 2;
  if (s.size() >= 2 && s[0] == 'x') {
    for (std::size_t i = 1; i < s.size(); ++i)
      if (!isdigit((unsigned char)s[i])) return -1;
    return std::stoi(s.substr(1));
  }
  return -1;
}

MixedWord parse_word(const std::string& text, const FiniteGroup* coeff) {
  std::istringstream in(text);
  std::string tok;
  std::vector<Letter> letters;
  while (in >> tok) {
    long long exp = 1;
    std::string atom = tok;
    auto caret = tok.rfind('^');
    if (caret != std::string::npos && caret > 0 && tok.back() != '`') {
      atom = tok.substr(0, caret);
      try {
        exp = std::stoll(tok.substr(caret + 1));
      } catch (...) {
        throw std::invalid_argument("bad exponent in token '" + tok + "'");
      }
    }
    Letter base{};
    if (atom.size() >= 2 && atom.front() == '`' && atom.back() == '`') {
      if (coeff == nullptr)
        throw std::invalid_argument("coefficient letter '" + atom +
                                    "' needs a coefficient group");
      std::string name = atom.substr(1, atom.size() - 2);
      auto e = coeff->element_by_name(name);
      if (!e) throw std::invalid_argument("unknown coefficient element '" + name + "'");
      base = Letter::coeff(*e);
    } else {
      int id = var_id_from_name(atom);
      if (id < 0) throw std::invalid_argument("bad word token '" + tok + "'");
      base = Letter::var(id, 1);
    }
    if (exp == 0) continue;
    Letter use = base;
    if (exp < 0) {
      if (use.kind == Letter::Kind::Var)
        use.sign = -1;
      else
        use.id = coeff->inv(use.id);
    }
    for (long long r = 0; r < std::abs(exp); ++r) letters.push_back(use);
  }
  return reduce(make_word(std::move(letters)), coeff);
}

std::string format_word(const MixedWord& w, const FiniteGroup* coeff) {
  if (w.letters.empty()) return "1";
  std::string out;
  for (const Letter& l : w.letters) {
    if (!out.empty()) out += ' ';
    if (l.kind == Letter::Kind::Var) {
      out += var_display_name(l.id);
      if (l.sign < 0) out += "^-1";
    } else {
      out += '`';
      out += coeff ? coeff->name(l.id) : ("#" + std::to_string(l.id));
      out += '`';
    }
  }
  return out;
}

MixedWord random_reduced_word(Rng& rng, int max_len, int max_vars) {
  std::uniform_int_distribution<int> lend(1, std::max(1, max_len));
  std::uniform_int_distribution<int> vard(1, std::max(1, max_vars));
  int len = lend(rng), nv = vard(rng);
  std::uniform_int_distribution<int> vd(0, nv - 1);
  std::uniform_int_distribution<int> sd(0, 1);
  std::vector<Letter> letters;
  while (int(letters.size()) < len) {
    Letter l = Letter::var(vd(rng), sd(rng) ? 1 : -1);
    if (!letters.empty() && letters.back().id == l.id && letters.back().sign == -l.sign)
      continue;  // rejection: keep the word freely reduced
    letters.push_back(l);
  }
  MixedWord w = make_word(std::move(letters));
  w.nvars = std::max(w.nvars, nv);
  return w;
}

}  // namespace vclab
