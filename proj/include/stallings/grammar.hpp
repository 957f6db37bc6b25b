#ifndef STALLINGS_GRAMMAR_HPP
#define STALLINGS_GRAMMAR_HPP

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "stallings/nfa.hpp"
#include "stallings/words.hpp"

namespace stallings {

/// Sentinel letter for the internal "$" placeholder, usable both as a
/// grammar terminal and as an NFA transition label (0 stays reserved for
/// epsilon).  It never survives into a finished grammar.
inline constexpr Letter kPlaceholderLetter = 1 << 30;

struct GrammarSymbol {
  bool terminal;
  int value;  // terminal: signed letter (kPlaceholderLetter = "$"); nonterminal: index

  auto operator<=>(const GrammarSymbol&) const = default;
};

inline GrammarSymbol terminal_symbol(Letter x) { return {true, x}; }
inline GrammarSymbol placeholder_symbol() { return {true, kPlaceholderLetter}; }
inline GrammarSymbol nonterminal_symbol(int idx) { return {false, idx}; }

struct Production {
  int lhs;
  std::vector<GrammarSymbol> body;

  auto operator<=>(const Production&) const = default;
};

/// Context-free grammar over A^+- (plus the internal placeholder).
struct Grammar {
  Alphabet alphabet;
  int nonterminal_count = 0;
  int start = 0;
  std::vector<Production> productions;

  Grammar() : alphabet(1) {}
  explicit Grammar(Alphabet a) : alphabet(std::move(a)) {}

  int fresh_nonterminal() { return nonterminal_count++; }

  void add(int lhs, std::vector<GrammarSymbol> body) { productions.push_back({lhs, std::move(body)}); }
};

/// {v $ v^-1 : v in (A^+-)^*}: S -> $ | x S x^-1 for every signed x.
inline Grammar palindromic_placeholder_grammar(const Alphabet& alphabet) {
  Grammar g(alphabet);
  g.start = g.fresh_nonterminal();
  g.add(g.start, {placeholder_symbol()});
  for (int l = 1; l <= alphabet.size(); ++l) {
    for (Letter x : {l, -l}) {
      g.add(g.start, {terminal_symbol(x), nonterminal_symbol(g.start), terminal_symbol(-x)});
    }
  }
  return g;
}

/// Removes productions that are not both productive and reachable.
inline Grammar grammar_prune(const Grammar& g) {
  std::vector<bool> productive(static_cast<size_t>(g.nonterminal_count), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Production& p : g.productions) {
      if (productive[static_cast<size_t>(p.lhs)]) continue;
      bool all = true;
      for (const GrammarSymbol& s : p.body) {
        if (!s.terminal && !productive[static_cast<size_t>(s.value)]) {
          all = false;
          break;
        }
      }
      if (all) {
        productive[static_cast<size_t>(p.lhs)] = true;
        changed = true;
      }
    }
  }
  std::vector<bool> reachable(static_cast<size_t>(g.nonterminal_count), false);
  if (g.nonterminal_count > 0) reachable[static_cast<size_t>(g.start)] = true;
  changed = true;
  while (changed) {
    changed = false;
    for (const Production& p : g.productions) {
      if (!reachable[static_cast<size_t>(p.lhs)] || !productive[static_cast<size_t>(p.lhs)]) continue;
      bool usable = true;
      for (const GrammarSymbol& s : p.body) {
        if (!s.terminal && !productive[static_cast<size_t>(s.value)]) usable = false;
      }
      if (!usable) continue;
      for (const GrammarSymbol& s : p.body) {
        if (!s.terminal && !reachable[static_cast<size_t>(s.value)]) {
          reachable[static_cast<size_t>(s.value)] = true;
          changed = true;
        }
      }
    }
  }

  Grammar out(g.alphabet);
  std::vector<int> remap(static_cast<size_t>(g.nonterminal_count), -1);
  auto keep = [&](int nt) {
    return productive[static_cast<size_t>(nt)] && reachable[static_cast<size_t>(nt)];
  };
  for (int nt = 0; nt < g.nonterminal_count; ++nt) {
    if (keep(nt)) remap[static_cast<size_t>(nt)] = out.fresh_nonterminal();
  }
  if (g.nonterminal_count == 0 || remap[static_cast<size_t>(g.start)] < 0) {
    // empty language: keep a bare start symbol with no productions
    Grammar empty(g.alphabet);
    empty.start = empty.fresh_nonterminal();
    return empty;
  }
  out.start = remap[static_cast<size_t>(g.start)];
  std::set<Production> dedup;
  for (const Production& p : g.productions) {
    if (!keep(p.lhs)) continue;
    Production q{remap[static_cast<size_t>(p.lhs)], {}};
    bool ok = true;
    for (const GrammarSymbol& s : p.body) {
      if (s.terminal) {
        q.body.push_back(s);
      } else if (keep(s.value)) {
        q.body.push_back(nonterminal_symbol(remap[static_cast<size_t>(s.value)]));
      } else {
        ok = false;
        break;
      }
    }
    if (ok) dedup.insert(std::move(q));
  }
  out.productions.assign(dedup.begin(), dedup.end());
  return out;
}

namespace detail {

/// Rewrites the grammar so every body is one of: empty, single terminal,
/// single nonterminal, or two nonterminals.
inline Grammar grammar_2nf(const Grammar& g) {
  Grammar out(g.alphabet);
  out.nonterminal_count = g.nonterminal_count;
  out.start = g.start;
  std::map<int, int> terminal_nt;  // encoded terminal -> wrapper nonterminal
  auto wrap_terminal = [&](const GrammarSymbol& s) {
    auto [it, inserted] = terminal_nt.try_emplace(s.value, 0);
    if (inserted) {
      it->second = out.fresh_nonterminal();
      out.add(it->second, {s});
    }
    return nonterminal_symbol(it->second);
  };

  for (const Production& p : g.productions) {
    if (p.body.size() <= 1) {
      out.add(p.lhs, p.body);
      continue;
    }
    // binarize, wrapping terminals inside long bodies
    std::vector<GrammarSymbol> symbols;
    for (const GrammarSymbol& s : p.body) symbols.push_back(s.terminal ? wrap_terminal(s) : s);
    int lhs = p.lhs;
    for (size_t i = 0; i + 2 < symbols.size(); ++i) {
      int next = out.fresh_nonterminal();
      out.add(lhs, {symbols[i], nonterminal_symbol(next)});
      lhs = next;
    }
    out.add(lhs, {symbols[symbols.size() - 2], symbols[symbols.size() - 1]});
  }
  return out;
}

}  // namespace detail

/// Bar-Hillel triple construction: grammar for L(g) intersected with the
/// language of the NFA (epsilons eliminated first).
inline Grammar grammar_intersect_nfa(const Grammar& g_in, const WordNfa& nfa_in) {
  Grammar g = detail::grammar_2nf(g_in);
  WordNfa nfa = nfa_trim(nfa_remove_eps(nfa_in));
  const int s = nfa.states;

  Grammar out(g.alphabet);
  // triple (p, X, q) -> p * |NT| * s + X * s + q, plus a fresh start
  auto triple = [&](int p, int x, int q) { return (p * g.nonterminal_count + x) * s + q; };
  out.nonterminal_count = s * g.nonterminal_count * s;
  out.start = out.fresh_nonterminal();

  for (int i : nfa.initial) {
    for (int f : nfa.accepting) out.add(out.start, {nonterminal_symbol(triple(i, g.start, f))});
  }

  std::map<std::pair<int, Letter>, std::vector<int>> moves;
  for (auto [from, x, to] : nfa.transitions) moves[{from, x}].push_back(to);

  for (const Production& p : g.productions) {
    if (p.body.empty()) {
      for (int q = 0; q < s; ++q) out.add(triple(q, p.lhs, q), {});
    } else if (p.body.size() == 1 && p.body[0].terminal) {
      for (auto& [key, targets] : moves) {
        if (key.second != p.body[0].value) continue;
        for (int to : targets) out.add(triple(key.first, p.lhs, to), {p.body[0]});
      }
    } else if (p.body.size() == 1) {
      for (int from = 0; from < s; ++from) {
        for (int to = 0; to < s; ++to) {
          out.add(triple(from, p.lhs, to), {nonterminal_symbol(triple(from, p.body[0].value, to))});
        }
      }
    } else {
      for (int from = 0; from < s; ++from) {
        for (int mid = 0; mid < s; ++mid) {
          for (int to = 0; to < s; ++to) {
            out.add(triple(from, p.lhs, to),
                    {nonterminal_symbol(triple(from, p.body[0].value, mid)),
                     nonterminal_symbol(triple(mid, p.body[1].value, to))});
          }
        }
      }
    }
  }
  return grammar_prune(out);
}

/// Rational substitution of the "$" placeholder by the language of the NFA,
/// encoded with right-linear productions.
inline Grammar grammar_substitute_placeholder(const Grammar& g, const WordNfa& nfa_in) {
  WordNfa nfa = nfa_trim(nfa_remove_eps(nfa_in));
  Grammar out(g.alphabet);
  out.nonterminal_count = g.nonterminal_count;
  out.start = g.start;

  int sub_start = out.fresh_nonterminal();
  std::vector<int> state_nt(static_cast<size_t>(nfa.states));
  for (int q = 0; q < nfa.states; ++q) state_nt[static_cast<size_t>(q)] = out.fresh_nonterminal();
  for (int i : nfa.initial) out.add(sub_start, {nonterminal_symbol(state_nt[static_cast<size_t>(i)])});
  for (auto [from, x, to] : nfa.transitions) {
    out.add(state_nt[static_cast<size_t>(from)],
            {terminal_symbol(x), nonterminal_symbol(state_nt[static_cast<size_t>(to)])});
  }
  for (int f : nfa.accepting) out.add(state_nt[static_cast<size_t>(f)], {});

  for (const Production& p : g.productions) {
    Production q{p.lhs, {}};
    for (const GrammarSymbol& sym : p.body) {
      if (sym.terminal && sym.value == kPlaceholderLetter) {
        q.body.push_back(nonterminal_symbol(sub_start));
      } else {
        q.body.push_back(sym);
      }
    }
    out.productions.push_back(std::move(q));
  }
  return grammar_prune(out);
}

/// Right-linear grammar for the language of an NFA.
inline Grammar grammar_from_nfa(const WordNfa& nfa_in) {
  WordNfa nfa = nfa_trim(nfa_remove_eps(nfa_in));
  Grammar out(nfa.alphabet);
  out.start = out.fresh_nonterminal();
  std::vector<int> state_nt(static_cast<size_t>(nfa.states));
  for (int q = 0; q < nfa.states; ++q) state_nt[static_cast<size_t>(q)] = out.fresh_nonterminal();
  for (int i : nfa.initial) out.add(out.start, {nonterminal_symbol(state_nt[static_cast<size_t>(i)])});
  for (auto [from, x, to] : nfa.transitions) {
    out.add(state_nt[static_cast<size_t>(from)],
            {terminal_symbol(x), nonterminal_symbol(state_nt[static_cast<size_t>(to)])});
  }
  for (int f : nfa.accepting) out.add(state_nt[static_cast<size_t>(f)], {});
  return grammar_prune(out);
}

/// Union via a fresh start symbol.
inline Grammar grammar_union(const Alphabet& alphabet, const std::vector<Grammar>& parts) {
  Grammar out(alphabet);
  out.start = out.fresh_nonterminal();
  for (const Grammar& g : parts) {
    int offset = out.nonterminal_count;
    out.nonterminal_count += g.nonterminal_count;
    for (const Production& p : g.productions) {
      Production q{p.lhs + offset, {}};
      for (const GrammarSymbol& s : p.body) {
        q.body.push_back(s.terminal ? s : nonterminal_symbol(s.value + offset));
      }
      out.productions.push_back(std::move(q));
    }
    if (g.nonterminal_count > 0) out.add(out.start, {nonterminal_symbol(g.start + offset)});
  }
  return grammar_prune(out);
}

/// One production group per line: "S -> a N1 A | 1".  Single-character
/// tokens are terminals; "1" is the empty body; multi-character tokens are
/// the numbered nonterminals.
inline std::string to_text(const Grammar& g) {
  auto nt_name = [&](int nt) { return nt == g.start ? std::string("S") : "N" + std::to_string(nt); };
  std::map<int, std::vector<std::string>> lines;
  for (const Production& p : g.productions) {
    std::string body;
    if (p.body.empty()) {
      body = "1";
    } else {
      for (size_t i = 0; i < p.body.size(); ++i) {
        if (i > 0) body += ' ';
        const GrammarSymbol& s = p.body[i];
        if (s.terminal) {
          body += s.value == kPlaceholderLetter ? "$"
                                                : format_word(g.alphabet, Word(std::vector<Letter>{s.value}));
        } else {
          body += nt_name(s.value);
        }
      }
    }
    lines[p.lhs].push_back(std::move(body));
  }
  std::ostringstream out;
  // start symbol first, then the rest by index
  std::vector<int> order;
  if (lines.count(g.start)) order.push_back(g.start);
  for (auto& [nt, bodies] : lines) {
    (void)bodies;
    if (nt != g.start) order.push_back(nt);
  }
  for (int nt : order) {
    auto& bodies = lines[nt];
    std::sort(bodies.begin(), bodies.end());
    bodies.erase(std::unique(bodies.begin(), bodies.end()), bodies.end());
    out << nt_name(nt) << " -> ";
    for (size_t i = 0; i < bodies.size(); ++i) {
      if (i > 0) out << " | ";
      out << bodies[i];
    }
    out << '\n';
  }
  return out.str();
}

/// CYK matcher over the binary normal form of a grammar.  Unit productions
/// are kept and propagated per table cell, which avoids materializing the
/// quadratic unit closure of Bar-Hillel-sized grammars.  Compile once,
/// query many words.
class GrammarMatcher {
 public:
  explicit GrammarMatcher(const Grammar& g) : alphabet_(g.alphabet) { compile(g); }

  bool contains(const Word& w) const {
    if (w.empty()) return accepts_empty_;
    const size_t len = w.size();
    // table[i * (len + 1) + span]: nonterminals deriving w[i .. i + span)
    std::vector<std::vector<char>> table(len * (len + 1),
                                         std::vector<char>(static_cast<size_t>(nt_count_), 0));
    auto cell = [&](size_t i, size_t span) -> std::vector<char>& { return table[i * (len + 1) + span]; };
    for (size_t i = 0; i < len; ++i) {
      auto it = terminal_rules_.find(w[i]);
      if (it != terminal_rules_.end()) {
        for (int nt : it->second) cell(i, 1)[static_cast<size_t>(nt)] = 1;
      }
      propagate_units(cell(i, 1));
    }
    for (size_t span = 2; span <= len; ++span) {
      for (size_t i = 0; i + span <= len; ++i) {
        auto& c = cell(i, span);
        for (size_t split = 1; split < span; ++split) {
          const auto& left = cell(i, split);
          const auto& right = cell(i + split, span - split);
          for (const auto& [lhs, b, rhs] : binary_rules_) {
            if (!c[static_cast<size_t>(lhs)] && left[static_cast<size_t>(b)] && right[static_cast<size_t>(rhs)]) {
              c[static_cast<size_t>(lhs)] = 1;
            }
          }
        }
        propagate_units(c);
      }
    }
    return cell(0, len)[static_cast<size_t>(start_)] != 0;
  }

 private:
  void propagate_units(std::vector<char>& cell) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto [a, b] : unit_edges_) {  // a -> b: cell[b] implies cell[a]
        if (cell[static_cast<size_t>(b)] && !cell[static_cast<size_t>(a)]) {
          cell[static_cast<size_t>(a)] = 1;
          changed = true;
        }
      }
    }
  }

  void compile(const Grammar& g_in) {
    Grammar g = detail::grammar_2nf(grammar_prune(g_in));

    // nullable closure
    std::vector<bool> nullable(static_cast<size_t>(g.nonterminal_count), false);
    bool changed = true;
    while (changed) {
      changed = false;
      for (const Production& p : g.productions) {
        if (nullable[static_cast<size_t>(p.lhs)]) continue;
        bool all = true;
        for (const GrammarSymbol& s : p.body) {
          if (s.terminal || !nullable[static_cast<size_t>(s.value)]) {
            all = false;
            break;
          }
        }
        if (all) {
          nullable[static_cast<size_t>(p.lhs)] = true;
          changed = true;
        }
      }
    }
    accepts_empty_ = g.nonterminal_count > 0 && nullable[static_cast<size_t>(g.start)];

    // drop epsilons: emit all variants with nullable symbols omitted
    std::set<Production> work;
    for (const Production& p : g.productions) {
      std::vector<std::vector<GrammarSymbol>> variants{{}};
      for (const GrammarSymbol& s : p.body) {
        std::vector<std::vector<GrammarSymbol>> next;
        for (auto& v : variants) {
          auto with = v;
          with.push_back(s);
          next.push_back(std::move(with));
          if (!s.terminal && nullable[static_cast<size_t>(s.value)]) next.push_back(v);
        }
        variants = std::move(next);
      }
      for (auto& v : variants) {
        if (!v.empty()) work.insert({p.lhs, v});
      }
    }

    nt_count_ = g.nonterminal_count;
    start_ = g.start;
    std::set<std::pair<int, int>> units;
    std::set<std::tuple<int, int, int>> binary;
    std::set<std::pair<Letter, int>> unary;
    for (const Production& p : work) {
      if (p.body.size() == 1 && p.body[0].terminal) {
        unary.insert({p.body[0].value, p.lhs});
      } else if (p.body.size() == 1) {
        if (p.body[0].value != p.lhs) units.insert({p.lhs, p.body[0].value});
      } else {
        binary.insert({p.lhs, p.body[0].value, p.body[1].value});
      }
    }
    for (auto [x, nt] : unary) terminal_rules_[x].push_back(nt);
    for (auto [a, b, c] : binary) binary_rules_.push_back({a, b, c});
    unit_edges_.assign(units.begin(), units.end());
  }

  Alphabet alphabet_;
  int nt_count_ = 0;
  int start_ = 0;
  bool accepts_empty_ = false;
  std::map<Letter, std::vector<int>> terminal_rules_;
  std::vector<std::tuple<int, int, int>> binary_rules_;
  std::vector<std::pair<int, int>> unit_edges_;
};

/// One-shot membership; prefer GrammarMatcher for repeated queries.
inline bool grammar_membership(const Grammar& g, const Word& w) { return GrammarMatcher(g).contains(w); }

}  // namespace stallings

#endif  // STALLINGS_GRAMMAR_HPP
