#ifndef STALLINGS_COCYCLES_HPP
#define STALLINGS_COCYCLES_HPP

#include <deque>
#include <map>
#include <vector>

#include "stallings/automaton.hpp"
#include "stallings/corank.hpp"
#include "stallings/grammar.hpp"
#include "stallings/nfa.hpp"
#include "stallings/subgroup.hpp"
#include "stallings/words.hpp"

namespace stallings {

/// u is a join-cocycle of H iff H v <u> = Fn.
inline bool is_join_cocycle(const Subgroup& h, const Word& u) {
  return join_with_words(h, {u}).is_full();
}

/// u is a meet-cocycle of H iff <u> cap H = 1.  Via the cyclic decomposition
/// u = v w v^-1: equivalent to <w> cap H^v = 1, decided by reading w^m from
/// the basepoint of St(H^v), m its number of vertices.  The trivial word is
/// always a meet-cocycle.
inline bool is_meet_cocycle(const Subgroup& h, const Word& u) {
  CyclicDecomposition d = cyclic_reduce(u);
  if (d.core.empty()) return true;
  Subgroup conj = conjugate(h, d.conjugator.word());
  const int m = conj.automaton().vertex_count();
  auto end = read_walk(conj.automaton(), conj.automaton().basepoint(), d.core.word().pow(m));
  return !end.has_value();
}

inline bool is_direct_cocycle(const Subgroup& h, const Word& u) {
  return is_join_cocycle(h, u) && is_meet_cocycle(h, u);
}

/// Finite automaton for Coc_v(H), the reduced words u with H v <u> = Fn.
/// Bouquets fall into the three closed forms; otherwise the union over
/// identification pairs (p,q) of L_{.p} L_{q.} intersected with the
/// reduced words.
inline WordNfa join_cocycle_nfa(const Subgroup& h) {
  const Automaton& a = h.automaton();
  const Alphabet& alphabet = a.alphabet();
  const int n = alphabet.size();

  if (a.vertex_count() == 1) {
    std::vector<int> loops = a.letters_present();
    if (static_cast<int>(loops.size()) == n) return reduced_words_nfa(alphabet);
    if (static_cast<int>(loops.size()) == n - 1) {
      int missing = 0;
      for (int l = 1; l <= n; ++l) {
        if (!std::binary_search(loops.begin(), loops.end(), l)) missing = l;
      }
      WordNfa r_b = reduced_words_nfa_over(alphabet, loops);
      WordNfa step = letters_nfa(alphabet, {missing, -missing});
      return nfa_trim(nfa_concat(nfa_concat(r_b, step), r_b));
    }
    return empty_nfa(alphabet);
  }

  auto pairs = bouquet_identification_pairs(a);
  if (pairs.empty()) return empty_nfa(alphabet);
  const int bp = a.basepoint();
  WordNfa acc = empty_nfa(alphabet);
  for (auto [p, q] : pairs) {
    WordNfa part = nfa_concat(walk_language_nfa(a, {bp}, {p}), walk_language_nfa(a, {q}, {bp}));
    acc = nfa_union(acc, part);
  }
  return nfa_intersect(acc, reduced_words_nfa(alphabet));
}

/// NFA for P = {u : u^m readable from the basepoint}: a guessed tuple of
/// intermediate vertices plus the current position of the m simultaneous
/// walks.  At most |V|^(2m-1) states before reachability pruning; the
/// budget bounds the lazily generated reachable part.
inline WordNfa power_readable_nfa(const Automaton& a, size_t max_states = kDefaultStateBudget) {
  const int m = a.vertex_count();
  StepTable table(a);
  const Alphabet& alphabet = a.alphabet();

  // state = guess (m-1 vertices) ++ current (m vertices)
  std::map<std::vector<int>, int> ids;
  std::vector<std::vector<int>> states;
  std::deque<int> queue;
  auto intern = [&](std::vector<int> s) {
    auto [it, inserted] = ids.try_emplace(std::move(s), static_cast<int>(states.size()));
    if (inserted) {
      if (states.size() + 1 > max_states) throw StateBudgetError(max_states);
      states.push_back(it->first);
      queue.push_back(it->second);
    }
    return it->second;
  };

  WordNfa out(alphabet);
  // enumerate all guesses g in V^(m-1)
  std::vector<int> guess(static_cast<size_t>(m - 1), 0);
  while (true) {
    std::vector<int> s;
    s.reserve(static_cast<size_t>(2 * m - 1));
    s.insert(s.end(), guess.begin(), guess.end());
    s.push_back(a.basepoint());  // walk 1 starts at the basepoint
    s.insert(s.end(), guess.begin(), guess.end());  // walk i+1 starts at g_i
    out.initial.push_back(intern(std::move(s)));
    int i = m - 2;
    while (i >= 0 && guess[static_cast<size_t>(i)] == m - 1) --i;
    if (i < 0) break;
    ++guess[static_cast<size_t>(i)];
    for (int j = i + 1; j < m - 1; ++j) guess[static_cast<size_t>(j)] = 0;
  }

  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    std::vector<int> s = states[static_cast<size_t>(id)];
    for (int l = 1; l <= alphabet.size(); ++l) {
      for (Letter x : {l, -l}) {
        std::vector<int> next = s;
        bool ok = true;
        for (int i = 0; i < m; ++i) {
          auto t = table.step(s[static_cast<size_t>(m - 1 + i)], x);
          if (!t) {
            ok = false;
            break;
          }
          next[static_cast<size_t>(m - 1 + i)] = *t;
        }
        if (ok) out.add_transition(id, x, intern(std::move(next)));
      }
    }
  }
  out.states = static_cast<int>(states.size());
  for (size_t i = 0; i < states.size(); ++i) {
    const auto& s = states[i];
    bool accept = true;
    for (int j = 0; j < m - 1; ++j) {
      if (s[static_cast<size_t>(m - 1 + j)] != s[static_cast<size_t>(j)]) {
        accept = false;
        break;
      }
    }
    if (accept) out.accepting.push_back(static_cast<int>(i));
  }
  return out;
}

/// Finite automaton for the cyclically reduced meet-cocycles of H:
/// (C_A minus P) union {1}.
inline WordNfa meet_cr_cocycle_nfa(const Subgroup& h, size_t max_states = kDefaultStateBudget) {
  const Alphabet& alphabet = h.alphabet();
  WordNfa p = power_readable_nfa(h.automaton(), max_states);
  WordNfa not_p = nfa_complement(p, max_states);
  WordNfa cr = nfa_intersect(not_p, cyclically_reduced_words_nfa(alphabet));
  return nfa_trim(nfa_union(cr, epsilon_nfa(alphabet)));
}

/// Finite automaton for the cyclically reduced direct cocycles of H.
inline WordNfa direct_cr_cocycle_nfa(const Subgroup& h, size_t max_states = kDefaultStateBudget) {
  return nfa_intersect(join_cocycle_nfa(h), meet_cr_cocycle_nfa(h, max_states));
}

/// Context-free grammar for the full set of direct cocycles of H, as reduced
/// words.  Per vertex r: the palindromic grammar {v $ v^-1} is intersected
/// with L_{.r} $ L_{.r}^-1, "$" is substituted by the cyclically reduced
/// direct cocycles of the rebased subgroup, the parts are united under a
/// fresh start symbol, and the result is intersected with the reduced words.
/// Bouquet inputs short-circuit to a right-linear grammar (the set is
/// rational there).
inline Grammar direct_cocycle_grammar(const Subgroup& h, size_t max_states = kDefaultStateBudget) {
  const Automaton& a = h.automaton();
  const Alphabet& alphabet = a.alphabet();
  const int n = alphabet.size();

  if (a.vertex_count() == 1) {
    std::vector<int> loops = a.letters_present();
    if (static_cast<int>(loops.size()) == n) {
      // Coc_direct(Fn) = {1}
      Grammar g(alphabet);
      g.start = g.fresh_nonterminal();
      g.add(g.start, {});
      return g;
    }
    if (static_cast<int>(loops.size()) == n - 1) {
      // every join-cocycle has exactly one occurrence of the missing letter,
      // so no nontrivial power lands back in H: the set equals Coc_v(H)
      return grammar_from_nfa(join_cocycle_nfa(h));
    }
    Grammar g(alphabet);
    g.start = g.fresh_nonterminal();
    return g;  // empty
  }

  std::vector<Grammar> parts;
  const int bp = a.basepoint();
  for (int r = 0; r < a.vertex_count(); ++r) {
    WordNfa k_r = direct_cr_cocycle_nfa(rebase(h, r).subgroup, max_states);
    if (nfa_is_empty(k_r)) continue;

    // L_{.r} $ L_{r.} with a placeholder-labelled bridge transition
    WordNfa left = walk_language_nfa(a, {bp}, {r});
    WordNfa right = walk_language_nfa(a, {r}, {bp});
    WordNfa bridge(alphabet);
    bridge.states = 2;
    bridge.initial = {0};
    bridge.accepting = {1};
    bridge.add_transition(0, kPlaceholderLetter, 1);
    WordNfa l_r = nfa_concat(nfa_concat(left, bridge), right);

    Grammar pal = palindromic_placeholder_grammar(alphabet);
    Grammar conjugated = grammar_intersect_nfa(pal, l_r);
    parts.push_back(grammar_substitute_placeholder(conjugated, k_r));
  }
  Grammar united = grammar_union(alphabet, parts);
  return grammar_intersect_nfa(united, reduced_words_nfa(alphabet));
}

}  // namespace stallings

#endif  // STALLINGS_COCYCLES_HPP
