#ifndef STALLINGS_NFA_HPP
#define STALLINGS_NFA_HPP

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stallings/automaton.hpp"
#include "stallings/words.hpp"

namespace stallings {

/// Thrown when a determinization (or the meet-cocycle tuple construction)
/// exceeds the configured state budget.
class StateBudgetError : public std::runtime_error {
 public:
  explicit StateBudgetError(size_t budget)
      : std::runtime_error("state budget exceeded (" + std::to_string(budget) + " states)") {}
};

inline constexpr size_t kDefaultStateBudget = 1'000'000;

/// Nondeterministic finite automaton over the involutive alphabet A^+-.
/// Transition letters are signed; 0 denotes epsilon.
struct WordNfa {
  Alphabet alphabet;
  int states = 1;
  std::vector<std::tuple<int, Letter, int>> transitions;  // (from, letter|0, to)
  std::vector<int> initial;
  std::vector<int> accepting;

  WordNfa() : alphabet(1) {}
  explicit WordNfa(Alphabet a) : alphabet(std::move(a)) {}

  void add_transition(int from, Letter x, int to) { transitions.emplace_back(from, x, to); }
};

/// NFA recognizing the empty language.
inline WordNfa empty_nfa(const Alphabet& alphabet) {
  WordNfa out(alphabet);
  out.states = 1;
  out.initial = {0};
  return out;
}

/// NFA recognizing exactly the empty word.
inline WordNfa epsilon_nfa(const Alphabet& alphabet) {
  WordNfa out(alphabet);
  out.states = 1;
  out.initial = {0};
  out.accepting = {0};
  return out;
}

/// NFA recognizing a finite set of one-letter words.
inline WordNfa letters_nfa(const Alphabet& alphabet, const std::vector<Letter>& letters) {
  WordNfa out(alphabet);
  out.states = 2;
  out.initial = {0};
  out.accepting = {1};
  for (Letter x : letters) out.add_transition(0, x, 1);
  return out;
}

namespace detail {

inline std::vector<std::vector<int>> eps_adjacency(const WordNfa& nfa) {
  std::vector<std::vector<int>> adj(static_cast<size_t>(nfa.states));
  for (auto [from, x, to] : nfa.transitions) {
    if (x == 0) adj[static_cast<size_t>(from)].push_back(to);
  }
  return adj;
}

inline std::set<int> eps_closure(const std::vector<std::vector<int>>& eps, std::set<int> states) {
  std::deque<int> queue(states.begin(), states.end());
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (int t : eps[static_cast<size_t>(s)]) {
      if (states.insert(t).second) queue.push_back(t);
    }
  }
  return states;
}

}  // namespace detail

inline bool nfa_membership(const WordNfa& nfa, const Word& w) {
  auto eps = detail::eps_adjacency(nfa);
  std::set<int> current =
      detail::eps_closure(eps, std::set<int>(nfa.initial.begin(), nfa.initial.end()));
  for (Letter x : w) {
    std::set<int> next;
    for (auto [from, y, to] : nfa.transitions) {
      if (y == x && current.count(from)) next.insert(to);
    }
    current = detail::eps_closure(eps, std::move(next));
    if (current.empty()) return false;
  }
  for (int s : current) {
    if (std::find(nfa.accepting.begin(), nfa.accepting.end(), s) != nfa.accepting.end()) return true;
  }
  return false;
}

inline bool nfa_is_empty(const WordNfa& nfa) {
  std::vector<std::vector<int>> adj(static_cast<size_t>(nfa.states));
  for (auto [from, x, to] : nfa.transitions) {
    (void)x;
    adj[static_cast<size_t>(from)].push_back(to);
  }
  std::set<int> seen(nfa.initial.begin(), nfa.initial.end());
  std::deque<int> queue(seen.begin(), seen.end());
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (int t : adj[static_cast<size_t>(s)]) {
      if (seen.insert(t).second) queue.push_back(t);
    }
  }
  for (int s : nfa.accepting) {
    if (seen.count(s)) return false;
  }
  return true;
}

/// Removes epsilon transitions (language preserved).
inline WordNfa nfa_remove_eps(const WordNfa& nfa) {
  auto eps = detail::eps_adjacency(nfa);
  std::vector<std::set<int>> closure(static_cast<size_t>(nfa.states));
  for (int s = 0; s < nfa.states; ++s) closure[static_cast<size_t>(s)] = detail::eps_closure(eps, {s});

  WordNfa out(nfa.alphabet);
  out.states = nfa.states;
  out.initial = nfa.initial;
  std::set<int> accepting(nfa.accepting.begin(), nfa.accepting.end());
  std::set<int> new_accepting;
  std::set<std::tuple<int, Letter, int>> trans;
  for (int s = 0; s < nfa.states; ++s) {
    for (int c : closure[static_cast<size_t>(s)]) {
      if (accepting.count(c)) new_accepting.insert(s);
    }
  }
  for (auto [from, x, to] : nfa.transitions) {
    if (x == 0) continue;
    for (int s = 0; s < nfa.states; ++s) {
      if (closure[static_cast<size_t>(s)].count(from)) trans.insert({s, x, to});
    }
  }
  out.transitions.assign(trans.begin(), trans.end());
  out.accepting.assign(new_accepting.begin(), new_accepting.end());
  return out;
}

/// Removes states that are not both reachable and co-reachable.  Keeps the
/// result well-formed (at least one state).
inline WordNfa nfa_trim(const WordNfa& nfa) {
  std::vector<std::vector<int>> fwd(static_cast<size_t>(nfa.states));
  std::vector<std::vector<int>> bwd(static_cast<size_t>(nfa.states));
  for (auto [from, x, to] : nfa.transitions) {
    (void)x;
    fwd[static_cast<size_t>(from)].push_back(to);
    bwd[static_cast<size_t>(to)].push_back(from);
  }
  auto reach = [&](const std::vector<int>& seeds, const std::vector<std::vector<int>>& adj) {
    std::vector<bool> seen(static_cast<size_t>(nfa.states), false);
    std::deque<int> queue;
    for (int s : seeds) {
      if (!seen[static_cast<size_t>(s)]) {
        seen[static_cast<size_t>(s)] = true;
        queue.push_back(s);
      }
    }
    while (!queue.empty()) {
      int s = queue.front();
      queue.pop_front();
      for (int t : adj[static_cast<size_t>(s)]) {
        if (!seen[static_cast<size_t>(t)]) {
          seen[static_cast<size_t>(t)] = true;
          queue.push_back(t);
        }
      }
    }
    return seen;
  };
  auto reachable = reach(nfa.initial, fwd);
  auto productive = reach(nfa.accepting, bwd);

  std::vector<int> remap(static_cast<size_t>(nfa.states), -1);
  int next = 0;
  for (int s = 0; s < nfa.states; ++s) {
    if (reachable[static_cast<size_t>(s)] && productive[static_cast<size_t>(s)]) remap[static_cast<size_t>(s)] = next++;
  }
  if (next == 0) return empty_nfa(nfa.alphabet);

  WordNfa out(nfa.alphabet);
  out.states = next;
  for (auto [from, x, to] : nfa.transitions) {
    int f = remap[static_cast<size_t>(from)];
    int t = remap[static_cast<size_t>(to)];
    if (f >= 0 && t >= 0) out.add_transition(f, x, t);
  }
  for (int s : nfa.initial) {
    if (remap[static_cast<size_t>(s)] >= 0) out.initial.push_back(remap[static_cast<size_t>(s)]);
  }
  for (int s : nfa.accepting) {
    if (remap[static_cast<size_t>(s)] >= 0) out.accepting.push_back(remap[static_cast<size_t>(s)]);
  }
  std::sort(out.initial.begin(), out.initial.end());
  out.initial.erase(std::unique(out.initial.begin(), out.initial.end()), out.initial.end());
  std::sort(out.accepting.begin(), out.accepting.end());
  out.accepting.erase(std::unique(out.accepting.begin(), out.accepting.end()), out.accepting.end());
  std::sort(out.transitions.begin(), out.transitions.end());
  out.transitions.erase(std::unique(out.transitions.begin(), out.transitions.end()), out.transitions.end());
  return out;
}

inline WordNfa nfa_union(const WordNfa& lhs, const WordNfa& rhs) {
  if (lhs.alphabet != rhs.alphabet) throw std::invalid_argument("nfa_union: alphabet mismatch");
  WordNfa out(lhs.alphabet);
  out.states = lhs.states + rhs.states;
  out.transitions = lhs.transitions;
  for (auto [from, x, to] : rhs.transitions) out.add_transition(from + lhs.states, x, to + lhs.states);
  out.initial = lhs.initial;
  for (int s : rhs.initial) out.initial.push_back(s + lhs.states);
  out.accepting = lhs.accepting;
  for (int s : rhs.accepting) out.accepting.push_back(s + lhs.states);
  return out;
}

inline WordNfa nfa_concat(const WordNfa& lhs, const WordNfa& rhs) {
  if (lhs.alphabet != rhs.alphabet) throw std::invalid_argument("nfa_concat: alphabet mismatch");
  WordNfa out(lhs.alphabet);
  out.states = lhs.states + rhs.states;
  out.transitions = lhs.transitions;
  for (auto [from, x, to] : rhs.transitions) out.add_transition(from + lhs.states, x, to + lhs.states);
  for (int f : lhs.accepting) {
    for (int i : rhs.initial) out.add_transition(f, 0, i + lhs.states);
  }
  out.initial = lhs.initial;
  for (int s : rhs.accepting) out.accepting.push_back(s + lhs.states);
  return out;
}

/// Product construction over letter transitions (epsilons removed first).
inline WordNfa nfa_intersect(const WordNfa& lhs_in, const WordNfa& rhs_in) {
  if (lhs_in.alphabet != rhs_in.alphabet) throw std::invalid_argument("nfa_intersect: alphabet mismatch");
  WordNfa lhs = nfa_trim(nfa_remove_eps(lhs_in));
  WordNfa rhs = nfa_trim(nfa_remove_eps(rhs_in));

  // per-state, per-letter target lists
  std::vector<std::map<Letter, std::vector<int>>> lhs_out(static_cast<size_t>(lhs.states));
  std::vector<std::map<Letter, std::vector<int>>> rhs_out(static_cast<size_t>(rhs.states));
  for (auto [from, x, to] : lhs.transitions) lhs_out[static_cast<size_t>(from)][x].push_back(to);
  for (auto [from, x, to] : rhs.transitions) rhs_out[static_cast<size_t>(from)][x].push_back(to);

  std::map<std::pair<int, int>, int> ids;
  std::vector<std::pair<int, int>> vertices;
  std::deque<int> queue;
  auto intern = [&](int p, int q) {
    auto [it, inserted] = ids.try_emplace({p, q}, static_cast<int>(vertices.size()));
    if (inserted) {
      vertices.emplace_back(p, q);
      queue.push_back(it->second);
    }
    return it->second;
  };

  WordNfa out(lhs.alphabet);
  for (int p : lhs.initial) {
    for (int q : rhs.initial) out.initial.push_back(intern(p, q));
  }
  std::set<int> lhs_acc(lhs.accepting.begin(), lhs.accepting.end());
  std::set<int> rhs_acc(rhs.accepting.begin(), rhs.accepting.end());
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    auto [p, q] = vertices[static_cast<size_t>(id)];
    for (const auto& [x, lhs_targets] : lhs_out[static_cast<size_t>(p)]) {
      auto rit = rhs_out[static_cast<size_t>(q)].find(x);
      if (rit == rhs_out[static_cast<size_t>(q)].end()) continue;
      for (int lt : lhs_targets) {
        for (int rt : rit->second) out.add_transition(id, x, intern(lt, rt));
      }
    }
  }
  out.states = std::max<int>(1, static_cast<int>(vertices.size()));
  for (size_t i = 0; i < vertices.size(); ++i) {
    if (lhs_acc.count(vertices[i].first) && rhs_acc.count(vertices[i].second)) {
      out.accepting.push_back(static_cast<int>(i));
    }
  }
  return nfa_trim(out);
}

/// Subset construction.  The result is a deterministic, possibly incomplete
/// WordNfa with a single initial state.  Throws StateBudgetError when more
/// than max_states subset states appear.
inline WordNfa nfa_determinize(const WordNfa& nfa_in, size_t max_states = kDefaultStateBudget) {
  WordNfa nfa = nfa_remove_eps(nfa_in);
  std::set<int> accepting(nfa.accepting.begin(), nfa.accepting.end());
  std::map<Letter, std::map<int, std::vector<int>>> delta;  // letter -> from -> targets
  for (auto [from, x, to] : nfa.transitions) delta[x][from].push_back(to);

  std::map<std::vector<int>, int> ids;
  std::vector<std::vector<int>> subsets;
  std::deque<int> queue;
  auto intern = [&](std::vector<int> subset) {
    auto [it, inserted] = ids.try_emplace(std::move(subset), static_cast<int>(subsets.size()));
    if (inserted) {
      if (subsets.size() + 1 > max_states) throw StateBudgetError(max_states);
      subsets.push_back(it->first);
      queue.push_back(it->second);
    }
    return it->second;
  };

  WordNfa out(nfa.alphabet);
  std::vector<int> start(nfa.initial.begin(), nfa.initial.end());
  std::sort(start.begin(), start.end());
  start.erase(std::unique(start.begin(), start.end()), start.end());
  out.initial = {intern(std::move(start))};
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    std::vector<int> subset = subsets[static_cast<size_t>(id)];
    for (const auto& [x, moves] : delta) {
      std::set<int> next;
      for (int s : subset) {
        auto it = moves.find(s);
        if (it != moves.end()) next.insert(it->second.begin(), it->second.end());
      }
      if (next.empty()) continue;
      out.add_transition(id, x, intern(std::vector<int>(next.begin(), next.end())));
    }
  }
  out.states = static_cast<int>(subsets.size());
  for (size_t i = 0; i < subsets.size(); ++i) {
    for (int s : subsets[i]) {
      if (accepting.count(s)) {
        out.accepting.push_back(static_cast<int>(i));
        break;
      }
    }
  }
  return out;
}

/// Complement within (A^+-)^*: determinize, add a sink to complete over all
/// signed letters, flip accepting states.
inline WordNfa nfa_complement(const WordNfa& nfa_in, size_t max_states = kDefaultStateBudget) {
  WordNfa dfa = nfa_determinize(nfa_in, max_states);
  const int n = dfa.alphabet.size();
  int sink = dfa.states;
  bool need_sink = false;
  std::set<std::pair<int, Letter>> present;
  for (auto [from, x, to] : dfa.transitions) {
    (void)to;
    present.insert({from, x});
  }
  for (int s = 0; s < dfa.states; ++s) {
    for (int l = 1; l <= n; ++l) {
      for (Letter x : {l, -l}) {
        if (!present.count({s, x})) {
          dfa.add_transition(s, x, sink);
          need_sink = true;
        }
      }
    }
  }
  if (need_sink) {
    dfa.states += 1;
    for (int l = 1; l <= n; ++l) {
      for (Letter x : {l, -l}) dfa.add_transition(sink, x, sink);
    }
  }
  std::set<int> accepting(dfa.accepting.begin(), dfa.accepting.end());
  dfa.accepting.clear();
  for (int s = 0; s < dfa.states; ++s) {
    if (!accepting.count(s)) dfa.accepting.push_back(s);
  }
  return dfa;
}

/// R_A: the reduced words over A^+-.  States remember the last letter read.
inline WordNfa reduced_words_nfa(const Alphabet& alphabet) {
  std::vector<int> all(static_cast<size_t>(alphabet.size()));
  std::iota(all.begin(), all.end(), 1);
  const int n = alphabet.size();
  WordNfa out(alphabet);
  out.states = 2 * n + 1;  // 0 = start, 1 + letter_ord(x) = "last letter x"
  out.initial = {0};
  for (int s = 0; s < out.states; ++s) out.accepting.push_back(s);
  for (int l = 1; l <= n; ++l) {
    for (Letter x : {l, -l}) {
      out.add_transition(0, x, 1 + letter_ord(x));
      for (int k = 1; k <= n; ++k) {
        for (Letter y : {k, -k}) {
          if (y == -x) continue;  // cancellation
          out.add_transition(1 + letter_ord(y), x, 1 + letter_ord(x));
        }
      }
    }
  }
  return out;
}

/// Reduced words using only the sub-alphabet `letters` (positive indices).
inline WordNfa reduced_words_nfa_over(const Alphabet& alphabet, const std::vector<int>& letters) {
  const int n = alphabet.size();
  WordNfa out(alphabet);
  out.states = 2 * n + 1;
  out.initial = {0};
  for (int s = 0; s < out.states; ++s) out.accepting.push_back(s);
  for (int l : letters) {
    for (Letter x : {l, -l}) {
      out.add_transition(0, x, 1 + letter_ord(x));
      for (int k : letters) {
        for (Letter y : {k, -k}) {
          if (y == -x) continue;
          out.add_transition(1 + letter_ord(y), x, 1 + letter_ord(x));
        }
      }
    }
  }
  return nfa_trim(out);
}

/// C_A: the cyclically reduced words.  States remember (first, last) letters.
inline WordNfa cyclically_reduced_words_nfa(const Alphabet& alphabet) {
  const int n = alphabet.size();
  WordNfa out(alphabet);
  auto state_of = [&](Letter first, Letter last) { return 1 + letter_ord(first) * 2 * n + letter_ord(last); };
  out.states = 1 + 4 * n * n;  // 0 = empty word
  out.initial = {0};
  out.accepting.push_back(0);
  for (int l = 1; l <= n; ++l) {
    for (Letter x : {l, -l}) {
      out.add_transition(0, x, state_of(x, x));
      for (int k = 1; k <= n; ++k) {
        for (Letter f : {k, -k}) {
          if (f != -x) out.accepting.push_back(state_of(f, x));
          for (int j = 1; j <= n; ++j) {
            for (Letter y : {j, -j}) {
              if (y == -x) continue;  // would not be reduced
              out.add_transition(state_of(f, y), x, state_of(f, x));
            }
          }
        }
      }
    }
  }
  std::sort(out.accepting.begin(), out.accepting.end());
  out.accepting.erase(std::unique(out.accepting.begin(), out.accepting.end()), out.accepting.end());
  return out;
}

/// L_{PQ}(A): labels of (arbitrary, not necessarily reduced) walks in the
/// involutive automaton from a vertex of `from` to a vertex of `to`.
inline WordNfa walk_language_nfa(const Automaton& a, const std::vector<int>& from, const std::vector<int>& to) {
  WordNfa out(a.alphabet());
  out.states = a.vertex_count();
  out.initial = from;
  out.accepting = to;
  for (const Arc& arc : a.arcs()) {
    out.add_transition(arc.src, arc.letter, arc.dst);
    out.add_transition(arc.dst, -arc.letter, arc.src);
  }
  return out;
}

}  // namespace stallings

#endif  // STALLINGS_NFA_HPP
