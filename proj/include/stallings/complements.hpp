#ifndef STALLINGS_COMPLEMENTS_HPP
#define STALLINGS_COMPLEMENTS_HPP

#include <deque>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "stallings/automaton.hpp"
#include "stallings/corank.hpp"
#include "stallings/subgroup.hpp"
#include "stallings/words.hpp"

namespace stallings {

namespace detail {

inline std::vector<int> vertex_degrees(const Automaton& a) {
  std::vector<int> degree(static_cast<size_t>(a.vertex_count()), 0);
  for (const Arc& arc : a.arcs()) {
    degree[static_cast<size_t>(arc.src)] += 1;
    degree[static_cast<size_t>(arc.dst)] += 1;  // loops count twice
  }
  return degree;
}

/// Shortest nonempty reduced loop at `v` avoiding `blocked` (-1 for none).
/// BFS over (vertex, last letter) states, expanding letters in order, so the
/// result is deterministic.
inline ReducedWord shortest_reduced_loop(const Automaton& a, int v, int blocked) {
  StepTable table(a);
  const int n = a.alphabet().size();
  const int letter_states = 2 * n + 1;
  auto encode = [&](int vertex, int last) { return vertex * letter_states + last; };
  std::vector<int> parent_state(static_cast<size_t>(a.vertex_count() * letter_states), -2);
  std::vector<Letter> parent_letter(static_cast<size_t>(a.vertex_count() * letter_states), 0);

  std::deque<int> queue;
  parent_state[static_cast<size_t>(encode(v, 0))] = -1;
  queue.push_back(encode(v, 0));
  while (!queue.empty()) {
    int state = queue.front();
    queue.pop_front();
    int vertex = state / letter_states;
    int last = state % letter_states;
    for (int l = 1; l <= n; ++l) {
      for (Letter x : {l, -l}) {
        if (last != 0) {
          Letter prev = (last - 1) % 2 == 0 ? (last - 1) / 2 + 1 : -((last - 1) / 2 + 1);
          if (x == -prev) continue;
        }
        auto t = table.step(vertex, x);
        if (!t || *t == blocked) continue;
        if (*t == v) {
          // reconstruct: walk back through parents, then append x
          std::vector<Letter> letters{x};
          int cur = state;
          while (parent_state[static_cast<size_t>(cur)] != -1) {
            letters.push_back(parent_letter[static_cast<size_t>(cur)]);
            cur = parent_state[static_cast<size_t>(cur)];
          }
          std::reverse(letters.begin(), letters.end());
          return ReducedWord(Word(std::move(letters)));
        }
        int next = encode(*t, 1 + letter_ord(x));
        if (parent_state[static_cast<size_t>(next)] == -2) {
          parent_state[static_cast<size_t>(next)] = state;
          parent_letter[static_cast<size_t>(next)] = x;
          queue.push_back(next);
        }
      }
    }
  }
  throw std::logic_error("no reduced loop found");
}

}  // namespace detail

/// Proper join-complement of rank n for any nontrivial H: reduce to a
/// cyclically reduced basis element u; n = 1 uses a coprime power, otherwise
/// the two-case construction keyed to the first and last letters of u.
inline Subgroup proper_join_complement(const Subgroup& h) {
  if (h.is_trivial()) throw std::invalid_argument("proper_join_complement: subgroup is trivial");
  const Alphabet& alphabet = h.alphabet();
  const int n = alphabet.size();

  ReducedWord w = h.basis().front();
  CyclicDecomposition d = cyclic_reduce(w.word());
  const Word& u = d.core.word();  // nonempty since w is

  Subgroup k = [&] {
    if (n == 1) {
      int exponent = static_cast<int>(u.size());  // u = a^(+-exponent)
      int l = 2;
      while (std::gcd(l, exponent) != 1) ++l;
      return Subgroup::generated_by(alphabet, {Word(std::vector<Letter>(static_cast<size_t>(l), 1))});
    }
    // Cyclic reducedness rules out first == -last, so the letters either
    // coincide as signed letters or have different indices.
    Letter first = u[0];
    Letter last = u[u.size() - 1];
    std::vector<Word> generators;
    int avoided = letter_index(last);
    for (int l = 1; l <= n; ++l) {
      if (l == avoided) continue;
      generators.push_back(u * Word(std::vector<Letter>{l}) * u.inverse());
    }
    if (first == last) {
      int b = avoided == 1 ? 2 : 1;
      generators.push_back(Word(std::vector<Letter>{b, avoided, -b}));
    } else {
      generators.push_back(Word(std::vector<Letter>{avoided}));
    }
    Subgroup k0 = Subgroup::generated_by(alphabet, generators);
    // undo the cyclic-reduction conjugation: K = v K0 v^-1
    return d.conjugator.empty() ? k0 : conjugate(k0, d.conjugator.word().inverse());
  }();

  if (k.is_full() || k.rank() != n || !join(h, k).is_full()) {
    throw std::logic_error("proper_join_complement: construction failed verification");
  }
  return k;
}

/// H admits a nontrivial meet-complement iff it has infinite index.
inline bool has_meet_complement(const Subgroup& h) { return !index_of(h).finite; }

struct DirectComplementCertificate {
  ReducedWord conjugator;  // g
  Subgroup complement;     // K with conjugate(H, g) + K = Fn and trivial intersection
};

/// Direct complement for nontrivial H of infinite index (and H != Fn):
/// conjugate H so that its automaton is a degree->=2 graph Delta plus one
/// arc hanging the basepoint off an a-deficient vertex, then
/// K = <(A minus {a}) union {a^-1 u a b a b a^-1 u a}> for a nonempty
/// reduced loop u at that vertex.  The certificate is verified by folding
/// and intersecting before it is returned.
inline DirectComplementCertificate construct_direct_complement(const Subgroup& h) {
  if (h.is_trivial()) throw std::invalid_argument("construct_direct_complement: subgroup is trivial");
  if (h.is_full()) throw std::invalid_argument("construct_direct_complement: subgroup is the whole group");
  if (index_of(h).finite) throw std::invalid_argument("construct_direct_complement: subgroup has finite index");

  const Alphabet& alphabet = h.alphabet();
  const int n = alphabet.size();

  // 1. strip the basepoint spur (cyclic reduction of the automaton)
  Word g1;
  {
    const Automaton& a = h.automaton();
    StepTable table(a);
    auto degree = detail::vertex_degrees(a);
    std::vector<bool> stripped(static_cast<size_t>(a.vertex_count()), false);
    int at = a.basepoint();
    while (degree[static_cast<size_t>(at)] == 1) {
      bool moved = false;
      for (int l = 1; l <= n && !moved; ++l) {
        for (Letter x : {l, -l}) {
          auto t = table.step(at, x);
          if (t && !stripped[static_cast<size_t>(*t)]) {
            g1.push_back(x);
            stripped[static_cast<size_t>(at)] = true;
            degree[static_cast<size_t>(*t)] -= 1;
            at = *t;
            moved = true;
            break;
          }
        }
      }
      if (!moved) throw std::logic_error("construct_direct_complement: dangling spur");
    }
  }
  Subgroup h1 = g1.empty() ? h : conjugate(h, g1);

  // 2. first deficient (vertex, signed letter) in canonical order
  const Automaton& a1 = h1.automaton();
  StepTable t1(a1);
  int v = -1;
  Letter missing = 0;
  for (int vertex = 0; vertex < a1.vertex_count() && v < 0; ++vertex) {
    for (int l = 1; l <= n && v < 0; ++l) {
      for (Letter x : {l, -l}) {
        if (!t1.step(vertex, x)) {
          v = vertex;
          missing = x;
          break;
        }
      }
    }
  }
  if (v < 0) throw std::logic_error("construct_direct_complement: automaton unexpectedly complete");

  Word g2 = spanning_tree_labels(a1)[static_cast<size_t>(v)].word();
  g2.push_back(missing);
  ReducedWord g = free_reduce(g1 * g2);
  Subgroup hg = conjugate(h1, g2);

  // 3. normal form checks: basepoint hangs by one arc off Delta, which has
  // no degree-1 vertices
  const Automaton& a2 = hg.automaton();
  auto degree = detail::vertex_degrees(a2);
  if (degree[static_cast<size_t>(a2.basepoint())] != 1) {
    throw std::logic_error("construct_direct_complement: basepoint is not a spur");
  }
  for (int vertex = 0; vertex < a2.vertex_count(); ++vertex) {
    if (vertex != a2.basepoint() && degree[static_cast<size_t>(vertex)] < 2) {
      throw std::logic_error("construct_direct_complement: hanging vertex outside the basepoint");
    }
  }
  int attach = -1;
  Letter toward_base = 0;  // arc attach --toward_base--> basepoint
  for (const Arc& arc : a2.arcs()) {
    if (arc.src == a2.basepoint()) {
      attach = arc.dst;
      toward_base = -arc.letter;
      break;
    }
    if (arc.dst == a2.basepoint()) {
      attach = arc.src;
      toward_base = arc.letter;
      break;
    }
  }

  // 4. the complement word z = h' b a b h' with h' = l^-1 u l the basepoint
  // loop through Delta
  ReducedWord u = detail::shortest_reduced_loop(a2, attach, a2.basepoint());
  Word loop;
  loop.push_back(-toward_base);
  loop = loop * u.word();
  loop.push_back(toward_base);
  int a_letter = letter_index(toward_base);
  int b_letter = a_letter == 1 ? 2 : 1;
  Word z = loop * Word(std::vector<Letter>{b_letter, a_letter, b_letter}) * loop;

  std::vector<Word> generators;
  for (int l = 1; l <= n; ++l) {
    if (l != a_letter) generators.push_back(Word(std::vector<Letter>{l}));
  }
  generators.push_back(z);
  Subgroup k = Subgroup::generated_by(alphabet, generators);

  if (!join(hg, k).is_full() || !intersect(hg, k).is_trivial() || k.rank() != n) {
    throw std::logic_error("construct_direct_complement: certificate failed verification");
  }
  return {g, k};
}

/// H is direct-cocyclic iff it is join-cocyclic (for infinite index); the
/// full group counts as cocyclic via the trivial complement, and finite
/// index otherwise rules it out.
inline bool detect_direct_cocyclic(const Subgroup& h) {
  if (h.is_full()) return true;
  if (index_of(h).finite) return false;
  return join_corank(h).corank == 1;
}

}  // namespace stallings

#endif  // STALLINGS_COMPLEMENTS_HPP
