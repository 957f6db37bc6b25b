#ifndef STALLINGS_SUBGROUP_HPP
#define STALLINGS_SUBGROUP_HPP

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "stallings/automaton.hpp"
#include "stallings/words.hpp"

namespace stallings {

/// A finitely generated subgroup of the free group on its alphabet,
/// represented by its canonical Stallings automaton.  Value equality is
/// subgroup equality.
class Subgroup {
 public:
  Subgroup() : Subgroup(trivial(Alphabet(1))) {}

  static Subgroup generated_by(const Alphabet& alphabet, const std::vector<Word>& generators) {
    std::vector<ReducedWord> reduced;
    reduced.reserve(generators.size());
    for (const Word& w : generators) reduced.push_back(free_reduce(w));
    return Subgroup(stallings_of(alphabet, reduced));
  }

  static Subgroup from_automaton(const Automaton& a) { return Subgroup(stallings_reduction(a)); }

  static Subgroup trivial(const Alphabet& alphabet) { return Subgroup(Automaton(alphabet, 1, 0, {})); }

  static Subgroup full(const Alphabet& alphabet) { return Subgroup(full_bouquet(alphabet)); }

  const Alphabet& alphabet() const { return stallings_.alphabet(); }
  const Automaton& automaton() const { return stallings_; }

  int rank() const { return graph_rank(stallings_); }
  bool is_trivial() const { return stallings_.vertex_count() == 1 && stallings_.arcs().empty(); }
  bool is_full() const {
    return stallings_.vertex_count() == 1 &&
           static_cast<int>(stallings_.arcs().size()) == stallings_.alphabet().size();
  }

  std::vector<ReducedWord> basis() const { return spanning_tree_basis(stallings_); }

  bool operator==(const Subgroup&) const = default;

 private:
  explicit Subgroup(Automaton canonical) : stallings_(std::move(canonical)) {}

  Automaton stallings_;
};

/// w in H iff its free reduction labels a closed basepoint walk.
inline bool membership(const Subgroup& h, const Word& w) {
  auto end = read_walk(h.automaton(), h.automaton().basepoint(), free_reduce(w).word());
  return end && *end == h.automaton().basepoint();
}

inline Subgroup join(const Subgroup& h, const Subgroup& k) {
  if (h.alphabet() != k.alphabet()) throw std::invalid_argument("join: alphabet mismatch");
  return Subgroup::from_automaton(sum(h.automaton(), k.automaton()));
}

inline Subgroup join_with_words(const Subgroup& h, const std::vector<Word>& words) {
  std::vector<ReducedWord> reduced;
  reduced.reserve(words.size());
  for (const Word& w : words) reduced.push_back(free_reduce(w));
  return Subgroup::from_automaton(sum(h.automaton(), flower(h.alphabet(), reduced)));
}

/// g^-1 H g.
inline Subgroup conjugate(const Subgroup& h, const Word& g) {
  std::vector<Word> generators;
  for (const ReducedWord& b : h.basis()) generators.push_back(conjugate_word(b.word(), g).word());
  return Subgroup::generated_by(h.alphabet(), generators);
}

struct RebaseResult {
  Subgroup subgroup;     // u^-1 H u
  ReducedWord conjugator;  // spanning-tree label of basepoint ~> r
};

/// Conjugate of H obtained by moving the basepoint of St(H) to vertex r
/// along the canonical spanning tree.
inline RebaseResult rebase(const Subgroup& h, int r) {
  if (r < 0 || r >= h.automaton().vertex_count()) throw std::invalid_argument("rebase: vertex out of range");
  ReducedWord u = spanning_tree_labels(h.automaton())[static_cast<size_t>(r)];
  return {conjugate(h, u.word()), u};
}

struct IndexResult {
  bool finite = false;
  int value = 0;  // the index, meaningful when finite

  bool operator==(const IndexResult&) const = default;
};

/// [Fn : H]: finite iff St(H) is complete, in which case it equals the
/// number of vertices.
inline IndexResult index_of(const Subgroup& h) {
  Classification c = classify(h.automaton());
  if (!c.complete) return {false, 0};
  return {true, h.automaton().vertex_count()};
}

/// Pullback: vertices are pairs, an arc exists iff both components have it;
/// only the basepoint component is kept, so this is the subgroup
/// intersection H cap K.
inline Subgroup intersect(const Subgroup& h, const Subgroup& k) {
  if (h.alphabet() != k.alphabet()) throw std::invalid_argument("intersect: alphabet mismatch");
  if (h.is_trivial() || k.is_trivial()) return Subgroup::trivial(h.alphabet());

  StepTable hs(h.automaton());
  StepTable ks(k.automaton());
  const int km = k.automaton().vertex_count();
  auto encode = [&](int p, int q) { return p * km + q; };

  std::map<int, int> ids;  // encoded pair -> product vertex
  std::vector<std::pair<int, int>> vertices;
  std::deque<int> queue;
  auto intern = [&](int p, int q) {
    auto [it, inserted] = ids.try_emplace(encode(p, q), static_cast<int>(vertices.size()));
    if (inserted) {
      vertices.emplace_back(p, q);
      queue.push_back(it->second);
    }
    return it->second;
  };

  intern(h.automaton().basepoint(), k.automaton().basepoint());
  std::vector<Arc> arcs;
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    auto [p, q] = vertices[static_cast<size_t>(id)];
    for (int l = 1; l <= h.alphabet().size(); ++l) {
      for (Letter x : {l, -l}) {
        auto hp = hs.step(p, x);
        auto kq = ks.step(q, x);
        if (!hp || !kq) continue;
        int to = intern(*hp, *kq);
        if (is_positive(x)) arcs.push_back({id, x, to});
      }
    }
  }
  Automaton product(h.alphabet(), static_cast<int>(vertices.size()), 0, std::move(arcs));
  // The product of deterministic automata is deterministic; only trimming
  // and renumbering remain.
  return Subgroup::from_automaton(product);
}

}  // namespace stallings

#endif  // STALLINGS_SUBGROUP_HPP
