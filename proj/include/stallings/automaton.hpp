#ifndef STALLINGS_AUTOMATON_HPP
#define STALLINGS_AUTOMATON_HPP

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "stallings/words.hpp"

namespace stallings {

/// One positive arc src --letter--> dst.  The inverse arc dst --letter^-1-->
/// src is implicit and never stored.
struct Arc {
  int src;
  int letter;  // positive letter index, 1-based
  int dst;

  auto operator<=>(const Arc&) const = default;
};

/// Involutive pointed A-automaton, stored by its positive part.  Parallel
/// arcs and loops are allowed; the arc list is kept sorted (with
/// multiplicity) so that structural equality is meaningful.
class Automaton {
 public:
  Automaton() : alphabet_(1) {}

  Automaton(Alphabet alphabet, int vertex_count, int basepoint, std::vector<Arc> arcs)
      : alphabet_(std::move(alphabet)),
        vertex_count_(vertex_count),
        basepoint_(basepoint),
        arcs_(std::move(arcs)) {
    if (vertex_count_ < 1) throw std::invalid_argument("automaton needs at least one vertex");
    if (basepoint_ < 0 || basepoint_ >= vertex_count_) throw std::invalid_argument("basepoint out of range");
    for (const Arc& a : arcs_) {
      if (a.src < 0 || a.src >= vertex_count_ || a.dst < 0 || a.dst >= vertex_count_) {
        throw std::invalid_argument("arc endpoint out of range");
      }
      if (a.letter < 1 || a.letter > alphabet_.size()) throw std::invalid_argument("arc letter out of range");
    }
    std::sort(arcs_.begin(), arcs_.end());
  }

  const Alphabet& alphabet() const { return alphabet_; }
  int vertex_count() const { return vertex_count_; }
  int basepoint() const { return basepoint_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  /// Letters (positive indices) labelling at least one arc, sorted.
  std::vector<int> letters_present() const {
    std::vector<int> out;
    for (const Arc& a : arcs_) out.push_back(a.letter);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  auto operator<=>(const Automaton&) const = default;

 private:
  Alphabet alphabet_;
  int vertex_count_;
  int basepoint_ = 0;
  std::vector<Arc> arcs_;
};

/// Deterministic transition table: step(v, x) for signed x, built once per
/// automaton.  Construction throws if two arcs share an origin and label.
class StepTable {
 public:
  explicit StepTable(const Automaton& a)
      : n_(a.alphabet().size()), table_(static_cast<size_t>(a.vertex_count()) * 2 * static_cast<size_t>(n_), -1) {
    for (const Arc& arc : a.arcs()) {
      set(arc.src, arc.letter, arc.dst);
      set(arc.dst, -arc.letter, arc.src);
    }
  }

  std::optional<int> step(int v, Letter x) const {
    int t = table_[slot(v, x)];
    return t < 0 ? std::nullopt : std::optional<int>(t);
  }

  std::optional<int> walk(int v, const Word& w) const {
    int cur = v;
    for (Letter x : w) {
      int t = table_[slot(cur, x)];
      if (t < 0) return std::nullopt;
      cur = t;
    }
    return cur;
  }

 private:
  size_t slot(int v, Letter x) const {
    return static_cast<size_t>(v) * 2 * static_cast<size_t>(n_) + static_cast<size_t>(letter_ord(x));
  }

  void set(int v, Letter x, int dst) {
    int& cell = table_[slot(v, x)];
    if (cell >= 0) throw std::invalid_argument("automaton is not deterministic");
    cell = dst;
  }

  int n_;
  std::vector<int> table_;
};

struct FoldReport {
  int open_folds = 0;
  int closed_folds = 0;
  std::vector<int> merged_vertex_map;  // old vertex -> vertex of the folded automaton
};

struct Classification {
  bool deterministic = false;
  bool complete = false;
  bool core = false;
  bool connected = false;
  bool bouquet = false;
  std::vector<int> loop_letters;  // letters looping at the single vertex, when bouquet
};

namespace detail {

struct Dsu {
  explicit Dsu(int n) : parent(static_cast<size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }

  int find(int v) {
    while (parent[static_cast<size_t>(v)] != v) {
      parent[static_cast<size_t>(v)] = parent[static_cast<size_t>(parent[static_cast<size_t>(v)])];
      v = parent[static_cast<size_t>(v)];
    }
    return v;
  }

  // Smaller id always wins the root, so class representatives are stable.
  int unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    if (b < a) std::swap(a, b);
    parent[static_cast<size_t>(b)] = a;
    return a;
  }

  std::vector<int> parent;
};

inline std::vector<std::vector<int>> involutive_adjacency(const Automaton& a) {
  std::vector<std::vector<int>> adj(static_cast<size_t>(a.vertex_count()));
  for (const Arc& arc : a.arcs()) {
    adj[static_cast<size_t>(arc.src)].push_back(arc.dst);
    adj[static_cast<size_t>(arc.dst)].push_back(arc.src);
  }
  return adj;
}

inline std::vector<bool> basepoint_component(const Automaton& a) {
  auto adj = involutive_adjacency(a);
  std::vector<bool> seen(static_cast<size_t>(a.vertex_count()), false);
  std::deque<int> queue{a.basepoint()};
  seen[static_cast<size_t>(a.basepoint())] = true;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : adj[static_cast<size_t>(v)]) {
      if (!seen[static_cast<size_t>(w)]) {
        seen[static_cast<size_t>(w)] = true;
        queue.push_back(w);
      }
    }
  }
  return seen;
}

/// Rebuilds an automaton keeping the flagged vertices (basepoint must be
/// kept), renumbering in increasing old-id order.
inline Automaton restrict_vertices(const Automaton& a, const std::vector<bool>& keep) {
  std::vector<int> remap(static_cast<size_t>(a.vertex_count()), -1);
  int next = 0;
  for (int v = 0; v < a.vertex_count(); ++v) {
    if (keep[static_cast<size_t>(v)]) remap[static_cast<size_t>(v)] = next++;
  }
  std::vector<Arc> arcs;
  for (const Arc& arc : a.arcs()) {
    if (keep[static_cast<size_t>(arc.src)] && keep[static_cast<size_t>(arc.dst)]) {
      arcs.push_back({remap[static_cast<size_t>(arc.src)], arc.letter, remap[static_cast<size_t>(arc.dst)]});
    }
  }
  return Automaton(a.alphabet(), next, remap[static_cast<size_t>(a.basepoint())], std::move(arcs));
}

}  // namespace detail

/// Flower automaton: one cycle per word, all wedged at the basepoint.
/// Identity words are skipped; the empty family yields the single-vertex
/// automaton.
inline Automaton flower(const Alphabet& alphabet, const std::vector<ReducedWord>& words) {
  std::vector<Arc> arcs;
  int vertices = 1;
  for (const ReducedWord& rw : words) {
    const Word& w = rw.word();
    if (w.empty()) continue;
    int prev = 0;
    for (size_t i = 0; i < w.size(); ++i) {
      Letter x = w[i];
      if (!alphabet.valid(x)) throw std::invalid_argument("generator letter out of range");
      int next = (i + 1 == w.size()) ? 0 : vertices++;
      if (is_positive(x)) {
        arcs.push_back({prev, x, next});
      } else {
        arcs.push_back({next, -x, prev});
      }
      prev = next;
    }
  }
  return Automaton(alphabet, vertices, 0, std::move(arcs));
}

/// Bouquet over the given positive letters (single vertex, one loop each).
inline Automaton bouquet(const Alphabet& alphabet, const std::vector<int>& letters) {
  std::vector<Arc> arcs;
  for (int l : letters) {
    if (l < 1 || l > alphabet.size()) throw std::invalid_argument("bouquet letter out of range");
    arcs.push_back({0, l, 0});
  }
  return Automaton(alphabet, 1, 0, std::move(arcs));
}

inline Automaton full_bouquet(const Alphabet& alphabet) {
  std::vector<int> letters(static_cast<size_t>(alphabet.size()));
  std::iota(letters.begin(), letters.end(), 1);
  return bouquet(alphabet, letters);
}

/// Disjoint union with the two basepoints identified.
inline Automaton sum(const Automaton& lhs, const Automaton& rhs) {
  if (lhs.alphabet() != rhs.alphabet()) throw std::invalid_argument("sum: alphabet mismatch");
  int offset = lhs.vertex_count();
  auto remap = [&](int v) {
    if (v == rhs.basepoint()) return lhs.basepoint();
    return v < rhs.basepoint() ? offset + v : offset + v - 1;
  };
  std::vector<Arc> arcs = lhs.arcs();
  for (const Arc& arc : rhs.arcs()) arcs.push_back({remap(arc.src), arc.letter, remap(arc.dst)});
  return Automaton(lhs.alphabet(), lhs.vertex_count() + rhs.vertex_count() - 1, lhs.basepoint(), std::move(arcs));
}

/// Quotient identifying the given nonempty vertex set into one vertex.
inline Automaton quotient_vertices(const Automaton& a, const std::vector<int>& group) {
  if (group.empty()) throw std::invalid_argument("quotient: empty vertex set");
  for (int v : group) {
    if (v < 0 || v >= a.vertex_count()) throw std::invalid_argument("quotient: vertex out of range");
  }
  int target = *std::min_element(group.begin(), group.end());
  std::vector<int> remap(static_cast<size_t>(a.vertex_count()));
  std::iota(remap.begin(), remap.end(), 0);
  for (int v : group) remap[static_cast<size_t>(v)] = target;
  // compact
  std::vector<int> compact(static_cast<size_t>(a.vertex_count()), -1);
  int next = 0;
  for (int v = 0; v < a.vertex_count(); ++v) {
    int r = remap[static_cast<size_t>(v)];
    if (compact[static_cast<size_t>(r)] < 0) compact[static_cast<size_t>(r)] = next++;
    remap[static_cast<size_t>(v)] = compact[static_cast<size_t>(r)];
  }
  std::vector<Arc> arcs;
  arcs.reserve(a.arcs().size());
  for (const Arc& arc : a.arcs()) {
    arcs.push_back({remap[static_cast<size_t>(arc.src)], arc.letter, remap[static_cast<size_t>(arc.dst)]});
  }
  return Automaton(a.alphabet(), next, remap[static_cast<size_t>(a.basepoint())], std::move(arcs));
}

/// Quotient identifying each listed pair (transitively).
inline Automaton quotient_pairs(const Automaton& a, const std::vector<std::pair<int, int>>& pairs) {
  detail::Dsu dsu(a.vertex_count());
  for (auto [p, q] : pairs) {
    if (p < 0 || p >= a.vertex_count() || q < 0 || q >= a.vertex_count()) {
      throw std::invalid_argument("quotient: vertex out of range");
    }
    dsu.unite(p, q);
  }
  std::vector<int> remap(static_cast<size_t>(a.vertex_count()), -1);
  int next = 0;
  for (int v = 0; v < a.vertex_count(); ++v) {
    int r = dsu.find(v);
    if (remap[static_cast<size_t>(r)] < 0) remap[static_cast<size_t>(r)] = next++;
    remap[static_cast<size_t>(v)] = remap[static_cast<size_t>(r)];
  }
  std::vector<Arc> arcs;
  arcs.reserve(a.arcs().size());
  for (const Arc& arc : a.arcs()) {
    arcs.push_back({remap[static_cast<size_t>(arc.src)], arc.letter, remap[static_cast<size_t>(arc.dst)]});
  }
  return Automaton(a.alphabet(), next, remap[static_cast<size_t>(a.basepoint())], std::move(arcs));
}

/// Complete folding.  Conflicts (two arcs with the same origin and signed
/// label) are processed from a FIFO worklist; vertex classes are merged with
/// a union-find keyed to the smallest original id, so the report is
/// deterministic.  Open folds merge vertices, closed folds only arcs.
inline std::pair<Automaton, FoldReport> fold(const Automaton& a) {
  const int m = a.vertex_count();
  const std::vector<Arc>& arcs = a.arcs();
  const int e = static_cast<int>(arcs.size());

  detail::Dsu dsu(m);
  std::vector<bool> alive(static_cast<size_t>(e), true);
  // Arc ends: 2*i = forward end of arc i (label +letter at src), 2*i+1 =
  // backward end (label -letter at dst).
  std::vector<std::vector<int>> ends(static_cast<size_t>(m));
  for (int i = 0; i < e; ++i) {
    ends[static_cast<size_t>(arcs[static_cast<size_t>(i)].src)].push_back(2 * i);
    ends[static_cast<size_t>(arcs[static_cast<size_t>(i)].dst)].push_back(2 * i + 1);
  }

  FoldReport report;
  std::deque<int> queue;
  for (int v = 0; v < m; ++v) queue.push_back(v);

  auto end_label = [&](int end) {
    const Arc& arc = arcs[static_cast<size_t>(end / 2)];
    return end % 2 == 0 ? arc.letter : -arc.letter;
  };
  auto end_target = [&](int end) {
    const Arc& arc = arcs[static_cast<size_t>(end / 2)];
    return end % 2 == 0 ? arc.dst : arc.src;
  };

  while (!queue.empty()) {
    int v = dsu.find(queue.front());
    queue.pop_front();
    auto& list = ends[static_cast<size_t>(v)];
    if (list.empty()) continue;

    // Drop dead ends, group the rest by signed label.
    std::map<int, std::vector<int>> by_label;
    std::vector<int> live;
    live.reserve(list.size());
    for (int end : list) {
      if (!alive[static_cast<size_t>(end / 2)]) continue;
      live.push_back(end);
      by_label[letter_ord(end_label(end))].push_back(end);
    }
    list = std::move(live);

    bool folded = false;
    for (auto& [ord, group] : by_label) {
      (void)ord;
      if (group.size() < 2) continue;
      std::sort(group.begin(), group.end());
      int e1 = group[0];
      int e2 = group[1];
      int t1 = dsu.find(end_target(e1));
      int t2 = dsu.find(end_target(e2));
      alive[static_cast<size_t>(e2 / 2)] = false;  // the two arcs become one
      if (t1 == t2) {
        ++report.closed_folds;
      } else {
        ++report.open_folds;
        int root = dsu.unite(t1, t2);
        int loser = root == t1 ? t2 : t1;
        auto& into = ends[static_cast<size_t>(root)];
        auto& from = ends[static_cast<size_t>(loser)];
        into.insert(into.end(), from.begin(), from.end());
        from.clear();
        queue.push_back(root);
      }
      queue.push_back(v);
      folded = true;
      break;  // re-scan v from scratch; classes may have shifted
    }
    (void)folded;
  }

  // Renumber surviving classes in increasing root order.
  std::vector<int> remap(static_cast<size_t>(m), -1);
  int next = 0;
  for (int v = 0; v < m; ++v) {
    int r = dsu.find(v);
    if (remap[static_cast<size_t>(r)] < 0) remap[static_cast<size_t>(r)] = next++;
  }
  report.merged_vertex_map.resize(static_cast<size_t>(m));
  for (int v = 0; v < m; ++v) report.merged_vertex_map[static_cast<size_t>(v)] = remap[static_cast<size_t>(dsu.find(v))];

  std::vector<Arc> out_arcs;
  for (int i = 0; i < e; ++i) {
    if (!alive[static_cast<size_t>(i)]) continue;
    const Arc& arc = arcs[static_cast<size_t>(i)];
    out_arcs.push_back({report.merged_vertex_map[static_cast<size_t>(arc.src)], arc.letter,
                        report.merged_vertex_map[static_cast<size_t>(arc.dst)]});
  }
  Automaton folded(a.alphabet(), next, report.merged_vertex_map[static_cast<size_t>(a.basepoint())],
                   std::move(out_arcs));
  return {std::move(folded), std::move(report)};
}

/// Basepoint component with hanging trees (not containing the basepoint)
/// removed.  Input must be deterministic.
inline Automaton core_trim(const Automaton& a) {
  StepTable table(a);  // throws on nondeterministic input
  (void)table;
  std::vector<bool> keep = detail::basepoint_component(a);

  // Iteratively peel degree-1 vertices other than the basepoint.
  std::vector<int> degree(static_cast<size_t>(a.vertex_count()), 0);
  for (const Arc& arc : a.arcs()) {
    if (!keep[static_cast<size_t>(arc.src)]) continue;
    degree[static_cast<size_t>(arc.src)] += 1;
    degree[static_cast<size_t>(arc.dst)] += 1;  // loops count twice
  }
  std::deque<int> peel;
  for (int v = 0; v < a.vertex_count(); ++v) {
    if (keep[static_cast<size_t>(v)] && v != a.basepoint() && degree[static_cast<size_t>(v)] == 1) peel.push_back(v);
  }
  auto adj = detail::involutive_adjacency(a);
  std::vector<bool> removed(static_cast<size_t>(a.vertex_count()), false);
  while (!peel.empty()) {
    int v = peel.front();
    peel.pop_front();
    if (removed[static_cast<size_t>(v)] || degree[static_cast<size_t>(v)] != 1) continue;
    removed[static_cast<size_t>(v)] = true;
    keep[static_cast<size_t>(v)] = false;
    for (int w : adj[static_cast<size_t>(v)]) {
      if (removed[static_cast<size_t>(w)] || !keep[static_cast<size_t>(w)]) continue;
      degree[static_cast<size_t>(w)] -= 1;
      if (w != a.basepoint() && degree[static_cast<size_t>(w)] == 1) peel.push_back(w);
    }
  }
  return detail::restrict_vertices(a, keep);
}

/// Canonical renumbering: BFS from the basepoint, exploring arcs in
/// (letter index, sign) order.  Requires a deterministic connected automaton.
/// Two reduced automata recognize the same subgroup iff their canonical
/// forms are identical.
inline Automaton canonicalize(const Automaton& a) {
  StepTable table(a);
  std::vector<int> order(static_cast<size_t>(a.vertex_count()), -1);
  order[static_cast<size_t>(a.basepoint())] = 0;
  int next = 1;
  std::deque<int> queue{a.basepoint()};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int l = 1; l <= a.alphabet().size(); ++l) {
      for (Letter x : {l, -l}) {
        auto t = table.step(v, x);
        if (t && order[static_cast<size_t>(*t)] < 0) {
          order[static_cast<size_t>(*t)] = next++;
          queue.push_back(*t);
        }
      }
    }
  }
  if (next != a.vertex_count()) throw std::invalid_argument("canonicalize: automaton is not connected");
  std::vector<Arc> arcs;
  arcs.reserve(a.arcs().size());
  for (const Arc& arc : a.arcs()) {
    arcs.push_back({order[static_cast<size_t>(arc.src)], arc.letter, order[static_cast<size_t>(arc.dst)]});
  }
  return Automaton(a.alphabet(), a.vertex_count(), 0, std::move(arcs));
}

/// Fold, trim, canonicalize: the Stallings automaton of the subgroup
/// recognized by an arbitrary automaton.
inline Automaton stallings_reduction(const Automaton& a) { return canonicalize(core_trim(fold(a).first)); }

/// Canonical Stallings automaton of <S>.
inline Automaton stallings_of(const Alphabet& alphabet, const std::vector<ReducedWord>& generators) {
  return stallings_reduction(flower(alphabet, generators));
}

/// e - v + c of the underlying undirected multigraph.
inline int graph_rank(const Automaton& a) {
  detail::Dsu dsu(a.vertex_count());
  for (const Arc& arc : a.arcs()) dsu.unite(arc.src, arc.dst);
  std::set<int> roots;
  for (int v = 0; v < a.vertex_count(); ++v) roots.insert(dsu.find(v));
  return static_cast<int>(a.arcs().size()) - a.vertex_count() + static_cast<int>(roots.size());
}

/// Endpoint of the walk labelled w starting at `start`, or nullopt if some
/// letter cannot be read.  Requires a deterministic automaton.
inline std::optional<int> read_walk(const Automaton& a, int start, const Word& w) {
  if (start < 0 || start >= a.vertex_count()) throw std::invalid_argument("read_walk: vertex out of range");
  return StepTable(a).walk(start, w);
}

inline Classification classify(const Automaton& a) {
  Classification out;
  const int n = a.alphabet().size();
  const int m = a.vertex_count();

  // determinism + completeness from out-degree counts per signed letter
  std::vector<int> out_count(static_cast<size_t>(m) * 2 * static_cast<size_t>(n), 0);
  auto slot = [&](int v, Letter x) {
    return static_cast<size_t>(v) * 2 * static_cast<size_t>(n) + static_cast<size_t>(letter_ord(x));
  };
  for (const Arc& arc : a.arcs()) {
    out_count[slot(arc.src, arc.letter)] += 1;
    out_count[slot(arc.dst, -arc.letter)] += 1;
  }
  out.deterministic = std::all_of(out_count.begin(), out_count.end(), [](int c) { return c <= 1; });
  out.complete = std::all_of(out_count.begin(), out_count.end(), [](int c) { return c >= 1; });

  auto component = detail::basepoint_component(a);
  out.connected = std::all_of(component.begin(), component.end(), [](bool b) { return b; });

  // core: every vertex lies on some basepoint walk with reduced label.
  // Forward states (v, x): reachable from the basepoint by a reduced-label
  // walk ending with signed letter x (0 = empty walk); backward states:
  // symmetric, reading toward the basepoint.
  const int letter_states = 2 * n + 1;  // 0 = none, 1.. = letter_ord + 1
  auto run = [&](bool forward) {
    std::vector<std::vector<bool>> seen(static_cast<size_t>(m),
                                        std::vector<bool>(static_cast<size_t>(letter_states), false));
    std::deque<std::pair<int, int>> queue;
    seen[static_cast<size_t>(a.basepoint())][0] = true;
    queue.emplace_back(a.basepoint(), 0);
    // adjacency with signed labels
    std::vector<std::vector<std::pair<Letter, int>>> adj(static_cast<size_t>(m));
    for (const Arc& arc : a.arcs()) {
      if (forward) {
        adj[static_cast<size_t>(arc.src)].emplace_back(arc.letter, arc.dst);
        adj[static_cast<size_t>(arc.dst)].emplace_back(-arc.letter, arc.src);
      } else {
        // walk toward the basepoint: reversed arcs, labels as read forward
        adj[static_cast<size_t>(arc.dst)].emplace_back(arc.letter, arc.src);
        adj[static_cast<size_t>(arc.src)].emplace_back(-arc.letter, arc.dst);
      }
    }
    while (!queue.empty()) {
      auto [v, last] = queue.front();
      queue.pop_front();
      for (auto [x, w] : adj[static_cast<size_t>(v)]) {
        if (last != 0) {
          // Cancellation test is the same in both directions: the two
          // consecutive letters must not be mutually inverse.
          Letter prev = (last - 1) % 2 == 0 ? (last - 1) / 2 + 1 : -((last - 1) / 2 + 1);
          if (x == -prev) continue;
        }
        int encoded = letter_ord(x) + 1;
        if (!seen[static_cast<size_t>(w)][static_cast<size_t>(encoded)]) {
          seen[static_cast<size_t>(w)][static_cast<size_t>(encoded)] = true;
          queue.emplace_back(w, encoded);
        }
      }
    }
    return seen;
  };
  auto fwd = run(true);
  auto bwd = run(false);
  out.core = true;
  for (int v = 0; v < m && out.core; ++v) {
    bool ok = false;
    for (int i = 0; i < letter_states && !ok; ++i) {
      if (!fwd[static_cast<size_t>(v)][static_cast<size_t>(i)]) continue;
      for (int j = 0; j < letter_states && !ok; ++j) {
        if (!bwd[static_cast<size_t>(v)][static_cast<size_t>(j)]) continue;
        if (i == 0 || j == 0) {
          ok = true;
        } else {
          Letter xi = (i - 1) % 2 == 0 ? (i - 1) / 2 + 1 : -((i - 1) / 2 + 1);
          Letter xj = (j - 1) % 2 == 0 ? (j - 1) / 2 + 1 : -((j - 1) / 2 + 1);
          ok = (xj != -xi);
        }
      }
    }
    out.core = ok;
  }

  out.bouquet = m == 1 && out.deterministic;
  if (out.bouquet) out.loop_letters = a.letters_present();
  return out;
}

/// Reduced label of the canonical BFS tree walk from the basepoint to each
/// vertex.  The tree is the one fixed by `canonicalize`.
inline std::vector<ReducedWord> spanning_tree_labels(const Automaton& a) {
  StepTable table(a);
  std::vector<ReducedWord> labels(static_cast<size_t>(a.vertex_count()));
  std::vector<bool> seen(static_cast<size_t>(a.vertex_count()), false);
  seen[static_cast<size_t>(a.basepoint())] = true;
  std::deque<int> queue{a.basepoint()};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int l = 1; l <= a.alphabet().size(); ++l) {
      for (Letter x : {l, -l}) {
        auto t = table.step(v, x);
        if (t && !seen[static_cast<size_t>(*t)]) {
          seen[static_cast<size_t>(*t)] = true;
          Word w = labels[static_cast<size_t>(v)].word();
          w.push_back(x);
          labels[static_cast<size_t>(*t)] = ReducedWord(std::move(w));
          queue.push_back(*t);
        }
      }
    }
  }
  for (bool s : seen) {
    if (!s) throw std::invalid_argument("spanning tree: automaton is not connected");
  }
  return labels;
}

/// Free basis of the recognized subgroup from the canonical spanning tree:
/// one word per positive non-tree arc.
inline std::vector<ReducedWord> spanning_tree_basis(const Automaton& a) {
  StepTable table(a);
  std::vector<ReducedWord> labels = spanning_tree_labels(a);

  // Recover which arcs the BFS used: mark first-visit arcs.
  std::vector<bool> seen(static_cast<size_t>(a.vertex_count()), false);
  seen[static_cast<size_t>(a.basepoint())] = true;
  std::deque<int> queue{a.basepoint()};
  std::set<std::pair<std::pair<int, int>, int>> tree;  // ((src,dst),letter) positive form
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int l = 1; l <= a.alphabet().size(); ++l) {
      for (Letter x : {l, -l}) {
        auto t = table.step(v, x);
        if (t && !seen[static_cast<size_t>(*t)]) {
          seen[static_cast<size_t>(*t)] = true;
          if (is_positive(x)) {
            tree.insert({{v, *t}, x});
          } else {
            tree.insert({{*t, v}, -x});
          }
          queue.push_back(*t);
        }
      }
    }
  }

  // Determinism rules out two arcs sharing (src, letter, dst), so tree
  // membership by triple is unambiguous.
  std::vector<ReducedWord> basis;
  for (const Arc& arc : a.arcs()) {
    auto key = std::make_pair(std::make_pair(arc.src, arc.dst), arc.letter);
    if (tree.count(key)) continue;
    Word w = labels[static_cast<size_t>(arc.src)].word();
    w.push_back(arc.letter);
    w = w * labels[static_cast<size_t>(arc.dst)].word().inverse();
    basis.push_back(free_reduce(w));
  }
  return basis;
}

}  // namespace stallings

#endif  // STALLINGS_AUTOMATON_HPP
