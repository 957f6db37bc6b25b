#ifndef STALLINGS_CORANK_HPP
#define STALLINGS_CORANK_HPP

#include <algorithm>
#include <future>
#include <map>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "stallings/automaton.hpp"
#include "stallings/subgroup.hpp"
#include "stallings/words.hpp"

namespace stallings {

struct CorankCertificate {
  int corank = 0;
  int letters_present = 0;                           // n' of St(H)
  std::vector<std::pair<int, int>> identification_set;  // vertex pairs I, in St(H) numbering
  std::vector<ReducedWord> witness;                  // |witness| == corank, join(H, <witness>) = Fn
};

namespace detail {

inline std::vector<std::pair<int, int>> all_vertex_pairs(int m) {
  std::vector<std::pair<int, int>> pairs;
  for (int p = 0; p < m; ++p) {
    for (int q = p + 1; q < m; ++q) pairs.emplace_back(p, q);
  }
  return pairs;
}

inline bool folds_to_bouquet(const Automaton& a, const std::vector<std::pair<int, int>>& pairs) {
  return fold(quotient_pairs(a, pairs)).first.vertex_count() == 1;
}

/// Enumerates k-subsets of [0, total) lexicographically, invoking fn with the
/// index vector; fn returns true to stop.  Returns the stopping subset.
template <typename Fn>
inline std::optional<std::vector<int>> for_each_subset(int total, int k, Fn&& fn) {
  if (k > total) return std::nullopt;
  std::vector<int> idx(static_cast<size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (fn(idx)) return idx;
    int i = k - 1;
    while (i >= 0 && idx[static_cast<size_t>(i)] == total - k + i) --i;
    if (i < 0) return std::nullopt;
    ++idx[static_cast<size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
  }
}

/// Number of k-subsets of [0, total), saturating.
inline unsigned long long subset_count(int total, int k) {
  unsigned long long count = 1;
  for (int i = 0; i < k; ++i) {
    count = count * static_cast<unsigned long long>(total - i) / static_cast<unsigned long long>(i + 1);
    if (count > (1ull << 62)) return 1ull << 62;
  }
  return count;
}

/// k-subset with the given lexicographic rank.
inline std::vector<int> subset_unrank(int total, int k, unsigned long long rank) {
  std::vector<int> idx;
  idx.reserve(static_cast<size_t>(k));
  int next = 0;
  for (int slot = 0; slot < k; ++slot) {
    for (int candidate = next;; ++candidate) {
      unsigned long long below = subset_count(total - candidate - 1, k - slot - 1);
      if (rank < below) {
        idx.push_back(candidate);
        next = candidate + 1;
        break;
      }
      rank -= below;
    }
  }
  return idx;
}

}  // namespace detail

/// Ordered pairs (p, q), p != q, whose identification folds St-like
/// automaton `a` to the bouquet over the full alphabet.  Used both by the
/// corank search and by the join-cocycle automaton.
inline std::vector<std::pair<int, int>> bouquet_identification_pairs(const Automaton& a) {
  std::vector<std::pair<int, int>> out;
  if (static_cast<int>(a.letters_present().size()) != a.alphabet().size()) return out;
  const int m = a.vertex_count();
  for (int p = 0; p < m; ++p) {
    for (int q = p + 1; q < m; ++q) {
      if (detail::folds_to_bouquet(a, {{p, q}})) {
        out.emplace_back(p, q);
        out.emplace_back(q, p);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Join-corank by the subset-identification search: enumerate
/// I subseteq V x V (unordered distinct pairs) with |I| <= n' in increasing
/// size, fold St(H)/I, record the smallest size reaching a bouquet; the
/// corank is n - n' + |I|.  The witness adjoins one tree-label quotient word
/// per identified pair plus one letter per absent alphabet letter.
inline CorankCertificate join_corank(const Subgroup& h, int jobs = 1) {
  const Automaton& a = h.automaton();
  const int n = a.alphabet().size();
  const std::vector<int> present = a.letters_present();
  const int n_present = static_cast<int>(present.size());

  CorankCertificate cert;
  cert.letters_present = n_present;

  std::vector<int> missing;
  for (int l = 1; l <= n; ++l) {
    if (!std::binary_search(present.begin(), present.end(), l)) missing.push_back(l);
  }

  auto finish = [&](const std::vector<std::pair<int, int>>& pairs) {
    cert.identification_set = pairs;
    cert.corank = n - n_present + static_cast<int>(pairs.size());
    auto labels = spanning_tree_labels(a);
    for (auto [p, q] : pairs) {
      Word w = labels[static_cast<size_t>(p)].word() * labels[static_cast<size_t>(q)].word().inverse();
      cert.witness.push_back(free_reduce(w));
    }
    for (int l : missing) cert.witness.push_back(ReducedWord(Word(std::vector<Letter>{l})));
    return cert;
  };

  if (a.vertex_count() == 1) return finish({});

  const auto pairs = detail::all_vertex_pairs(a.vertex_count());
  const int total = static_cast<int>(pairs.size());
  auto materialize = [&](const std::vector<int>& idx) {
    std::vector<std::pair<int, int>> chosen;
    chosen.reserve(idx.size());
    for (int i : idx) chosen.push_back(pairs[static_cast<size_t>(i)]);
    return chosen;
  };

  for (int r = 1; r <= n_present; ++r) {
    if (jobs <= 1) {
      auto hit = detail::for_each_subset(total, r, [&](const std::vector<int>& idx) {
        return detail::folds_to_bouquet(a, materialize(idx));
      });
      if (hit) return finish(materialize(*hit));
    } else {
      // Embarrassingly parallel: split the subset sequence into contiguous
      // chunks, take the minimum-rank success (same answer as sequential).
      const unsigned long long count = detail::subset_count(total, r);
      const unsigned long long chunk = std::max<unsigned long long>(1, count / static_cast<unsigned long long>(jobs * 4));
      std::vector<std::future<std::optional<unsigned long long>>> futures;
      for (unsigned long long begin = 0; begin < count; begin += chunk) {
        unsigned long long end = std::min(count, begin + chunk);
        futures.push_back(std::async(std::launch::async, [&, begin, end]() -> std::optional<unsigned long long> {
          std::vector<int> idx = detail::subset_unrank(total, r, begin);
          for (unsigned long long rank = begin; rank < end; ++rank) {
            if (detail::folds_to_bouquet(a, materialize(idx))) return rank;
            // next subset
            int i = r - 1;
            while (i >= 0 && idx[static_cast<size_t>(i)] == total - r + i) --i;
            if (i < 0) break;
            ++idx[static_cast<size_t>(i)];
            for (int j = i + 1; j < r; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
          }
          return std::nullopt;
        }));
      }
      std::optional<unsigned long long> best;
      for (auto& f : futures) {
        auto hit = f.get();
        if (hit && (!best || *hit < *best)) best = hit;
      }
      if (best) return finish(materialize(detail::subset_unrank(total, r, *best)));
    }
  }
  // Unreachable: jcrk(H) <= n forces a success with |I| <= n'.
  throw std::logic_error("join_corank: no identification set found");
}

/// Join-corank by the vertex-identification recursion: a bouquet has corank
/// n - (letters present); otherwise 1 + the minimum over single
/// identifications.  Serves as a cross-validation oracle for join_corank.
inline int join_corank_recursive(const Subgroup& h) {
  std::map<Automaton, int> memo;

  auto rec = [&](auto&& self, const Automaton& a) -> int {
    if (a.vertex_count() == 1) {
      return a.alphabet().size() - static_cast<int>(a.letters_present().size());
    }
    auto it = memo.find(a);
    if (it != memo.end()) return it->second;
    int best = a.alphabet().size();  // corank never exceeds n
    for (int p = 0; p < a.vertex_count() && best > 1; ++p) {
      for (int q = p + 1; q < a.vertex_count() && best > 1; ++q) {
        Automaton next = canonicalize(core_trim(fold(quotient_pairs(a, {{p, q}})).first));
        best = std::min(best, 1 + self(self, next));
      }
    }
    memo.emplace(a, best);
    return best;
  };
  return rec(rec, h.automaton());
}

/// True iff join(H, <R>) is the whole free group.
inline bool corank_witness_check(const Subgroup& h, const std::vector<ReducedWord>& words) {
  Automaton folded = fold(sum(h.automaton(), flower(h.alphabet(), words))).first;
  return folded.vertex_count() == 1 &&
         static_cast<int>(folded.letters_present().size()) == h.alphabet().size();
}

/// n minus the GF(2)-rank of the letter-parity vectors of a basis of H.
/// Always a lower bound for the join-corank.
inline int mod2_lower_bound(const Subgroup& h) {
  const int n = h.alphabet().size();
  std::vector<unsigned long long> rows;
  if (n > 63) throw std::invalid_argument("mod2_lower_bound: alphabet too large");
  for (const ReducedWord& b : h.basis()) {
    unsigned long long row = 0;
    for (Letter x : b.word()) row ^= 1ull << (letter_index(x) - 1);
    rows.push_back(row);
  }
  // GF(2) Gaussian elimination
  int rank = 0;
  for (int bit = 0; bit < n; ++bit) {
    size_t pivot = SIZE_MAX;
    for (size_t i = static_cast<size_t>(rank); i < rows.size(); ++i) {
      if (rows[i] >> bit & 1) {
        pivot = i;
        break;
      }
    }
    if (pivot == SIZE_MAX) continue;
    std::swap(rows[static_cast<size_t>(rank)], rows[pivot]);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i != static_cast<size_t>(rank) && (rows[i] >> bit & 1)) rows[i] ^= rows[static_cast<size_t>(rank)];
    }
    ++rank;
  }
  return n - rank;
}

/// H(r, c): rank-r subgroup of join-corank c.  Loops a_{c+1}..a_n at the
/// basepoint plus a chain of r-n+c alternating a1^2 / a2^2 cycles.
inline Subgroup family_h(int r, int c, int n) {
  if (n < 2) throw std::invalid_argument("family_h: alphabet size must be >= 2");
  if (c < 1 || c > n) throw std::invalid_argument("family_h: need 1 <= c <= n");
  if (r < std::max(1, n - c)) throw std::invalid_argument("family_h: need r >= max(1, n - c)");
  Alphabet alphabet(n);
  std::vector<Word> generators;
  for (int l = c + 1; l <= n; ++l) generators.push_back(Word(std::vector<Letter>{l}));
  const int chain = r - n + c;
  Word a1(std::vector<Letter>{1});
  Word a2(std::vector<Letter>{2});
  Word a1a2 = a1 * a2;
  for (int i = 0; 2 * i + 1 <= chain; ++i) {
    generators.push_back(a1a2.pow(i) * a1.pow(2) * a1a2.pow(i).inverse());
  }
  for (int j = 0; 2 * j + 2 <= chain; ++j) {
    generators.push_back(a1a2.pow(j) * a1 * a2.pow(2) * a1.inverse() * a1a2.pow(j).inverse());
  }
  return Subgroup::generated_by(alphabet, generators);
}

/// K(r, c) = <a_3, ..., a_c, a1 a2, a2 (a2 a1)^r>: a join-complement of
/// H(r, c) meeting it trivially.  Has rank c for c >= 2 (and rank 2 when
/// c = 1, where the two non-letter generators are still needed).
inline Subgroup family_k(int r, int c, int n) {
  if (n < 2) throw std::invalid_argument("family_k: alphabet size must be >= 2");
  if (c < 1 || c > n) throw std::invalid_argument("family_k: need 1 <= c <= n");
  if (r < std::max(1, n - c)) throw std::invalid_argument("family_k: need r >= max(1, n - c)");
  Alphabet alphabet(n);
  std::vector<Word> generators;
  for (int l = 3; l <= c; ++l) generators.push_back(Word(std::vector<Letter>{l}));
  Word a1(std::vector<Letter>{1});
  Word a2(std::vector<Letter>{2});
  generators.push_back(a1 * a2);
  generators.push_back(a2 * (a2 * a1).pow(r));
  return Subgroup::generated_by(alphabet, generators);
}

}  // namespace stallings

#endif  // STALLINGS_CORANK_HPP
