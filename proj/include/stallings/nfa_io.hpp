#ifndef STALLINGS_NFA_IO_HPP
#define STALLINGS_NFA_IO_HPP

#include <algorithm>
#include <sstream>
#include <string>

#include <json.hpp>

#include "stallings/nfa.hpp"

namespace stallings {

inline std::string nfa_letter_name(const Alphabet& alphabet, Letter x) {
  if (x == 0) return "eps";
  std::string name = alphabet.name(letter_index(x));
  if (!is_positive(x)) name += "^-1";
  return name;
}

/// {states, initial:[...], final:[...], transitions:[[p,"letter"|"eps",q],...]}
inline nlohmann::json to_json(const WordNfa& nfa) {
  nlohmann::json j;
  j["states"] = nfa.states;
  auto initial = nfa.initial;
  std::sort(initial.begin(), initial.end());
  auto accepting = nfa.accepting;
  std::sort(accepting.begin(), accepting.end());
  j["initial"] = initial;
  j["final"] = accepting;
  auto transitions = nfa.transitions;
  auto key = [](const std::tuple<int, Letter, int>& t) {
    Letter x = std::get<1>(t);
    int ord = x == 0 ? 0 : 1 + letter_ord(x);  // eps sorts first
    return std::make_tuple(std::get<0>(t), ord, std::get<2>(t));
  };
  std::sort(transitions.begin(), transitions.end(),
            [&](const auto& a, const auto& b) { return key(a) < key(b); });
  j["transitions"] = nlohmann::json::array();
  for (auto [from, x, to] : transitions) {
    j["transitions"].push_back(nlohmann::json::array({from, nfa_letter_name(nfa.alphabet, x), to}));
  }
  return j;
}

inline std::string to_dot(const WordNfa& nfa, const std::string& name = "nfa") {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle];\n";
  for (int s : nfa.accepting) out << "  " << s << " [shape=doublecircle];\n";
  for (size_t i = 0; i < nfa.initial.size(); ++i) {
    out << "  start" << i << " [shape=point];\n";
    out << "  start" << i << " -> " << nfa.initial[i] << ";\n";
  }
  for (auto [from, x, to] : nfa.transitions) {
    out << "  " << from << " -> " << to << " [label=\"" << nfa_letter_name(nfa.alphabet, x) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace stallings

#endif  // STALLINGS_NFA_IO_HPP
