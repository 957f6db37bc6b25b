#ifndef STALLINGS_AUTOMATON_IO_HPP
#define STALLINGS_AUTOMATON_IO_HPP

#include <sstream>
#include <string>

#include <json.hpp>

#include "stallings/automaton.hpp"

namespace stallings {

/// {"alphabet":["a","b"], "vertices":k, "basepoint":0,
///  "arcs":[[src,"letter",dst],...]} with arcs sorted (src, letter, dst).
inline nlohmann::json to_json(const Automaton& a) {
  nlohmann::json j;
  j["alphabet"] = nlohmann::json::array();
  for (int l = 1; l <= a.alphabet().size(); ++l) j["alphabet"].push_back(a.alphabet().name(l));
  j["vertices"] = a.vertex_count();
  j["basepoint"] = a.basepoint();
  j["arcs"] = nlohmann::json::array();
  for (const Arc& arc : a.arcs()) {
    j["arcs"].push_back(nlohmann::json::array({arc.src, a.alphabet().name(arc.letter), arc.dst}));
  }
  return j;
}

inline Automaton automaton_from_json(const nlohmann::json& j) {
  std::vector<std::string> names;
  for (const auto& name : j.at("alphabet")) names.push_back(name.get<std::string>());
  Alphabet alphabet(std::move(names));
  std::vector<Arc> arcs;
  for (const auto& triple : j.at("arcs")) {
    if (!triple.is_array() || triple.size() != 3) throw std::invalid_argument("arc must be [src, letter, dst]");
    int letter = alphabet.index_of(triple.at(1).get<std::string>());
    if (letter == 0) throw std::invalid_argument("unknown arc letter");
    arcs.push_back({triple.at(0).get<int>(), letter, triple.at(2).get<int>()});
  }
  return Automaton(std::move(alphabet), j.at("vertices").get<int>(), j.at("basepoint").get<int>(), std::move(arcs));
}

/// DOT export of the positive part; the basepoint is double-circled.
inline std::string to_dot(const Automaton& a, const std::string& name = "stallings") {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle];\n";
  out << "  " << a.basepoint() << " [shape=doublecircle];\n";
  for (const Arc& arc : a.arcs()) {
    out << "  " << arc.src << " -> " << arc.dst << " [label=\"" << a.alphabet().name(arc.letter) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace stallings

#endif  // STALLINGS_AUTOMATON_IO_HPP
