#include "advk/poset.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace advk {

std::string PosetNode::key() const {
  std::string k;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) k += "=";
    k += names[i];
  }
  return k;
}

Poset build_poset(const std::vector<OracleDescriptor>& oracles,
                  const DerivationRegistry& reg) {
  const std::size_t n = oracles.size();
  {
    std::set<std::string> seen;
    for (const auto& o : oracles)
      if (!seen.insert(o.name).second)
        throw std::invalid_argument("duplicate oracle name: " + o.name);
  }

  // Union-find over equivalence classes.
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };

  std::vector<std::vector<Relation>> rel(n, std::vector<Relation>(n, Relation::Equivalent));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      rel[i][j] = compare(oracles[i], oracles[j], reg);
      rel[j][i] = flip(rel[i][j]);
      if (rel[i][j] == Relation::Equivalent) parent[find(i)] = find(j);
    }
  }

  std::map<std::size_t, std::vector<std::string>> classes;
  for (std::size_t i = 0; i < n; ++i) classes[find(i)].push_back(oracles[i].name);

  Poset p;
  std::map<std::size_t, std::string> key_of;
  for (auto& [root, names] : classes) {
    std::sort(names.begin(), names.end());
    PosetNode node{names};
    key_of[root] = node.key();
    p.nodes.push_back(std::move(node));
  }
  std::sort(p.nodes.begin(), p.nodes.end(),
            [](const PosetNode& a, const PosetNode& b) { return a.key() < b.key(); });

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (find(i) == find(j)) continue;
      if (rel[i][j] == Relation::Dominates)
        p.relation.insert({key_of[find(i)], key_of[find(j)]});
    }
  }
  return p;
}

namespace {

using PairSet = std::set<std::pair<std::string, std::string>>;

PairSet close(const PairSet& rel) {
  PairSet closed = rel;
  bool grew = true;
  while (grew) {
    grew = false;
    PairSet next = closed;
    for (const auto& [a, b] : closed)
      for (const auto& [c, d] : closed)
        if (b == c && a != d && next.insert({a, d}).second) grew = true;
    closed = std::move(next);
  }
  return closed;
}

}  // namespace

HasseDiagram transitive_reduction(const Poset& p) {
  for (const auto& [a, b] : p.relation) {
    if (a == b)
      throw std::invalid_argument("relation contains a self-loop: " + a);
    if (p.relation.count({b, a}))
      throw std::invalid_argument("relation contains a cycle between " + a +
                                  " and " + b + "; merge equivalents first");
  }
  if (close(p.relation) != p.relation)
    throw std::invalid_argument("relation is not transitively closed");

  HasseDiagram h;
  h.nodes = p.nodes;
  for (const auto& [a, b] : p.relation) {
    bool shortcut = false;
    for (const auto& node : p.nodes) {
      const std::string c = node.key();
      if (c == a || c == b) continue;
      if (p.relation.count({a, c}) && p.relation.count({c, b})) {
        shortcut = true;
        break;
      }
    }
    if (!shortcut) h.covers.insert({a, b});
  }
  return h;
}

std::string to_dot(const HasseDiagram& h, const std::string& graph_name,
                   const std::vector<std::string>& annotations) {
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') q += '\\';
      q += c;
    }
    return q + "\"";
  };

  std::string dot = "digraph " + graph_name + " {\n";
  dot += "  node [shape=box];\n";
  for (const auto& node : h.nodes) {
    std::string label;
    for (std::size_t i = 0; i < node.names.size(); ++i) {
      if (i) label += " = ";
      label += node.names[i];
    }
    dot += "  " + quote(node.key()) + " [label=" + quote(label) + "];\n";
  }
  for (const auto& note : annotations)
    dot += "  " + quote(note) + " [style=dashed];\n";
  for (const auto& [a, b] : h.covers)
    dot += "  " + quote(a) + " -> " + quote(b) + ";\n";
  dot += "}\n";
  return dot;
}

}  // namespace advk
