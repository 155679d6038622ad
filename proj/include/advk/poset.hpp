#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "advk/oracle.hpp"

namespace advk {

struct PosetNode {
  std::vector<std::string> names;  // equivalence class, sorted

  std::string key() const;  // names joined with "="
};

// Strict order between equivalence classes of oracles. The relation holds
// (dominator, dominated) pairs of node keys, is transitively closed,
// irreflexive and antisymmetric.
struct Poset {
  std::vector<PosetNode> nodes;  // sorted by key
  std::set<std::pair<std::string, std::string>> relation;
};

struct HasseDiagram {
  std::vector<PosetNode> nodes;
  std::set<std::pair<std::string, std::string>> covers;
};

// Compares every pair, merges Equivalent oracles into one node and returns
// the transitively closed strict order. Duplicate oracle names are rejected.
Poset build_poset(const std::vector<OracleDescriptor>& oracles,
                  const DerivationRegistry& reg);

// Unique minimal cover relation of a finite partial order. Rejects relations
// with a cycle among distinct nodes (an Equivalent merge that never happened)
// and relations that are not transitively closed.
HasseDiagram transitive_reduction(const Poset& p);

// Deterministic DOT rendering: nodes sorted by key, then annotations, then
// edges dominator -> dominated in sorted order. LF line endings.
std::string to_dot(const HasseDiagram& h, const std::string& graph_name = "hasse",
                   const std::vector<std::string>& annotations = {});

}  // namespace advk
