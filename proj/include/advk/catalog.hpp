#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "advk/oracle.hpp"

namespace advk {

struct Catalog {
  std::vector<OracleDescriptor> oracles;

  const OracleDescriptor* find(const std::string& name_or_symbol) const;
};

// Every extraction oracle the survey tables draw from, one descriptor per
// row. The open-ended family of training stand-ins is encoded as three named
// membership conditions (training_function, loss_function, optimizer), each an
// uncertainty set that contains the true Train.
Catalog canonical_catalog();

DerivationRegistry default_registry();

// The oracles behind one category's published diagram:
//   model:    parameters, scores, labels, architecture, possible_architectures
//             plus the four joint oracles from the figure (9 nodes)
//   data:     the three sources closed under combination (7 nodes)
//   training: train plus the three membership conditions
//   defense:  full_awareness, partial_awareness, set_of_possible_defenses
std::vector<OracleDescriptor> category_catalog(Category c,
                                               const DerivationRegistry& reg);

// Closes a catalog under pairwise combination of incomparable entries. New
// entries get canonical sorted names; name collisions keep the first build.
std::vector<OracleDescriptor> combine_closure(std::vector<OracleDescriptor> base,
                                              const DerivationRegistry& reg);

// Resolves a name, symbol, or "a&b&c" combination over the catalog. The alias
// "loss_and_optimizer" stands for "loss_function&optimizer". Unknown names
// raise.
OracleDescriptor resolve_oracle(const Catalog& cat, const std::string& name,
                                const DerivationRegistry& reg);

// One attacker's knowledge: at most one oracle name per category, absent
// meaning no knowledge at all (the bottom of that category).
struct ThreatModel {
  std::optional<std::string> model_info;
  std::optional<std::string> data_info;
  std::optional<std::string> training_info;
  std::optional<std::string> defense_info;
};

// Product order over the four categories: a dominates b when every category
// of a dominates or equals the matching category of b.
Relation compare_threat_models(const ThreatModel& a, const ThreatModel& b,
                               const Catalog& cat, const DerivationRegistry& reg);

// The five showcase configurations used to grade a projected-gradient
// attacker, strongest knowledge first.
std::vector<std::pair<std::string, ThreatModel>> pgd_showcase_models();

}  // namespace advk
