#include "advk/catalog.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace advk {

namespace {

InfoTerm el(const char* id) { return InfoTerm::element(id); }

InfoTerm echo_pair(InfoTerm payload) {
  return InfoTerm::tuple({std::move(payload), el("x")});
}

OracleDescriptor make(const char* name, const char* symbol, Category cat,
                      InfoTerm output, StateDescriptor state) {
  OracleDescriptor o;
  o.name = name;
  o.symbol = symbol;
  o.category = cat;
  o.output = std::move(output);
  o.state = std::move(state);
  return o;
}

constexpr long kDefaultQueryBudget = 100;

InfoTerm arch_uncertainty() {
  return InfoTerm::candidates({el("phi_0"), el("phi_1"), el("phi_M")},
                              el("phi_M"));
}

InfoTerm train_condition(const std::vector<const char*>& members) {
  std::vector<InfoTerm> ms;
  for (const char* m : members) ms.push_back(el(m));
  return InfoTerm::candidates(std::move(ms), el("Train"));
}

InfoTerm defense_params_uncertainty() {
  return InfoTerm::candidates({el("varrho"), el("varrho_0"), el("varrho_1")},
                              el("varrho"));
}

InfoTerm defense_algo_uncertainty() {
  return InfoTerm::candidates({el("rho"), el("rho_0"), el("rho_1")}, el("rho"));
}

}  // namespace

const OracleDescriptor* Catalog::find(const std::string& name_or_symbol) const {
  for (const auto& o : oracles)
    if (o.name == name_or_symbol || o.symbol == name_or_symbol) return &o;
  return nullptr;
}

Catalog canonical_catalog() {
  Catalog cat;
  auto add = [&cat](OracleDescriptor o) {
    for (const auto& existing : cat.oracles)
      if (existing.name == o.name)
        throw std::invalid_argument("duplicate oracle name: " + o.name);
    cat.oracles.push_back(std::move(o));
  };

  const auto stateless = StateDescriptor::stateless();
  const auto budget = StateDescriptor::query_budget(kDefaultQueryBudget);

  add(make("parameters", "O_M", Category::Model, echo_pair(el("theta_M")), stateless));
  add(make("scores", "O_S", Category::Model, echo_pair(el("M(x)")), budget));
  add(make("labels", "O_L", Category::Model, echo_pair(el("argmax(M(x))")), budget));
  add(make("architecture", "O_A", Category::Model, echo_pair(el("phi_M")), stateless));
  add(make("possible_architectures", "O_SPA", Category::Model,
           echo_pair(arch_uncertainty()), stateless));

  add(make("training_data", "O_D", Category::Data, echo_pair(el("D_train")), stateless));
  add(make("same_distribution", "O_D'", Category::Data, echo_pair(el("D_prime")), stateless));
  add(make("other_data", "O_E", Category::Data, echo_pair(el("E_other")), stateless));

  add(make("train", "O_Train", Category::Training, echo_pair(el("Train")), stateless));
  add(make("training_function", "O_T_tf", Category::Training,
           echo_pair(train_condition({"Train", "Train'_ce_sgd_1"})), stateless));
  add(make("loss_function", "O_T_loss", Category::Training,
           echo_pair(train_condition({"Train", "Train'_ce_sgd_1",
                                      "Train'_ce_adam_0", "Train'_ce_adam_1"})),
           stateless));
  add(make("optimizer", "O_T_opt", Category::Training,
           echo_pair(train_condition({"Train", "Train'_ce_sgd_1",
                                      "Train'_hinge_sgd_0", "Train'_hinge_sgd_1"})),
           stateless));

  add(make("full_awareness", "O_FA", Category::Defense,
           InfoTerm::tuple({el("rho"), el("varrho"), el("x")}), stateless));
  add(make("partial_awareness", "O_PA", Category::Defense,
           InfoTerm::tuple({el("rho"), defense_params_uncertainty(), el("x")}),
           stateless));
  add(make("set_of_possible_defenses", "O_SPD", Category::Defense,
           InfoTerm::tuple({defense_algo_uncertainty(),
                            defense_params_uncertainty(), el("x")}),
           stateless));
  return cat;
}

DerivationRegistry default_registry() { return DerivationRegistry::with_defaults(); }

std::vector<OracleDescriptor> combine_closure(std::vector<OracleDescriptor> base,
                                              const DerivationRegistry& reg) {
  auto has_name = [&base](const std::string& name) {
    return std::any_of(base.begin(), base.end(),
                       [&name](const OracleDescriptor& o) { return o.name == name; });
  };
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<OracleDescriptor> snapshot = base;
    std::sort(snapshot.begin(), snapshot.end(),
              [](const OracleDescriptor& a, const OracleDescriptor& b) {
                return a.name < b.name;
              });
    for (std::size_t i = 0; i < snapshot.size(); ++i) {
      for (std::size_t j = i + 1; j < snapshot.size(); ++j) {
        if (compare(snapshot[i], snapshot[j], reg) != Relation::Incomparable)
          continue;
        OracleDescriptor joint = combine(snapshot[i], snapshot[j], reg);
        if (has_name(joint.name)) continue;
        base.push_back(std::move(joint));
        grew = true;
      }
    }
  }
  return base;
}

std::vector<OracleDescriptor> category_catalog(Category c,
                                               const DerivationRegistry& reg) {
  const Catalog cat = canonical_catalog();
  auto pick = [&cat](const char* name) { return *cat.find(name); };

  switch (c) {
    case Category::Model: {
      std::vector<OracleDescriptor> out{
          pick("parameters"), pick("scores"), pick("labels"),
          pick("architecture"), pick("possible_architectures")};
      out.push_back(combine(pick("architecture"), pick("scores"), reg));
      out.push_back(combine(pick("architecture"), pick("labels"), reg));
      out.push_back(combine(pick("possible_architectures"), pick("scores"), reg));
      out.push_back(combine(pick("possible_architectures"), pick("labels"), reg));
      return out;
    }
    case Category::Data:
      return combine_closure(
          {pick("training_data"), pick("same_distribution"), pick("other_data")},
          reg);
    case Category::Training:
      return {pick("train"), pick("training_function"), pick("loss_function"),
              pick("optimizer")};
    case Category::Defense:
      return {pick("full_awareness"), pick("partial_awareness"),
              pick("set_of_possible_defenses")};
    default:
      throw std::invalid_argument("no diagram for category: " +
                                  std::string(category_name(c)));
  }
}

OracleDescriptor resolve_oracle(const Catalog& cat, const std::string& name,
                                const DerivationRegistry& reg) {
  std::string wanted = name;
  if (wanted == "loss_and_optimizer") wanted = "loss_function&optimizer";

  if (const OracleDescriptor* o = cat.find(wanted)) return *o;
  if (wanted.find('&') == std::string::npos)
    throw std::invalid_argument("unknown oracle: " + name);

  std::vector<std::string> parts;
  std::stringstream ss(wanted);
  std::string part;
  while (std::getline(ss, part, '&'))
    if (!part.empty()) parts.push_back(part);
  std::sort(parts.begin(), parts.end());
  std::optional<OracleDescriptor> acc;
  for (const auto& p : parts) {
    const OracleDescriptor* o = cat.find(p);
    if (!o) throw std::invalid_argument("unknown oracle: " + p);
    acc = acc ? combine(*acc, *o, reg) : *o;
  }
  return *acc;
}

Relation compare_threat_models(const ThreatModel& a, const ThreatModel& b,
                               const Catalog& cat, const DerivationRegistry& reg) {
  auto one = [&](const std::optional<std::string>& oa,
                 const std::optional<std::string>& ob) {
    if (!oa && !ob) return Relation::Equivalent;
    if (oa && !ob) return Relation::Dominates;     // any knowledge beats none
    if (!oa && ob) return Relation::DominatedBy;
    return compare(resolve_oracle(cat, *oa, reg), resolve_oracle(cat, *ob, reg),
                   reg);
  };

  const Relation rs[4] = {one(a.model_info, b.model_info),
                          one(a.data_info, b.data_info),
                          one(a.training_info, b.training_info),
                          one(a.defense_info, b.defense_info)};
  bool any_dom = false, any_sub = false;
  for (Relation r : rs) {
    if (r == Relation::Incomparable) return Relation::Incomparable;
    if (r == Relation::Dominates) any_dom = true;
    if (r == Relation::DominatedBy) any_sub = true;
  }
  if (any_dom && any_sub) return Relation::Incomparable;
  if (any_dom) return Relation::Dominates;
  if (any_sub) return Relation::DominatedBy;
  return Relation::Equivalent;
}

std::vector<std::pair<std::string, ThreatModel>> pgd_showcase_models() {
  std::vector<std::pair<std::string, ThreatModel>> out;
  out.push_back({"pgd_1",
                 ThreatModel{"parameters", std::nullopt, "loss_function",
                             std::nullopt}});
  out.push_back({"pgd_2",
                 ThreatModel{"parameters", std::nullopt, std::nullopt,
                             "full_awareness"}});
  out.push_back({"pgd_3",
                 ThreatModel{"architecture&scores", "training_data", "train",
                             "full_awareness"}});
  out.push_back({"pgd_4",
                 ThreatModel{"architecture&scores", "training_data", "train",
                             std::nullopt}});
  out.push_back({"pgd_5",
                 ThreatModel{"possible_architectures", "training_data", "train",
                             "full_awareness"}});
  return out;
}

}  // namespace advk
