#include "advk/oracle.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace advk {

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::Dominates: return "DOMINATES";
    case Relation::DominatedBy: return "DOMINATED_BY";
    case Relation::Equivalent: return "EQUIVALENT";
    case Relation::Incomparable: return "INCOMPARABLE";
  }
  return "?";
}

Relation flip(Relation r) {
  switch (r) {
    case Relation::Dominates: return Relation::DominatedBy;
    case Relation::DominatedBy: return Relation::Dominates;
    default: return r;
  }
}

const char* category_name(Category c) {
  switch (c) {
    case Category::Model: return "model";
    case Category::Data: return "data";
    case Category::Training: return "training";
    case Category::Defense: return "defense";
    case Category::Input: return "input";
    case Category::Distinguisher: return "distinguisher";
    case Category::Mixed: return "mixed";
  }
  return "?";
}

StateDescriptor StateDescriptor::query_budget(long k) {
  if (k < 0) throw std::invalid_argument("query budget must be non-negative");
  StateDescriptor s;
  s.kind = Kind::QueryBudget;
  s.budget = k;
  return s;
}

StateDescriptor StateDescriptor::pair(StateDescriptor a, StateDescriptor b) {
  StateDescriptor s;
  s.kind = Kind::Pair;
  s.parts.push_back(std::move(a));
  s.parts.push_back(std::move(b));
  return s;
}

bool element_derives(const InfoTerm& from, const InfoTerm& to,
                     const DerivationRegistry& reg) {
  if (!from.is_element() || !to.is_element())
    throw std::invalid_argument("element_derives expects two elements");
  return reg.derives(from.id(), to.id());
}

bool term_dominates(const InfoTerm& x, const InfoTerm& y,
                    const DerivationRegistry& reg) {
  if (x.is_tuple()) {
    if (y.is_tuple()) {
      for (const auto& yi : y.items()) {
        bool covered = false;
        for (const auto& xj : x.items()) {
          if (term_dominates(xj, yi, reg)) { covered = true; break; }
        }
        if (!covered) return false;
      }
      return true;
    }
    for (const auto& xj : x.items())
      if (term_dominates(xj, y, reg)) return true;
    return false;
  }
  if (y.is_tuple()) {
    for (const auto& yi : y.items())
      if (!term_dominates(x, yi, reg)) return false;
    return true;
  }
  if (y.is_candidates()) {
    if (x.is_element()) {
      for (const auto& m : y.members())
        if (term_dominates(x, m, reg)) return true;
      return false;
    }
    for (const auto& c : x.members()) {
      bool covered = false;
      for (const auto& m : y.members()) {
        if (term_dominates(c, m, reg)) { covered = true; break; }
      }
      if (!covered) return false;
    }
    return true;
  }
  // y is an element
  if (x.is_element()) return element_derives(x, y, reg);
  for (const auto& c : x.members())
    if (!term_dominates(c, y, reg)) return false;
  return true;
}

Relation compare(const OracleDescriptor& a, const OracleDescriptor& b,
                 const DerivationRegistry& reg) {
  const bool ab = term_dominates(a.output, b.output, reg);
  const bool ba = term_dominates(b.output, a.output, reg);
  if (ab && ba) return Relation::Equivalent;
  if (ab) return Relation::Dominates;
  if (ba) return Relation::DominatedBy;
  return Relation::Incomparable;
}

namespace {

std::vector<std::string> split_name(const std::string& name) {
  std::vector<std::string> parts;
  std::stringstream ss(name);
  std::string part;
  while (std::getline(ss, part, '&'))
    if (!part.empty()) parts.push_back(part);
  return parts;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += sep;
    s += parts[i];
  }
  return s;
}

std::string strip_symbol(const std::string& symbol) {
  // "O_S" -> "S", "O_{A&S}" -> "A&S"
  std::string s = symbol;
  if (s.rfind("O_", 0) == 0) s = s.substr(2);
  if (s.size() >= 2 && s.front() == '{' && s.back() == '}')
    s = s.substr(1, s.size() - 2);
  return s;
}

}  // namespace

OracleDescriptor combine(const OracleDescriptor& a, const OracleDescriptor& b,
                         const DerivationRegistry& reg) {
  switch (compare(a, b, reg)) {
    case Relation::Dominates:
    case Relation::Equivalent:
      return a;
    case Relation::DominatedBy:
      return b;
    case Relation::Incomparable:
      break;
  }
  std::set<std::string> name_parts;
  for (const auto& p : split_name(a.name)) name_parts.insert(p);
  for (const auto& p : split_name(b.name)) name_parts.insert(p);
  std::set<std::string> symbol_parts;
  for (const auto& p : split_name(strip_symbol(a.symbol))) symbol_parts.insert(p);
  for (const auto& p : split_name(strip_symbol(b.symbol))) symbol_parts.insert(p);

  OracleDescriptor joint;
  joint.name = join({name_parts.begin(), name_parts.end()}, "&");
  joint.symbol = "O_{" + join({symbol_parts.begin(), symbol_parts.end()}, "&") + "}";
  joint.category = a.category == b.category ? a.category : Category::Mixed;
  joint.output = InfoTerm::tuple({a.output, b.output});
  joint.state = StateDescriptor::pair(a.state, b.state);
  return joint;
}

InfoTerm substitute_placeholder(const InfoTerm& t, const std::string& id,
                                const InfoTerm& value) {
  switch (t.kind()) {
    case InfoTerm::Kind::Element:
      return t.id() == id ? value : t;
    case InfoTerm::Kind::Tuple: {
      std::vector<InfoTerm> items;
      items.reserve(t.items().size());
      for (const auto& it : t.items())
        items.push_back(substitute_placeholder(it, id, value));
      return InfoTerm::tuple(std::move(items));
    }
    case InfoTerm::Kind::Candidates: {
      std::vector<InfoTerm> members;
      members.reserve(t.members().size());
      for (const auto& m : t.members())
        members.push_back(substitute_placeholder(m, id, value));
      return InfoTerm::candidates(std::move(members),
                                  substitute_placeholder(t.distinguished(), id, value));
    }
  }
  return t;
}

}  // namespace advk
