#pragma once

#include <string>
#include <vector>

#include "advk/info_term.hpp"

namespace advk {

enum class Relation { Dominates, DominatedBy, Equivalent, Incomparable };

const char* relation_name(Relation r);
Relation flip(Relation r);

enum class Category { Model, Data, Training, Defense, Input, Distinguisher, Mixed };

const char* category_name(Category c);

struct StateDescriptor {
  enum class Kind { Stateless, QueryBudget, Pair };

  Kind kind = Kind::Stateless;
  long budget = 0;                      // QueryBudget only
  std::vector<StateDescriptor> parts;   // Pair only

  static StateDescriptor stateless() { return {}; }
  static StateDescriptor query_budget(long k);
  static StateDescriptor pair(StateDescriptor a, StateDescriptor b);
};

struct OracleDescriptor {
  std::string name;    // canonical token, e.g. "scores"; joint oracles use "a&b" with parts sorted
  std::string symbol;  // display form, e.g. "O_S"
  Category category = Category::Model;
  InfoTerm output = InfoTerm::element("x");  // reply template; Element "x" is the echoed query
  StateDescriptor state;
};

// True when the element `from` can be turned into the element `to` by a
// registered derivation (reflexive-transitive closure). Both terms must be
// elements.
bool element_derives(const InfoTerm& from, const InfoTerm& to,
                     const DerivationRegistry& reg);

// True when holding `x` is at least as strong as holding `y`:
//   - tuple vs tuple: every part of y is covered by some part of x
//   - tuple vs rest: one part of x suffices
//   - rest vs tuple: x alone must cover every part of y
//   - element vs set: pinning any member beats the whole uncertainty set
//   - set vs set: x must be at least as narrow as y (member-wise coverage)
//   - set vs element: every candidate in x must yield the element
//   - element vs element: registered derivation
bool term_dominates(const InfoTerm& x, const InfoTerm& y,
                    const DerivationRegistry& reg);

// Order between two oracles by the strength of their reply templates. State
// is deliberately ignored: oracles differing only in query budget are
// Equivalent.
Relation compare(const OracleDescriptor& a, const OracleDescriptor& b,
                 const DerivationRegistry& reg);

// Joint oracle replying with both replies side by side. If one operand
// already dominates the other (or they are equivalent), that operand is
// returned unchanged.
OracleDescriptor combine(const OracleDescriptor& a, const OracleDescriptor& b,
                         const DerivationRegistry& reg);

// Replaces every Element with the given id by `value`.
InfoTerm substitute_placeholder(const InfoTerm& t, const std::string& id,
                                const InfoTerm& value);

}  // namespace advk
