#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace advk {

// Symbolic piece of information an oracle hands to an attacker. Three shapes:
//   Element     opaque identifier, e.g. "theta_M" or "M(x)"
//   Tuple       ordered list; a larger tuple is a stronger collection
//   Candidates  finite unordered set holding exactly one true value among
//               decoys; a larger set means more uncertainty, hence weaker
class InfoTerm {
 public:
  enum class Kind { Element, Tuple, Candidates };

  static InfoTerm element(std::string id);
  static InfoTerm tuple(std::vector<InfoTerm> items);
  // Members are deduplicated and stored sorted. `distinguished` marks the true
  // value; it must match exactly one member. The flag is carried as data but
  // is invisible to comparisons.
  static InfoTerm candidates(std::vector<InfoTerm> members,
                             const InfoTerm& distinguished);

  Kind kind() const { return kind_; }
  bool is_element() const { return kind_ == Kind::Element; }
  bool is_tuple() const { return kind_ == Kind::Tuple; }
  bool is_candidates() const { return kind_ == Kind::Candidates; }

  const std::string& id() const;               // Element only
  const std::vector<InfoTerm>& items() const;  // Tuple only
  const std::vector<InfoTerm>& members() const;  // Candidates only
  const InfoTerm& distinguished() const;         // Candidates only

  bool operator==(const InfoTerm& other) const;
  bool operator!=(const InfoTerm& other) const { return !(*this == other); }
  // Total order used for canonical member sorting.
  bool operator<(const InfoTerm& other) const;

  std::string to_string() const;

 private:
  InfoTerm() = default;

  Kind kind_ = Kind::Element;
  std::string id_;
  std::vector<InfoTerm> children_;
  std::size_t distinguished_ = 0;
};

// Decidable stand-in for "some efficient algorithm maps this element to that
// one". Derivability is the reflexive-transitive closure of the registered
// axioms, recomputed from them on every query so it can never go stale.
//
// Elements marked public are derivable from anything. The query echo "x" is
// public by default: every oracle reply in the catalog carries the query the
// caller already chose, so reproducing it never requires extra knowledge.
class DerivationRegistry {
 public:
  struct Axiom {
    std::string from;
    std::string to;
    std::string justification;
  };

  void add_axiom(std::string from, std::string to, std::string justification);
  void mark_public(std::string id);

  bool derives(const std::string& from, const std::string& to) const;
  bool is_public(const std::string& id) const { return public_.count(id) > 0; }
  const std::vector<Axiom>& axioms() const { return axioms_; }

  // Registry preloaded with the canonical derivations:
  //   theta_M -> M(x), theta_M -> phi_M, M(x) -> argmax(M(x)),
  //   Train and its same-component stand-ins -> their loss / optimizer parts,
  // plus "x" marked public.
  static DerivationRegistry with_defaults();

 private:
  std::vector<Axiom> axioms_;
  std::map<std::string, std::set<std::string>> edges_;
  std::set<std::string> public_;
};

}  // namespace advk
