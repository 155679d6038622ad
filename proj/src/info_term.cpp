#include "advk/info_term.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace advk {

InfoTerm InfoTerm::element(std::string id) {
  if (id.empty()) throw std::invalid_argument("element id must be nonempty");
  InfoTerm t;
  t.kind_ = Kind::Element;
  t.id_ = std::move(id);
  return t;
}

InfoTerm InfoTerm::tuple(std::vector<InfoTerm> items) {
  InfoTerm t;
  t.kind_ = Kind::Tuple;
  t.children_ = std::move(items);
  return t;
}

InfoTerm InfoTerm::candidates(std::vector<InfoTerm> members,
                              const InfoTerm& distinguished) {
  if (members.empty())
    throw std::invalid_argument("candidates set must be nonempty");
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  InfoTerm t;
  t.kind_ = Kind::Candidates;
  t.children_ = std::move(members);
  auto it = std::find(t.children_.begin(), t.children_.end(), distinguished);
  if (it == t.children_.end())
    throw std::invalid_argument("distinguished value must be a member: " +
                                distinguished.to_string());
  t.distinguished_ = static_cast<std::size_t>(it - t.children_.begin());
  return t;
}

const std::string& InfoTerm::id() const {
  if (!is_element()) throw std::logic_error("id() on non-element term");
  return id_;
}

const std::vector<InfoTerm>& InfoTerm::items() const {
  if (!is_tuple()) throw std::logic_error("items() on non-tuple term");
  return children_;
}

const std::vector<InfoTerm>& InfoTerm::members() const {
  if (!is_candidates()) throw std::logic_error("members() on non-set term");
  return children_;
}

const InfoTerm& InfoTerm::distinguished() const {
  if (!is_candidates())
    throw std::logic_error("distinguished() on non-set term");
  return children_[distinguished_];
}

bool InfoTerm::operator==(const InfoTerm& other) const {
  if (kind_ != other.kind_) return false;
  if (kind_ == Kind::Element) return id_ == other.id_;
  return children_ == other.children_;
}

bool InfoTerm::operator<(const InfoTerm& other) const {
  if (kind_ != other.kind_) return kind_ < other.kind_;
  if (kind_ == Kind::Element) return id_ < other.id_;
  return children_ < other.children_;
}

std::string InfoTerm::to_string() const {
  switch (kind_) {
    case Kind::Element:
      return id_;
    case Kind::Tuple: {
      std::string s = "[";
      for (std::size_t i = 0; i < children_.size(); ++i) {
        if (i) s += ", ";
        s += children_[i].to_string();
      }
      return s + "]";
    }
    case Kind::Candidates: {
      std::string s = "{";
      for (std::size_t i = 0; i < children_.size(); ++i) {
        if (i) s += ", ";
        s += children_[i].to_string();
      }
      return s + "}";
    }
  }
  return "";
}

void DerivationRegistry::add_axiom(std::string from, std::string to,
                                   std::string justification) {
  if (from.empty() || to.empty())
    throw std::invalid_argument("axiom endpoints must be nonempty");
  edges_[from].insert(to);
  axioms_.push_back({std::move(from), std::move(to), std::move(justification)});
}

void DerivationRegistry::mark_public(std::string id) {
  public_.insert(std::move(id));
}

bool DerivationRegistry::derives(const std::string& from,
                                 const std::string& to) const {
  if (from == to) return true;
  if (public_.count(to)) return true;
  std::set<std::string> seen{from};
  std::deque<std::string> queue{from};
  while (!queue.empty()) {
    const std::string cur = queue.front();
    queue.pop_front();
    auto it = edges_.find(cur);
    if (it == edges_.end()) continue;
    for (const auto& next : it->second) {
      if (next == to) return true;
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return false;
}

DerivationRegistry DerivationRegistry::with_defaults() {
  DerivationRegistry reg;
  reg.mark_public("x");
  reg.add_axiom("theta_M", "M(x)",
                "parameters let the holder run the network on any input");
  reg.add_axiom("theta_M", "phi_M", "parameters fix the architecture");
  reg.add_axiom("M(x)", "argmax(M(x))", "scores give away the top label");
  // The original training function and every same-component stand-in expose
  // the pieces they share with it.
  const char* same_loss[] = {"Train", "Train'_ce_sgd_1", "Train'_ce_adam_0",
                             "Train'_ce_adam_1"};
  for (const char* f : same_loss)
    reg.add_axiom(f, "L_ce", "a training function contains its loss");
  const char* same_opt[] = {"Train", "Train'_ce_sgd_1", "Train'_hinge_sgd_0",
                            "Train'_hinge_sgd_1"};
  for (const char* f : same_opt)
    reg.add_axiom(f, "Opt_sgd", "a training function contains its optimizer");
  return reg;
}

}  // namespace advk
