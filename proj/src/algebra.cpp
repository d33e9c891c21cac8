#include "reflex/algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace reflex::algebra {

std::shared_ptr<const UniversalSet> UniversalSet::make(std::vector<std::string> actions) {
  if (actions.empty() || actions.size() > kMaxActions) {
    throw AlgebraError("universal set must contain between 1 and 16 actions, got " +
                       std::to_string(actions.size()));
  }
  std::set<std::string> seen;
  for (const auto& name : actions) {
    if (name.empty()) {
      throw AlgebraError("universal set action names must be non-empty");
    }
    if (!seen.insert(name).second) {
      throw AlgebraError("duplicate action name '" + name + "' in universal set");
    }
  }
  return std::shared_ptr<const UniversalSet>(new UniversalSet(std::move(actions)));
}

std::optional<std::size_t> UniversalSet::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < actions_.size(); ++i) {
    if (actions_[i] == name) return i;
  }
  return std::nullopt;
}

bool same_universe(const UniversePtr& a, const UniversePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->actions() == b->actions();
}

namespace {

void require_same_universe(const ActionSet& a, const ActionSet& b, const char* op) {
  if (!same_universe(a.universe(), b.universe())) {
    throw AlgebraError(std::string(op) + ": incompatible universes (left has " +
                       std::to_string(a.universe()->size()) + " actions, right has " +
                       std::to_string(b.universe()->size()) + ")");
  }
}

}  // namespace

ActionSet::ActionSet(UniversePtr universe, std::uint32_t mask)
    : universe_(std::move(universe)), mask_(mask) {
  if (!universe_) throw AlgebraError("action set requires a universe");
  if ((mask_ & ~universe_->full_mask()) != 0) {
    throw AlgebraError("action set mask has bits outside the universe");
  }
}

ActionSet ActionSet::full(UniversePtr universe) {
  const std::uint32_t mask = universe->full_mask();
  return ActionSet(std::move(universe), mask);
}

ActionSet ActionSet::of(UniversePtr universe, const std::vector<std::string>& names) {
  std::uint32_t mask = 0;
  for (const auto& name : names) {
    const auto idx = universe->index_of(name);
    if (!idx) throw AlgebraError("unknown action '" + name + "'");
    mask |= (1u << *idx);
  }
  return ActionSet(std::move(universe), mask);
}

bool ActionSet::contains(std::string_view name) const {
  const auto idx = universe_->index_of(name);
  return idx && (mask_ & (1u << *idx)) != 0;
}

bool ActionSet::subset_of(const ActionSet& other) const {
  require_same_universe(*this, other, "subset_of");
  return (mask_ & ~other.mask_) == 0;
}

std::vector<std::string> ActionSet::members() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < universe_->size(); ++i) {
    if (mask_ & (1u << i)) out.push_back(universe_->actions()[i]);
  }
  return out;
}

std::string ActionSet::to_string() const {
  if (is_full()) return "1";
  if (is_empty()) return "0";
  std::string out = "{";
  bool first = true;
  for (const auto& name : members()) {
    if (!first) out += ",";
    out += name;
    first = false;
  }
  out += "}";
  return out;
}

ActionSet meet(const ActionSet& a, const ActionSet& b) {
  require_same_universe(a, b, "meet");
  return ActionSet(a.universe(), a.mask() & b.mask());
}

ActionSet join(const ActionSet& a, const ActionSet& b) {
  require_same_universe(a, b, "join");
  return ActionSet(a.universe(), a.mask() | b.mask());
}

ActionSet complement(const ActionSet& a) {
  return ActionSet(a.universe(), a.universe()->full_mask() & ~a.mask());
}

ActionSet exp_op(const ActionSet& p, const ActionSet& w) {
  require_same_universe(p, w, "exp_op");
  return join(p, complement(w));
}

std::vector<ActionSet> all_elements(const UniversePtr& universe) {
  std::vector<ActionSet> out;
  out.reserve(universe->element_count());
  for (std::uint32_t mask = 0; mask <= universe->full_mask(); ++mask) {
    out.emplace_back(universe, mask);
  }
  return out;
}

}  // namespace reflex::algebra
