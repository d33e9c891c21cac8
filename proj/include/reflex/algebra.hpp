#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace reflex::algebra {

/// Raised on incompatible universes, unbound variables and malformed
/// expression or set-literal text.
class AlgebraError : public std::runtime_error {
public:
  explicit AlgebraError(const std::string& what) : std::runtime_error(what) {}
};

/// Ordered list of distinct action names. Immutable and shared; the induced
/// Boolean algebra of subsets has exactly 2^size() elements.
class UniversalSet {
public:
  static constexpr std::size_t kMaxActions = 16;

  /// Validates: 1..16 actions, names non-empty and unique.
  static std::shared_ptr<const UniversalSet> make(std::vector<std::string> actions);

  std::size_t size() const { return actions_.size(); }
  const std::vector<std::string>& actions() const { return actions_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::uint32_t full_mask() const {
    return static_cast<std::uint32_t>((1u << actions_.size()) - 1u);
  }
  std::size_t element_count() const { return std::size_t{1} << actions_.size(); }

private:
  explicit UniversalSet(std::vector<std::string> actions) : actions_(std::move(actions)) {}
  std::vector<std::string> actions_;
};

using UniversePtr = std::shared_ptr<const UniversalSet>;

/// True when the two handles denote the same algebra (same object or equal
/// action lists).
bool same_universe(const UniversePtr& a, const UniversePtr& b);

/// A subset of a UniversalSet; the value domain of every subject variable.
/// Prints as "1" (full set), "0" (empty set) or "{name,...}".
class ActionSet {
public:
  ActionSet(UniversePtr universe, std::uint32_t mask);

  static ActionSet empty(UniversePtr universe) { return ActionSet(std::move(universe), 0u); }
  static ActionSet full(UniversePtr universe);
  /// Builds a set from member names; unknown names raise AlgebraError.
  static ActionSet of(UniversePtr universe, const std::vector<std::string>& names);

  const UniversePtr& universe() const { return universe_; }
  std::uint32_t mask() const { return mask_; }
  bool is_empty() const { return mask_ == 0; }
  bool is_full() const { return mask_ == universe_->full_mask(); }
  bool contains(std::string_view name) const;
  bool subset_of(const ActionSet& other) const;
  std::vector<std::string> members() const;
  std::string to_string() const;

  friend bool operator==(const ActionSet& a, const ActionSet& b) {
    return same_universe(a.universe_, b.universe_) && a.mask_ == b.mask_;
  }
  friend bool operator!=(const ActionSet& a, const ActionSet& b) { return !(a == b); }

private:
  UniversePtr universe_;
  std::uint32_t mask_;
};

/// Set intersection (the alliance operation). Universes must match.
ActionSet meet(const ActionSet& a, const ActionSet& b);
/// Set union (the conflict operation). Universes must match.
ActionSet join(const ActionSet& a, const ActionSet& b);
/// Universe minus the set; an involution.
ActionSet complement(const ActionSet& a);
/// The exponential operation: exp_op(P, W) = join(P, complement(W)).
/// Equals 1 whenever W is a subset of P.
ActionSet exp_op(const ActionSet& p, const ActionSet& w);

inline ActionSet operator&(const ActionSet& a, const ActionSet& b) { return meet(a, b); }
inline ActionSet operator|(const ActionSet& a, const ActionSet& b) { return join(a, b); }
inline ActionSet operator~(const ActionSet& a) { return complement(a); }

/// All 2^n subsets in binary counting order over the action order
/// (bit k of the counter = membership of action k). Order is stable.
std::vector<ActionSet> all_elements(const UniversePtr& universe);

/// Immutable expression tree over subject variables: Var | Const | Meet |
/// Join | Complement. Copies are cheap (shared nodes). Expressions are never
/// simplified; all semantics flow through eval().
class Expr {
public:
  enum class Kind { Var, Const, Meet, Join, Complement };

  static Expr var(std::string id);
  static Expr constant(ActionSet value);
  static Expr meet(Expr lhs, Expr rhs);
  static Expr join(Expr lhs, Expr rhs);
  static Expr complement(Expr operand);

  Kind kind() const;
  const std::string& var_id() const;      // pre: kind() == Var
  const ActionSet& const_value() const;   // pre: kind() == Const
  const Expr& lhs() const;                // pre: Meet or Join
  const Expr& rhs() const;                // pre: Meet or Join
  const Expr& operand() const;            // pre: Complement

  /// Distinct variable ids, sorted lexicographically.
  std::vector<std::string> variables() const;

  /// Compact rendering: juxtaposition for meets of single-letter vars,
  /// '*' otherwise, '+' for joins, '~' for complements.
  std::string to_string() const;

private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

using Assignment = std::map<std::string, ActionSet>;

/// Bottom-up evaluation; every Var must be bound or an AlgebraError naming
/// the missing subject is raised.
ActionSet eval(const Expr& expr, const Assignment& assignment);

/// True iff the two expressions evaluate identically on every assignment of
/// the given subjects over the full (2^n)^k grid.
bool equivalent(const Expr& a, const Expr& b, const std::vector<std::string>& subjects,
                const UniversePtr& universe);

/// Parses a set literal: "1", "0" or "{name,name,...}".
ActionSet parse_set(std::string_view text, const UniversePtr& universe);

/// Parses the textual expression syntax: juxtaposition or '*' for meet,
/// '+' for join, '~' for complement, parentheses, set literals. Runs of
/// letters are segmented into the declared subject ids (longest match
/// first), so "ab+c" reads as meet(a,b) joined with c.
Expr parse_expr(std::string_view text, const std::vector<std::string>& subjects,
                const UniversePtr& universe);

}  // namespace reflex::algebra
