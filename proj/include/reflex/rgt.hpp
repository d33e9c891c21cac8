#pragma once

#include "reflex/algebra.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace reflex::rgt {

class RgtError : public std::runtime_error {
public:
  explicit RgtError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised by graph_to_polynomial when neither the alliance nor the conflict
/// restriction disconnects some component of size >= 2.
class NotDecomposableError : public RgtError {
public:
  explicit NotDecomposableError(const std::string& what) : RgtError(what) {}
};

enum class Relation { Alliance, Conflict };

std::string to_string(Relation r);
Relation relation_from_string(std::string_view text);

/// Fully connected graph over >= 2 subjects with a symmetric
/// Alliance/Conflict label on every unordered pair.
class RelationshipGraph {
public:
  explicit RelationshipGraph(std::vector<std::string> subjects);

  void set_relation(const std::string& u, const std::string& v, Relation r);
  Relation relation(const std::string& u, const std::string& v) const;
  bool complete() const;
  /// Names the first unlabeled pair, for diagnostics.
  std::optional<std::pair<std::string, std::string>> first_missing_pair() const;

  const std::vector<std::string>& subjects() const { return subjects_; }
  std::size_t subject_index(const std::string& id) const;

  friend bool operator==(const RelationshipGraph&, const RelationshipGraph&) = default;

private:
  std::vector<std::string> subjects_;
  std::map<std::pair<std::string, std::string>, Relation> relation_;  // key ordered (min,max)
};

/// Recursive decomposition of the graph into its polynomial: components of
/// the alliance restriction combine with join (conflict separates them),
/// components of the conflict restriction combine with meet. Throws
/// NotDecomposableError when stuck. Every 3-subject graph succeeds.
algebra::Expr graph_to_polynomial(const RelationshipGraph& g);

enum class Combinator { Leaf, Product, Sum };

/// Node of the polynomial stratification tree. Leaves hold single variables;
/// recombining any node's children under meet (Product) or join (Sum) gives
/// an expression equivalent to the node's polynomial.
struct StratNode {
  algebra::Expr polynomial;
  Combinator combinator;
  std::vector<StratNode> children;
};

/// Splits a complement-free meet/join polynomial into its unique tree, down
/// to single-variable leaves. Const or Complement nodes are rejected.
StratNode stratify(const algebra::Expr& poly);

/// Folds the diagonal form bottom-up: fold(leaf x) = x, and for inner nodes
/// join(P, complement(combined children)), the exponential operation of the
/// calculus. The result is equivalent to the original polynomial.
algebra::Expr fold_diagonal(const StratNode& tree);

/// Shannon cofactors of the folded polynomial at one subject:
/// on_one = folded[subject := 1], on_zero = folded[subject := 0], both under
/// the given incoming influences. The decision equation reads
///   subject = on_one * subject + on_zero * ~subject.
struct CanonicalCoefficients {
  std::string subject;
  algebra::ActionSet on_one;   // coefficient of the subject variable
  algebra::ActionSet on_zero;  // coefficient of its complement
};

CanonicalCoefficients canonical_coefficients(const algebra::Expr& folded,
                                             const std::string& subject,
                                             const std::map<std::string, algebra::ActionSet>& influences);

/// Either a choice interval [lower, upper] in the subset lattice, or
/// frustration (no solution).
class DecisionResult {
public:
  static DecisionResult interval(algebra::ActionSet lower, algebra::ActionSet upper);
  static DecisionResult frustration();

  bool frustrated() const { return !lower_.has_value(); }
  const algebra::ActionSet& lower() const;
  const algebra::ActionSet& upper() const;
  bool is_point() const { return !frustrated() && *lower_ == *upper_; }

  friend bool operator==(const DecisionResult&, const DecisionResult&) = default;

private:
  DecisionResult() = default;
  std::optional<algebra::ActionSet> lower_;
  std::optional<algebra::ActionSet> upper_;
};

/// Interval [on_zero, on_one] when on_zero is a subset of on_one, otherwise
/// frustration.
DecisionResult solve_decision(const CanonicalCoefficients& c);

/// Every set S with lower <= S <= upper, in counting order. Frustration
/// input raises RgtError.
std::vector<algebra::ActionSet> interval_members(const DecisionResult& r);

/// Off-diagonal map (row, column) -> influence of row subject on column
/// subject. The diagonal is storage-free: it stands for the subject's own
/// variable, and reading it is an error.
class InfluenceMatrix {
public:
  explicit InfluenceMatrix(std::vector<std::string> subjects);

  void set(const std::string& from, const std::string& to, algebra::ActionSet value);
  const algebra::ActionSet& get(const std::string& from, const std::string& to) const;
  bool complete() const;

  /// Influences received by the subject: column entries keyed by sender.
  std::map<std::string, algebra::ActionSet> column(const std::string& subject) const;

  const std::vector<std::string>& subjects() const { return subjects_; }

  friend bool operator==(const InfluenceMatrix&, const InfluenceMatrix&) = default;

private:
  std::vector<std::string> subjects_;
  std::map<std::pair<std::string, std::string>, algebra::ActionSet> cells_;
};

/// Decision of every subject under the given influences.
std::map<std::string, DecisionResult> forward_task(const algebra::Expr& folded,
                                                   const InfluenceMatrix& m);

/// One joint influence on the controlled subject: values for every other
/// subject of the polynomial.
using InfluenceTuple = std::map<std::string, algebra::ActionSet>;

/// All joint influences of the other subjects that collapse the controlled
/// subject's interval to exactly the target (both Shannon cofactors equal
/// the target). Tuples are enumerated with each coordinate running from the
/// full set down to the empty set, first subject most significant; an empty
/// result is valid.
std::vector<InfluenceTuple> inverse_task(const algebra::Expr& folded,
                                         const std::string& controlled,
                                         const algebra::ActionSet& target);

}  // namespace reflex::rgt
