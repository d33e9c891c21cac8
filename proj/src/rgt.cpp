#include "reflex/rgt.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace reflex::rgt {

using algebra::ActionSet;
using algebra::Expr;

std::string to_string(Relation r) { return r == Relation::Alliance ? "alliance" : "conflict"; }

Relation relation_from_string(std::string_view text) {
  if (text == "alliance") return Relation::Alliance;
  if (text == "conflict") return Relation::Conflict;
  throw RgtError("unknown relation label '" + std::string(text) +
                 "' (expected \"alliance\" or \"conflict\")");
}

RelationshipGraph::RelationshipGraph(std::vector<std::string> subjects)
    : subjects_(std::move(subjects)) {
  if (subjects_.size() < 2) throw RgtError("relationship graph needs at least 2 subjects");
  std::vector<std::string> sorted = subjects_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw RgtError("duplicate subject id in relationship graph");
  }
}

std::size_t RelationshipGraph::subject_index(const std::string& id) const {
  for (std::size_t i = 0; i < subjects_.size(); ++i) {
    if (subjects_[i] == id) return i;
  }
  throw RgtError("unknown subject '" + id + "'");
}

namespace {
std::pair<std::string, std::string> ordered_pair(const std::string& u, const std::string& v) {
  return u < v ? std::make_pair(u, v) : std::make_pair(v, u);
}
}  // namespace

void RelationshipGraph::set_relation(const std::string& u, const std::string& v, Relation r) {
  if (u == v) throw RgtError("subject '" + u + "' cannot relate to itself");
  subject_index(u);
  subject_index(v);
  relation_[ordered_pair(u, v)] = r;
}

Relation RelationshipGraph::relation(const std::string& u, const std::string& v) const {
  if (u == v) throw RgtError("no relation between '" + u + "' and itself");
  auto it = relation_.find(ordered_pair(u, v));
  if (it == relation_.end()) {
    throw RgtError("relation between '" + u + "' and '" + v + "' is not set");
  }
  return it->second;
}

bool RelationshipGraph::complete() const { return !first_missing_pair().has_value(); }

std::optional<std::pair<std::string, std::string>> RelationshipGraph::first_missing_pair() const {
  for (std::size_t i = 0; i < subjects_.size(); ++i) {
    for (std::size_t j = i + 1; j < subjects_.size(); ++j) {
      if (!relation_.count(ordered_pair(subjects_[i], subjects_[j]))) {
        return std::make_pair(subjects_[i], subjects_[j]);
      }
    }
  }
  return std::nullopt;
}

namespace {

// Connected components (by DFS in subject order) of the graph restricted to
// edges with the given label. Components come out ordered by their first
// subject's position.
std::vector<std::vector<std::string>> components(const RelationshipGraph& g,
                                                 const std::vector<std::string>& subjects,
                                                 Relation keep) {
  std::vector<std::vector<std::string>> out;
  std::vector<bool> visited(subjects.size(), false);
  for (std::size_t start = 0; start < subjects.size(); ++start) {
    if (visited[start]) continue;
    std::vector<std::string> comp;
    std::vector<std::size_t> stack{start};
    visited[start] = true;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      comp.push_back(subjects[i]);
      for (std::size_t j = 0; j < subjects.size(); ++j) {
        if (!visited[j] && g.relation(subjects[i], subjects[j]) == keep) {
          visited[j] = true;
          stack.push_back(j);
        }
      }
    }
    std::sort(comp.begin(), comp.end(), [&](const std::string& a, const std::string& b) {
      return g.subject_index(a) < g.subject_index(b);
    });
    out.push_back(std::move(comp));
  }
  return out;
}

Expr build_polynomial(const RelationshipGraph& g, const std::vector<std::string>& subjects) {
  if (subjects.size() == 1) return Expr::var(subjects[0]);

  // Conflict separates alliance components, so a disconnected alliance
  // restriction yields a sum; a disconnected conflict restriction yields a
  // product. Sum split first (at most one applies to a connected labeling).
  auto alliance_comps = components(g, subjects, Relation::Alliance);
  if (alliance_comps.size() >= 2) {
    Expr e = build_polynomial(g, alliance_comps[0]);
    for (std::size_t i = 1; i < alliance_comps.size(); ++i) {
      e = Expr::join(std::move(e), build_polynomial(g, alliance_comps[i]));
    }
    return e;
  }
  auto conflict_comps = components(g, subjects, Relation::Conflict);
  if (conflict_comps.size() >= 2) {
    Expr e = build_polynomial(g, conflict_comps[0]);
    for (std::size_t i = 1; i < conflict_comps.size(); ++i) {
      e = Expr::meet(std::move(e), build_polynomial(g, conflict_comps[i]));
    }
    return e;
  }
  std::ostringstream msg;
  msg << "relationship graph has no polynomial form: neither restriction disconnects {";
  for (std::size_t i = 0; i < subjects.size(); ++i) {
    msg << (i ? "," : "") << subjects[i];
  }
  msg << "}";
  throw NotDecomposableError(msg.str());
}

}  // namespace

Expr graph_to_polynomial(const RelationshipGraph& g) {
  if (auto missing = g.first_missing_pair()) {
    throw RgtError("relationship graph incomplete: pair (" + missing->first + "," +
                   missing->second + ") is unlabeled");
  }
  return build_polynomial(g, g.subjects());
}

namespace {

void collect_terms(const Expr& e, Expr::Kind op, std::vector<Expr>& out) {
  if (e.kind() == op) {
    collect_terms(e.lhs(), op, out);
    collect_terms(e.rhs(), op, out);
  } else {
    out.push_back(e);
  }
}

StratNode stratify_impl(const Expr& poly) {
  switch (poly.kind()) {
    case Expr::Kind::Var:
      return StratNode{poly, Combinator::Leaf, {}};
    case Expr::Kind::Const:
    case Expr::Kind::Complement:
      throw RgtError("stratify expects a complement-free meet/join polynomial over variables");
    case Expr::Kind::Join:
    case Expr::Kind::Meet: {
      const Expr::Kind op = poly.kind();
      std::vector<Expr> parts;
      collect_terms(poly, op, parts);
      StratNode node{poly, op == Expr::Kind::Join ? Combinator::Sum : Combinator::Product, {}};
      node.children.reserve(parts.size());
      for (const Expr& part : parts) {
        node.children.push_back(stratify_impl(part));
      }
      return node;
    }
  }
  throw RgtError("unreachable expression kind");
}

}  // namespace

StratNode stratify(const Expr& poly) { return stratify_impl(poly); }

Expr fold_diagonal(const StratNode& tree) {
  if (tree.combinator == Combinator::Leaf) return tree.polynomial;
  Expr combined = fold_diagonal(tree.children.front());
  for (std::size_t i = 1; i < tree.children.size(); ++i) {
    Expr next = fold_diagonal(tree.children[i]);
    combined = tree.combinator == Combinator::Product
                   ? Expr::meet(std::move(combined), std::move(next))
                   : Expr::join(std::move(combined), std::move(next));
  }
  return Expr::join(tree.polynomial, Expr::complement(std::move(combined)));
}

CanonicalCoefficients canonical_coefficients(
    const Expr& folded, const std::string& subject,
    const std::map<std::string, ActionSet>& influences) {
  algebra::UniversePtr universe;
  for (const auto& [id, value] : influences) {
    if (id == subject) continue;
    universe = value.universe();
    break;
  }
  if (!universe) throw RgtError("canonical form of '" + subject + "' needs at least one influence");

  algebra::Assignment assignment;
  for (const std::string& var : folded.variables()) {
    if (var == subject) continue;
    auto it = influences.find(var);
    if (it == influences.end()) {
      throw RgtError("missing influence on '" + subject + "' from '" + var + "'");
    }
    assignment.emplace(var, it->second);
  }
  assignment.emplace(subject, ActionSet::full(universe));
  ActionSet on_one = algebra::eval(folded, assignment);
  assignment.insert_or_assign(subject, ActionSet::empty(universe));
  ActionSet on_zero = algebra::eval(folded, assignment);
  return CanonicalCoefficients{subject, std::move(on_one), std::move(on_zero)};
}

DecisionResult DecisionResult::interval(ActionSet lower, ActionSet upper) {
  if (!lower.subset_of(upper)) {
    throw RgtError("decision interval requires lower <= upper");
  }
  DecisionResult r;
  r.lower_ = std::move(lower);
  r.upper_ = std::move(upper);
  return r;
}

DecisionResult DecisionResult::frustration() { return DecisionResult{}; }

const ActionSet& DecisionResult::lower() const {
  if (frustrated()) throw RgtError("frustrated decision has no interval");
  return *lower_;
}

const ActionSet& DecisionResult::upper() const {
  if (frustrated()) throw RgtError("frustrated decision has no interval");
  return *upper_;
}

DecisionResult solve_decision(const CanonicalCoefficients& c) {
  if (c.on_zero.subset_of(c.on_one)) {
    return DecisionResult::interval(c.on_zero, c.on_one);
  }
  return DecisionResult::frustration();
}

std::vector<ActionSet> interval_members(const DecisionResult& r) {
  if (r.frustrated()) throw RgtError("frustrated decision has no members");
  std::vector<ActionSet> out;
  for (const ActionSet& s : algebra::all_elements(r.lower().universe())) {
    if (r.lower().subset_of(s) && s.subset_of(r.upper())) out.push_back(s);
  }
  return out;
}

InfluenceMatrix::InfluenceMatrix(std::vector<std::string> subjects)
    : subjects_(std::move(subjects)) {
  if (subjects_.size() < 2) throw RgtError("influence matrix needs at least 2 subjects");
}

void InfluenceMatrix::set(const std::string& from, const std::string& to, ActionSet value) {
  if (from == to) {
    throw RgtError("influence matrix diagonal holds the subject's own variable; cell (" + from +
                   "," + to + ") cannot be written");
  }
  if (std::find(subjects_.begin(), subjects_.end(), from) == subjects_.end() ||
      std::find(subjects_.begin(), subjects_.end(), to) == subjects_.end()) {
    throw RgtError("influence matrix cell (" + from + "," + to + ") names an unknown subject");
  }
  cells_.insert_or_assign({from, to}, std::move(value));
}

const ActionSet& InfluenceMatrix::get(const std::string& from, const std::string& to) const {
  if (from == to) {
    throw RgtError("influence matrix diagonal holds the subject's own variable; cell (" + from +
                   "," + to + ") cannot be read");
  }
  auto it = cells_.find({from, to});
  if (it == cells_.end()) {
    throw RgtError("influence matrix cell (" + from + "," + to + ") is not set");
  }
  return it->second;
}

bool InfluenceMatrix::complete() const {
  for (const auto& from : subjects_) {
    for (const auto& to : subjects_) {
      if (from != to && !cells_.count({from, to})) return false;
    }
  }
  return true;
}

std::map<std::string, ActionSet> InfluenceMatrix::column(const std::string& subject) const {
  std::map<std::string, ActionSet> out;
  for (const auto& from : subjects_) {
    if (from != subject) out.emplace(from, get(from, subject));
  }
  return out;
}

std::map<std::string, DecisionResult> forward_task(const Expr& folded, const InfluenceMatrix& m) {
  std::map<std::string, DecisionResult> out;
  for (const std::string& subject : m.subjects()) {
    out.emplace(subject, solve_decision(canonical_coefficients(folded, subject, m.column(subject))));
  }
  return out;
}

std::vector<InfluenceTuple> inverse_task(const Expr& folded, const std::string& controlled,
                                         const ActionSet& target) {
  std::vector<std::string> others;
  for (const std::string& var : folded.variables()) {
    if (var != controlled) others.push_back(var);
  }
  if (others.empty()) {
    throw RgtError("inverse task for '" + controlled + "' needs at least one other subject");
  }

  // Reverse counting order per coordinate (full set first), first subject
  // most significant, so the first hit matches the calculus' enumeration
  // habit of starting from 1.
  std::vector<ActionSet> elements = algebra::all_elements(target.universe());
  std::reverse(elements.begin(), elements.end());

  std::vector<InfluenceTuple> solutions;
  std::vector<std::size_t> counter(others.size(), 0);
  while (true) {
    InfluenceTuple tuple;
    for (std::size_t i = 0; i < others.size(); ++i) {
      tuple.emplace(others[i], elements[counter[i]]);
    }
    const CanonicalCoefficients c = canonical_coefficients(folded, controlled, tuple);
    if (c.on_one == target && c.on_zero == target) {
      solutions.push_back(std::move(tuple));
    }
    // Odometer with the last coordinate fastest.
    std::size_t pos = others.size();
    while (pos > 0) {
      if (++counter[pos - 1] < elements.size()) break;
      counter[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) break;
  }
  return solutions;
}

}  // namespace reflex::rgt
