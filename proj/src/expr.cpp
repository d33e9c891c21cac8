#include "reflex/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <variant>

namespace reflex::algebra {

struct Expr::Node {
  Kind kind;
  std::string var;                  // Var
  std::optional<ActionSet> value;   // Const
  std::optional<Expr> a;            // lhs / operand
  std::optional<Expr> b;            // rhs
};

Expr Expr::var(std::string id) {
  if (id.empty()) throw AlgebraError("variable id must be non-empty");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Var;
  node->var = std::move(id);
  return Expr(std::move(node));
}

Expr Expr::constant(ActionSet value) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Const;
  node->value = std::move(value);
  return Expr(std::move(node));
}

Expr Expr::meet(Expr lhs, Expr rhs) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Meet;
  node->a = std::move(lhs);
  node->b = std::move(rhs);
  return Expr(std::move(node));
}

Expr Expr::join(Expr lhs, Expr rhs) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Join;
  node->a = std::move(lhs);
  node->b = std::move(rhs);
  return Expr(std::move(node));
}

Expr Expr::complement(Expr operand) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Complement;
  node->a = std::move(operand);
  return Expr(std::move(node));
}

Expr::Kind Expr::kind() const { return node_->kind; }
const std::string& Expr::var_id() const { return node_->var; }
const ActionSet& Expr::const_value() const { return *node_->value; }
const Expr& Expr::lhs() const { return *node_->a; }
const Expr& Expr::rhs() const { return *node_->b; }
const Expr& Expr::operand() const { return *node_->a; }

std::vector<std::string> Expr::variables() const {
  std::set<std::string> vars;
  std::function<void(const Expr&)> walk = [&](const Expr& e) {
    switch (e.kind()) {
      case Kind::Var: vars.insert(e.var_id()); break;
      case Kind::Const: break;
      case Kind::Complement: walk(e.operand()); break;
      case Kind::Meet:
      case Kind::Join:
        walk(e.lhs());
        walk(e.rhs());
        break;
    }
  };
  walk(*this);
  return {vars.begin(), vars.end()};
}

namespace {

// Precedence levels for printing: join < meet < complement < atom.
constexpr int kPrecJoin = 0;
constexpr int kPrecMeet = 1;
constexpr int kPrecComplement = 2;
constexpr int kPrecAtom = 3;

struct Rendered {
  std::string text;
  int prec;
  bool bare_var;  // single-letter variable, eligible for juxtaposition
};

Rendered render(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Var:
      return {e.var_id(), kPrecAtom, e.var_id().size() == 1};
    case Expr::Kind::Const:
      return {e.const_value().to_string(), kPrecAtom, false};
    case Expr::Kind::Complement: {
      Rendered inner = render(e.operand());
      std::string text = inner.prec < kPrecComplement ? "~(" + inner.text + ")" : "~" + inner.text;
      return {std::move(text), kPrecComplement, false};
    }
    case Expr::Kind::Meet: {
      Rendered l = render(e.lhs());
      Rendered r = render(e.rhs());
      auto wrap = [](Rendered& part) {
        if (part.prec < kPrecMeet) part.text = "(" + part.text + ")";
      };
      wrap(l);
      wrap(r);
      // "ab" style only when it cannot be misread as one identifier boundary.
      const bool juxtapose = (l.bare_var || l.prec == kPrecMeet || l.text.back() == ')') &&
                             (r.bare_var || r.text.front() == '(');
      std::string text = juxtapose ? l.text + r.text : l.text + "*" + r.text;
      return {std::move(text), kPrecMeet, false};
    }
    case Expr::Kind::Join: {
      Rendered l = render(e.lhs());
      Rendered r = render(e.rhs());
      return {l.text + " + " + r.text, kPrecJoin, false};
    }
  }
  throw AlgebraError("unreachable expression kind");
}

}  // namespace

std::string Expr::to_string() const { return render(*this).text; }

ActionSet eval(const Expr& expr, const Assignment& assignment) {
  switch (expr.kind()) {
    case Expr::Kind::Var: {
      auto it = assignment.find(expr.var_id());
      if (it == assignment.end()) {
        throw AlgebraError("unbound subject variable '" + expr.var_id() + "'");
      }
      return it->second;
    }
    case Expr::Kind::Const:
      return expr.const_value();
    case Expr::Kind::Meet:
      return meet(eval(expr.lhs(), assignment), eval(expr.rhs(), assignment));
    case Expr::Kind::Join:
      return join(eval(expr.lhs(), assignment), eval(expr.rhs(), assignment));
    case Expr::Kind::Complement:
      return complement(eval(expr.operand(), assignment));
  }
  throw AlgebraError("unreachable expression kind");
}

bool equivalent(const Expr& a, const Expr& b, const std::vector<std::string>& subjects,
                const UniversePtr& universe) {
  const auto elements = all_elements(universe);
  std::vector<std::size_t> counter(subjects.size(), 0);
  Assignment assignment;
  while (true) {
    for (std::size_t i = 0; i < subjects.size(); ++i) {
      assignment.insert_or_assign(subjects[i], elements[counter[i]]);
    }
    if (eval(a, assignment) != eval(b, assignment)) return false;
    // Odometer over the (2^n)^k grid.
    std::size_t pos = 0;
    while (pos < counter.size()) {
      if (++counter[pos] < elements.size()) break;
      counter[pos] = 0;
      ++pos;
    }
    if (pos == counter.size()) return true;
  }
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
public:
  Parser(std::string_view text, const std::vector<std::string>& subjects,
         const UniversePtr& universe)
      : text_(text), subjects_(subjects), universe_(universe) {}

  Expr parse() {
    Expr e = parse_join();
    skip_ws();
    if (pos_ != text_.size()) {
      throw AlgebraError("unexpected '" + std::string(1, text_[pos_]) + "' at position " +
                         std::to_string(pos_) + " in expression");
    }
    return e;
  }

private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek_atom_start() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return c == '(' || c == '{' || c == '~' || c == '1' || c == '0' ||
           std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

  Expr parse_join() {
    Expr e = parse_meet();
    while (true) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '+') {
        ++pos_;
        e = Expr::join(std::move(e), parse_meet());
      } else {
        return e;
      }
    }
  }

  Expr parse_meet() {
    Expr e = parse_factor();
    while (true) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
        e = Expr::meet(std::move(e), parse_factor());
      } else if (peek_atom_start()) {
        e = Expr::meet(std::move(e), parse_factor());  // juxtaposition
      } else {
        return e;
      }
    }
  }

  Expr parse_factor() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '~') {
      ++pos_;
      return Expr::complement(parse_factor());
    }
    return parse_atom();
  }

  Expr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw AlgebraError("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = parse_join();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') {
        throw AlgebraError("missing ')' in expression");
      }
      ++pos_;
      return e;
    }
    if (c == '{' || c == '1' || c == '0') {
      return Expr::constant(parse_set_literal());
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      return parse_var_run();
    }
    throw AlgebraError("unexpected '" + std::string(1, c) + "' at position " +
                       std::to_string(pos_) + " in expression");
  }

  ActionSet parse_set_literal() {
    if (text_[pos_] == '1') {
      ++pos_;
      return ActionSet::full(universe_);
    }
    if (text_[pos_] == '0') {
      ++pos_;
      return ActionSet::empty(universe_);
    }
    ++pos_;  // '{'
    std::vector<std::string> names;
    skip_ws();
    while (pos_ < text_.size() && text_[pos_] != '}') {
      std::string name;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        name += text_[pos_++];
      }
      if (name.empty()) throw AlgebraError("malformed set literal");
      names.push_back(std::move(name));
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        skip_ws();
      }
    }
    if (pos_ >= text_.size()) throw AlgebraError("missing '}' in set literal");
    ++pos_;
    return ActionSet::of(universe_, names);
  }

  // A run of letters is segmented into declared subject ids, longest match
  // first with backtracking, so "ab" is meet(a, b) unless "ab" itself is a
  // declared subject.
  Expr parse_var_run() {
    std::string run;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                   text_[pos_] == '_')) {
      run += text_[pos_++];
    }
    std::vector<std::string> segments;
    if (!segment(run, 0, segments)) {
      throw AlgebraError("cannot resolve '" + run + "' against declared subjects");
    }
    Expr e = Expr::var(segments[0]);
    for (std::size_t i = 1; i < segments.size(); ++i) {
      e = Expr::meet(std::move(e), Expr::var(segments[i]));
    }
    return e;
  }

  bool segment(const std::string& run, std::size_t start, std::vector<std::string>& out) {
    if (start == run.size()) return true;
    std::vector<std::string> candidates(subjects_.begin(), subjects_.end());
    std::sort(candidates.begin(), candidates.end(),
              [](const std::string& a, const std::string& b) { return a.size() > b.size(); });
    for (const auto& id : candidates) {
      if (run.compare(start, id.size(), id) == 0) {
        out.push_back(id);
        if (segment(run, start + id.size(), out)) return true;
        out.pop_back();
      }
    }
    return false;
  }

  std::string_view text_;
  const std::vector<std::string>& subjects_;
  const UniversePtr& universe_;
  std::size_t pos_ = 0;
};

}  // namespace

ActionSet parse_set(std::string_view text, const UniversePtr& universe) {
  std::size_t begin = 0, end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  const std::string_view body = text.substr(begin, end - begin);
  if (body == "1") return ActionSet::full(universe);
  if (body == "0") return ActionSet::empty(universe);
  if (body.size() >= 2 && body.front() == '{' && body.back() == '}') {
    std::vector<std::string> names;
    std::string current;
    for (const char c : body.substr(1, body.size() - 2)) {
      if (c == ',') {
        if (!current.empty()) names.push_back(std::move(current));
        current.clear();
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        current += c;
      }
    }
    if (!current.empty()) names.push_back(std::move(current));
    return ActionSet::of(universe, names);
  }
  throw AlgebraError("malformed set literal '" + std::string(text) + "'");
}

Expr parse_expr(std::string_view text, const std::vector<std::string>& subjects,
                const UniversePtr& universe) {
  return Parser(text, subjects, universe).parse();
}

}  // namespace reflex::algebra
