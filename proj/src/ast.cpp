#include "gclrip/ast.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace gclrip {

const char* symbol(ArithOp op) {
  switch (op) {
    case ArithOp::add: return "+";
    case ArithOp::sub: return "-";
    case ArithOp::mul: return "*";
    case ArithOp::div: return "/";
  }
  return "?";
}

const char* symbol(CmpOp op) {
  switch (op) {
    case CmpOp::eq: return "=";
    case CmpOp::ne: return "!=";
    case CmpOp::lt: return "<";
    case CmpOp::le: return "<=";
    case CmpOp::gt: return ">";
    case CmpOp::ge: return ">=";
  }
  return "?";
}

CmpOp negate(CmpOp op) {
  switch (op) {
    case CmpOp::eq: return CmpOp::ne;
    case CmpOp::ne: return CmpOp::eq;
    case CmpOp::lt: return CmpOp::ge;
    case CmpOp::le: return CmpOp::gt;
    case CmpOp::gt: return CmpOp::le;
    case CmpOp::ge: return CmpOp::lt;
  }
  return op;
}

CmpOp mirror(CmpOp op) {
  switch (op) {
    case CmpOp::lt: return CmpOp::gt;
    case CmpOp::le: return CmpOp::ge;
    case CmpOp::gt: return CmpOp::lt;
    case CmpOp::ge: return CmpOp::le;
    default: return op;
  }
}

// ---------------------------------------------------------------------------
// Expressions

namespace {
Expr make_expr(auto&& value) {
  return Expr(std::make_shared<const ExprNode>(
      ExprNode{std::forward<decltype(value)>(value)}));
}
Pred make_pred(auto&& value) {
  return Pred(std::make_shared<const PredNode>(
      PredNode{std::forward<decltype(value)>(value)}));
}
Stmt make_stmt(auto&& value, Span span) {
  return Stmt(std::make_shared<const StmtNode>(
      StmtNode{std::forward<decltype(value)>(value), span}));
}
}  // namespace

Expr::Expr(long value) : Expr(lit(Integer(value))) {}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  return std::visit(
      overloaded{
          [&](const expr::IntLit& x) {
            auto* y = b.get<expr::IntLit>();
            return y && x.value == y->value;
          },
          [&](const expr::Var& x) {
            auto* y = b.get<expr::Var>();
            return y && x.name == y->name;
          },
          [&](const expr::ArrayRead& x) {
            auto* y = b.get<expr::ArrayRead>();
            return y && x.array == y->array && x.index == y->index;
          },
          [&](const expr::ArrayLength& x) {
            auto* y = b.get<expr::ArrayLength>();
            return y && x.array == y->array;
          },
          [&](const expr::Neg& x) {
            auto* y = b.get<expr::Neg>();
            return y && x.operand == y->operand;
          },
          [&](const expr::Binary& x) {
            auto* y = b.get<expr::Binary>();
            return y && x.op == y->op && x.lhs == y->lhs && x.rhs == y->rhs;
          },
          [&](const expr::Floor& x) {
            auto* y = b.get<expr::Floor>();
            return y && x.operand == y->operand;
          },
      },
      a.node().value);
}

Expr lit(Integer value) { return make_expr(expr::IntLit{std::move(value)}); }
Expr var(std::string name) { return make_expr(expr::Var{std::move(name)}); }
Expr at(std::string array, Expr index) {
  return make_expr(expr::ArrayRead{std::move(array), std::move(index)});
}
Expr length_of(std::string array) {
  return make_expr(expr::ArrayLength{std::move(array)});
}
Expr floor(Expr operand) { return make_expr(expr::Floor{std::move(operand)}); }
Expr operator-(Expr operand) { return make_expr(expr::Neg{std::move(operand)}); }
Expr operator+(Expr lhs, Expr rhs) {
  return make_expr(expr::Binary{ArithOp::add, std::move(lhs), std::move(rhs)});
}
Expr operator-(Expr lhs, Expr rhs) {
  return make_expr(expr::Binary{ArithOp::sub, std::move(lhs), std::move(rhs)});
}
Expr operator*(Expr lhs, Expr rhs) {
  return make_expr(expr::Binary{ArithOp::mul, std::move(lhs), std::move(rhs)});
}
Expr operator/(Expr lhs, Expr rhs) {
  return make_expr(expr::Binary{ArithOp::div, std::move(lhs), std::move(rhs)});
}

bool is_ground(const Expr& e) {
  FreeVars fv = free_vars(e);
  return fv.names.empty();
}

// ---------------------------------------------------------------------------
// Predicates

bool operator==(const Pred& a, const Pred& b) {
  if (a.node_ == b.node_) return true;
  return std::visit(
      overloaded{
          [&](const pred::BoolLit& x) {
            auto* y = b.get<pred::BoolLit>();
            return y && x.value == y->value;
          },
          [&](const pred::Cmp& x) {
            auto* y = b.get<pred::Cmp>();
            return y && x.op == y->op && x.lhs == y->lhs && x.rhs == y->rhs;
          },
          [&](const pred::Not& x) {
            auto* y = b.get<pred::Not>();
            return y && x.operand == y->operand;
          },
          [&](const pred::And& x) {
            auto* y = b.get<pred::And>();
            return y && x.lhs == y->lhs && x.rhs == y->rhs;
          },
          [&](const pred::Or& x) {
            auto* y = b.get<pred::Or>();
            return y && x.lhs == y->lhs && x.rhs == y->rhs;
          },
          [&](const pred::Implies& x) {
            auto* y = b.get<pred::Implies>();
            return y && x.lhs == y->lhs && x.rhs == y->rhs;
          },
          [&](const pred::Marker& x) {
            auto* y = b.get<pred::Marker>();
            return y && x.tag == y->tag && x.substitutions == y->substitutions;
          },
      },
      a.node().value);
}

Pred truth(bool value) { return make_pred(pred::BoolLit{value}); }
Pred cmp(CmpOp op, Expr lhs, Expr rhs) {
  return make_pred(pred::Cmp{op, std::move(lhs), std::move(rhs)});
}
Pred eq(Expr lhs, Expr rhs) { return cmp(CmpOp::eq, std::move(lhs), std::move(rhs)); }
Pred ne(Expr lhs, Expr rhs) { return cmp(CmpOp::ne, std::move(lhs), std::move(rhs)); }
Pred lt(Expr lhs, Expr rhs) { return cmp(CmpOp::lt, std::move(lhs), std::move(rhs)); }
Pred le(Expr lhs, Expr rhs) { return cmp(CmpOp::le, std::move(lhs), std::move(rhs)); }
Pred gt(Expr lhs, Expr rhs) { return cmp(CmpOp::gt, std::move(lhs), std::move(rhs)); }
Pred ge(Expr lhs, Expr rhs) { return cmp(CmpOp::ge, std::move(lhs), std::move(rhs)); }
Pred operator!(Pred operand) { return make_pred(pred::Not{std::move(operand)}); }
Pred operator&&(Pred lhs, Pred rhs) {
  return make_pred(pred::And{std::move(lhs), std::move(rhs)});
}
Pred operator||(Pred lhs, Pred rhs) {
  return make_pred(pred::Or{std::move(lhs), std::move(rhs)});
}
Pred implies(Pred lhs, Pred rhs) {
  return make_pred(pred::Implies{std::move(lhs), std::move(rhs)});
}
Pred marker(std::string tag, std::vector<Substitution> substitutions) {
  return make_pred(pred::Marker{std::move(tag), std::move(substitutions)});
}

Pred conjunction(const std::vector<Pred>& items) {
  if (items.empty()) return truth(true);
  Pred out = items.front();
  for (std::size_t i = 1; i < items.size(); ++i) out = out && items[i];
  return out;
}

Pred disjunction(const std::vector<Pred>& items) {
  if (items.empty()) return truth(false);
  Pred out = items.front();
  for (std::size_t i = 1; i < items.size(); ++i) out = out || items[i];
  return out;
}

bool contains_marker(const Pred& p) { return free_vars(p).any; }

// ---------------------------------------------------------------------------
// Statements

Span Stmt::span() const { return node_->span; }

namespace {
bool equal_commands(const std::vector<GuardedCommand>& a,
                    const std::vector<GuardedCommand>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i].guard == b[i].guard) || !(a[i].body == b[i].body)) return false;
  }
  return true;
}

bool equal_annotations(const std::optional<LoopAnnotation>& a,
                       const std::optional<LoopAnnotation>& b) {
  if (a.has_value() != b.has_value()) return false;
  if (!a) return true;
  return a->invariant == b->invariant && a->variant == b->variant &&
         a->modified == b->modified;
}
}  // namespace

bool operator==(const Stmt& a, const Stmt& b) {
  if (a.node_ == b.node_) return true;
  return std::visit(
      overloaded{
          [&](const stmt::Assign& x) {
            auto* y = b.get<stmt::Assign>();
            return y && x.targets == y->targets && x.values == y->values;
          },
          [&](const stmt::Skip&) { return b.get<stmt::Skip>() != nullptr; },
          [&](const stmt::Null&) { return b.get<stmt::Null>() != nullptr; },
          [&](const stmt::Return& x) {
            auto* y = b.get<stmt::Return>();
            return y && x.value == y->value;
          },
          [&](const stmt::Abort&) { return b.get<stmt::Abort>() != nullptr; },
          [&](const stmt::Seq& x) {
            auto* y = b.get<stmt::Seq>();
            return y && x.first == y->first && x.second == y->second;
          },
          [&](const stmt::If& x) {
            auto* y = b.get<stmt::If>();
            return y && equal_commands(x.commands, y->commands);
          },
          [&](const stmt::Do& x) {
            auto* y = b.get<stmt::Do>();
            return y && equal_commands(x.commands, y->commands) &&
                   equal_annotations(x.annotation, y->annotation);
          },
      },
      a.node().value);
}

Stmt assign(std::vector<std::string> targets, std::vector<Expr> values,
            Span span) {
  return make_stmt(stmt::Assign{std::move(targets), std::move(values)}, span);
}
Stmt assign(std::string target, Expr value, Span span) {
  return assign(std::vector<std::string>{std::move(target)},
                std::vector<Expr>{std::move(value)}, span);
}
Stmt skip(Span span) { return make_stmt(stmt::Skip{}, span); }
Stmt null_stmt(Span span) { return make_stmt(stmt::Null{}, span); }
Stmt return_stmt(std::optional<Expr> value, Span span) {
  return make_stmt(stmt::Return{std::move(value)}, span);
}
Stmt abort_stmt(Span span) { return make_stmt(stmt::Abort{}, span); }
Stmt seq(Stmt first, Stmt second, Span span) {
  return make_stmt(stmt::Seq{std::move(first), std::move(second)}, span);
}
Stmt if_stmt(std::vector<GuardedCommand> commands, Span span) {
  return make_stmt(stmt::If{std::move(commands)}, span);
}
Stmt do_stmt(std::vector<GuardedCommand> commands,
             std::optional<LoopAnnotation> annotation, Span span) {
  return make_stmt(stmt::Do{std::move(commands), std::move(annotation)}, span);
}

namespace {
void flatten_into(const Stmt& s, std::vector<Stmt>& out) {
  if (auto* sq = s.get<stmt::Seq>()) {
    flatten_into(sq->first, out);
    flatten_into(sq->second, out);
  } else {
    out.push_back(s);
  }
}
}  // namespace

std::vector<Stmt> flatten(const Stmt& s) {
  std::vector<Stmt> out;
  flatten_into(s, out);
  return out;
}

Stmt sequence(const std::vector<Stmt>& items) {
  if (items.empty()) return null_stmt();
  Stmt out = items.back();
  for (std::size_t i = items.size() - 1; i-- > 0;) {
    out = seq(items[i], out, items[i].span());
  }
  return out;
}

namespace {
std::vector<GuardedCommand> normalize_commands(
    const std::vector<GuardedCommand>& commands) {
  std::vector<GuardedCommand> out;
  out.reserve(commands.size());
  for (const auto& gc : commands) out.push_back({gc.guard, normalize(gc.body)});
  return out;
}
}  // namespace

Stmt normalize(const Stmt& s) {
  if (s.get<stmt::Seq>()) {
    std::vector<Stmt> items = flatten(s);
    while (items.size() > 1 && items.back().get<stmt::Null>()) items.pop_back();
    for (auto& item : items) item = normalize(item);
    return sequence(items);
  }
  if (auto* i = s.get<stmt::If>()) {
    return if_stmt(normalize_commands(i->commands), s.span());
  }
  if (auto* d = s.get<stmt::Do>()) {
    return do_stmt(normalize_commands(d->commands), d->annotation, s.span());
  }
  return s;
}

bool is_loop(const Stmt& s) { return s.get<stmt::Do>() != nullptr; }
bool is_alternative(const Stmt& s) { return s.get<stmt::If>() != nullptr; }

const std::vector<GuardedCommand>* guarded_commands(const Stmt& s) {
  if (auto* i = s.get<stmt::If>()) return &i->commands;
  if (auto* d = s.get<stmt::Do>()) return &d->commands;
  return nullptr;
}

Stmt with_branch_body(const Stmt& s, std::size_t branch, Stmt body) {
  if (auto* i = s.get<stmt::If>()) {
    auto commands = i->commands;
    commands.at(branch).body = std::move(body);
    return if_stmt(std::move(commands), s.span());
  }
  if (auto* d = s.get<stmt::Do>()) {
    auto commands = d->commands;
    commands.at(branch).body = std::move(body);
    return do_stmt(std::move(commands), d->annotation, s.span());
  }
  return s;
}

bool operator==(const Program& a, const Program& b) {
  return a.name == b.name && a.params == b.params && a.body == b.body;
}

Program normalize(const Program& p) {
  return Program{p.name, p.params, normalize(p.body), p.span};
}

// ---------------------------------------------------------------------------
// Free variables

namespace {
void collect(const Expr& e, FreeVars& out) {
  std::visit(overloaded{
                 [](const expr::IntLit&) {},
                 [&](const expr::Var& x) { out.names.insert(x.name); },
                 [&](const expr::ArrayRead& x) {
                   out.names.insert(x.array);
                   collect(x.index, out);
                 },
                 [&](const expr::ArrayLength& x) { out.names.insert(x.array); },
                 [&](const expr::Neg& x) { collect(x.operand, out); },
                 [&](const expr::Binary& x) {
                   collect(x.lhs, out);
                   collect(x.rhs, out);
                 },
                 [&](const expr::Floor& x) { collect(x.operand, out); },
             },
             e.node().value);
}

void collect(const Pred& p, FreeVars& out) {
  std::visit(overloaded{
                 [](const pred::BoolLit&) {},
                 [&](const pred::Cmp& x) {
                   collect(x.lhs, out);
                   collect(x.rhs, out);
                 },
                 [&](const pred::Not& x) { collect(x.operand, out); },
                 [&](const pred::And& x) {
                   collect(x.lhs, out);
                   collect(x.rhs, out);
                 },
                 [&](const pred::Or& x) {
                   collect(x.lhs, out);
                   collect(x.rhs, out);
                 },
                 [&](const pred::Implies& x) {
                   collect(x.lhs, out);
                   collect(x.rhs, out);
                 },
                 [&](const pred::Marker& x) {
                   out.any = true;
                   for (const auto& [name, value] : x.substitutions) {
                     collect(value, out);
                   }
                 },
             },
             p.node().value);
}

void collect(const Stmt& s, FreeVars& out) {
  std::visit(overloaded{
                 [&](const stmt::Assign& x) {
                   for (const auto& v : x.values) collect(v, out);
                 },
                 [](const stmt::Skip&) {},
                 [](const stmt::Null&) {},
                 [&](const stmt::Return& x) {
                   if (x.value) collect(*x.value, out);
                 },
                 [](const stmt::Abort&) {},
                 [&](const stmt::Seq& x) {
                   collect(x.first, out);
                   collect(x.second, out);
                 },
                 [&](const stmt::If& x) {
                   for (const auto& gc : x.commands) {
                     collect(gc.guard, out);
                     collect(gc.body, out);
                   }
                 },
                 [&](const stmt::Do& x) {
                   for (const auto& gc : x.commands) {
                     collect(gc.guard, out);
                     collect(gc.body, out);
                   }
                 },
             },
             s.node().value);
}

void collect_assigned(const Stmt& s, std::set<std::string>& out) {
  if (auto* a = s.get<stmt::Assign>()) {
    out.insert(a->targets.begin(), a->targets.end());
  } else if (auto* sq = s.get<stmt::Seq>()) {
    collect_assigned(sq->first, out);
    collect_assigned(sq->second, out);
  } else if (auto* commands = guarded_commands(s)) {
    for (const auto& gc : *commands) collect_assigned(gc.body, out);
  }
}
}  // namespace

FreeVars free_vars(const Expr& e) {
  FreeVars out;
  collect(e, out);
  return out;
}

FreeVars free_vars(const Pred& p) {
  FreeVars out;
  collect(p, out);
  return out;
}

FreeVars free_vars(const Stmt& s) {
  FreeVars out;
  collect(s, out);
  return out;
}

std::set<std::string> assigned_vars(const Stmt& s) {
  std::set<std::string> out;
  collect_assigned(s, out);
  return out;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

class Validator {
 public:
  explicit Validator(const Program& program) : program_(program) {}

  std::vector<Diagnostic> run() {
    std::set<std::string> seen;
    for (const auto& p : program_.params) {
      if (!seen.insert(p).second) {
        error(program_.span, "duplicate parameter '" + p + "'");
      }
      if (p == program_.name) {
        error(program_.span,
              "program name '" + p + "' collides with a parameter");
      }
    }
    if (assigned_vars(program_.body).count(program_.name)) {
      error(program_.span, "program name '" + program_.name +
                               "' is assigned; it is reserved for the result");
    }
    structure(program_.body);
    std::set<std::string> defined(program_.params.begin(),
                                  program_.params.end());
    definite(program_.body, defined);
    return std::move(diagnostics_);
  }

 private:
  void error(Span span, std::string message) {
    diagnostics_.push_back({Severity::error, span, std::move(message)});
  }
  void warning(Span span, std::string message) {
    diagnostics_.push_back({Severity::warning, span, std::move(message)});
  }

  void check_commands(const Stmt& s, const std::vector<GuardedCommand>& cmds) {
    if (cmds.empty()) error(s.span(), "guarded command set is empty");
    for (const auto& gc : cmds) {
      if (contains_marker(gc.guard)) {
        error(s.span(), "guard contains a postcondition marker");
      }
      structure(gc.body);
    }
  }

  void structure(const Stmt& s) {
    std::visit(
        overloaded{
            [&](const stmt::Assign& a) {
              if (a.targets.empty()) error(s.span(), "assignment has no targets");
              if (a.targets.size() != a.values.size()) {
                error(s.span(), "assignment has " +
                                    std::to_string(a.targets.size()) +
                                    " targets but " +
                                    std::to_string(a.values.size()) + " values");
              }
              std::set<std::string> seen;
              for (const auto& t : a.targets) {
                if (!seen.insert(t).second) {
                  error(s.span(), "duplicate target '" + t + "'");
                }
              }
            },
            [](const stmt::Skip&) {},
            [](const stmt::Null&) {},
            [](const stmt::Return&) {},
            [](const stmt::Abort&) {},
            [&](const stmt::Seq& q) {
              structure(q.first);
              structure(q.second);
            },
            [&](const stmt::If& i) { check_commands(s, i.commands); },
            [&](const stmt::Do& d) {
              check_commands(s, d.commands);
              if (d.annotation) {
                if (contains_marker(d.annotation->invariant)) {
                  error(s.span(), "loop invariant contains a marker");
                }
                std::set<std::string> body_assigned;
                for (const auto& gc : d.commands) {
                  auto vs = assigned_vars(gc.body);
                  body_assigned.insert(vs.begin(), vs.end());
                }
                if (!body_assigned.empty() && d.annotation->modified.empty()) {
                  error(s.span(), "loop assigns variables but @modifies is empty");
                }
              }
            },
        },
        s.node().value);
  }

  void reads(const FreeVars& fv, const std::set<std::string>& defined,
             Span span) {
    for (const auto& name : fv.names) {
      if (!defined.count(name) && warned_.insert(name).second) {
        warning(span, "'" + name + "' may be read before it is assigned");
      }
    }
  }

  // Conservative definite-assignment pass. Returns false when every path
  // through `s` leaves the enclosing sequence (return/abort).
  bool definite(const Stmt& s, std::set<std::string>& defined) {
    return std::visit(
        overloaded{
            [&](const stmt::Assign& a) {
              for (const auto& v : a.values) reads(free_vars(v), defined, s.span());
              defined.insert(a.targets.begin(), a.targets.end());
              return true;
            },
            [](const stmt::Skip&) { return true; },
            [](const stmt::Null&) { return true; },
            [&](const stmt::Return& r) {
              if (r.value) reads(free_vars(*r.value), defined, s.span());
              return false;
            },
            [](const stmt::Abort&) { return false; },
            [&](const stmt::Seq& q) {
              if (!definite(q.first, defined)) return false;
              return definite(q.second, defined);
            },
            [&](const stmt::If& i) {
              std::optional<std::set<std::string>> joined;
              for (const auto& gc : i.commands) {
                reads(free_vars(gc.guard), defined, s.span());
                auto branch = defined;
                if (!definite(gc.body, branch)) continue;
                if (!joined) {
                  joined = branch;
                } else {
                  std::set<std::string> meet;
                  std::set_intersection(joined->begin(), joined->end(),
                                        branch.begin(), branch.end(),
                                        std::inserter(meet, meet.end()));
                  joined = std::move(meet);
                }
              }
              if (!joined) return false;
              defined = std::move(*joined);
              return true;
            },
            [&](const stmt::Do& d) {
              for (const auto& gc : d.commands) {
                reads(free_vars(gc.guard), defined, s.span());
                auto branch = defined;
                definite(gc.body, branch);
              }
              return true;
            },
        },
        s.node().value);
  }

  const Program& program_;
  std::vector<Diagnostic> diagnostics_;
  std::set<std::string> warned_;
};

}  // namespace

std::vector<Diagnostic> validate(const Program& program) {
  return Validator(program).run();
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::error; });
}

}  // namespace gclrip
