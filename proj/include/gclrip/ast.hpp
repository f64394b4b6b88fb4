#pragma once

// Abstract syntax for guarded-command programs.
//
// Expr, Pred and Stmt are immutable handles over shared nodes: copying is
// cheap and nodes may be shared freely between trees and threads. Equality
// is structural and ignores source spans.

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gclrip/rational.hpp"

namespace gclrip {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct Span {
  int line = 0;
  int column = 0;
};

enum class ArithOp { add, sub, mul, div };
enum class CmpOp { eq, ne, lt, le, gt, ge };

const char* symbol(ArithOp op);
const char* symbol(CmpOp op);
CmpOp negate(CmpOp op);
/// The operator that gives the same truth value with operands swapped.
CmpOp mirror(CmpOp op);

// ---------------------------------------------------------------------------
// Expressions

struct ExprNode;

class Expr {
 public:
  Expr(long value);  // NOLINT: integer literals convert implicitly
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}

  const ExprNode& node() const { return *node_; }
  const void* id() const { return node_.get(); }

  template <class T>
  const T* get() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  std::shared_ptr<const ExprNode> node_;
};

namespace expr {
struct IntLit {
  Integer value;
};
struct Var {
  std::string name;
};
struct ArrayRead {
  std::string array;
  Expr index;
};
struct ArrayLength {
  std::string array;
};
struct Neg {
  Expr operand;
};
struct Binary {
  ArithOp op;
  Expr lhs;
  Expr rhs;
};
/// Floor to integer; the only way back to integers from exact division.
struct Floor {
  Expr operand;
};
}  // namespace expr

struct ExprNode {
  std::variant<expr::IntLit, expr::Var, expr::ArrayRead, expr::ArrayLength,
               expr::Neg, expr::Binary, expr::Floor>
      value;
};

template <class T>
const T* Expr::get() const {
  return std::get_if<T>(&node_->value);
}

Expr lit(Integer value);
Expr var(std::string name);
Expr at(std::string array, Expr index);
Expr length_of(std::string array);
Expr floor(Expr operand);
Expr operator-(Expr operand);
Expr operator+(Expr lhs, Expr rhs);
Expr operator-(Expr lhs, Expr rhs);
Expr operator*(Expr lhs, Expr rhs);
Expr operator/(Expr lhs, Expr rhs);

/// True when the expression mentions no variable or array.
bool is_ground(const Expr& e);

// ---------------------------------------------------------------------------
// Predicates

struct PredNode;

class Pred {
 public:
  explicit Pred(std::shared_ptr<const PredNode> node) : node_(std::move(node)) {}

  const PredNode& node() const { return *node_; }
  const void* id() const { return node_.get(); }

  template <class T>
  const T* get() const;

  friend bool operator==(const Pred& a, const Pred& b);

 private:
  std::shared_ptr<const PredNode> node_;
};

using Substitution = std::pair<std::string, Expr>;

namespace pred {
struct BoolLit {
  bool value;
};
struct Cmp {
  CmpOp op;
  Expr lhs;
  Expr rhs;
};
struct Not {
  Pred operand;
};
struct And {
  Pred lhs;
  Pred rhs;
};
struct Or {
  Pred lhs;
  Pred rhs;
};
struct Implies {
  Pred lhs;
  Pred rhs;
};
/// Opaque postcondition symbol with pending substitutions, leftmost first.
struct Marker {
  std::string tag;
  std::vector<Substitution> substitutions;
};
}  // namespace pred

struct PredNode {
  std::variant<pred::BoolLit, pred::Cmp, pred::Not, pred::And, pred::Or,
               pred::Implies, pred::Marker>
      value;
};

template <class T>
const T* Pred::get() const {
  return std::get_if<T>(&node_->value);
}

Pred truth(bool value);
Pred cmp(CmpOp op, Expr lhs, Expr rhs);
Pred eq(Expr lhs, Expr rhs);
Pred ne(Expr lhs, Expr rhs);
Pred lt(Expr lhs, Expr rhs);
Pred le(Expr lhs, Expr rhs);
Pred gt(Expr lhs, Expr rhs);
Pred ge(Expr lhs, Expr rhs);
Pred operator!(Pred operand);
Pred operator&&(Pred lhs, Pred rhs);
Pred operator||(Pred lhs, Pred rhs);
Pred implies(Pred lhs, Pred rhs);
Pred marker(std::string tag, std::vector<Substitution> substitutions = {});

/// Left-nested conjunction/disjunction; empty lists give the unit.
Pred conjunction(const std::vector<Pred>& items);
Pred disjunction(const std::vector<Pred>& items);

bool contains_marker(const Pred& p);

// ---------------------------------------------------------------------------
// Statements

struct StmtNode;

class Stmt {
 public:
  explicit Stmt(std::shared_ptr<const StmtNode> node) : node_(std::move(node)) {}

  const StmtNode& node() const { return *node_; }
  /// Node identity; used to address locations in a particular tree.
  const StmtNode* id() const { return node_.get(); }
  Span span() const;

  template <class T>
  const T* get() const;

  friend bool operator==(const Stmt& a, const Stmt& b);

 private:
  std::shared_ptr<const StmtNode> node_;
};

struct GuardedCommand {
  Pred guard;
  Stmt body;
};

struct LoopAnnotation {
  Pred invariant;
  Expr variant;
  std::vector<std::string> modified;
};

namespace stmt {
struct Assign {
  std::vector<std::string> targets;
  std::vector<Expr> values;
};
struct Skip {};
struct Null {};
struct Return {
  std::optional<Expr> value;
};
struct Abort {};
struct Seq {
  Stmt first;
  Stmt second;
};
struct If {
  std::vector<GuardedCommand> commands;
};
struct Do {
  std::vector<GuardedCommand> commands;
  std::optional<LoopAnnotation> annotation;
};
}  // namespace stmt

struct StmtNode {
  std::variant<stmt::Assign, stmt::Skip, stmt::Null, stmt::Return, stmt::Abort,
               stmt::Seq, stmt::If, stmt::Do>
      value;
  Span span;
};

template <class T>
const T* Stmt::get() const {
  return std::get_if<T>(&node_->value);
}

Stmt assign(std::vector<std::string> targets, std::vector<Expr> values,
            Span span = {});
Stmt assign(std::string target, Expr value, Span span = {});
Stmt skip(Span span = {});
Stmt null_stmt(Span span = {});
Stmt return_stmt(std::optional<Expr> value, Span span = {});
Stmt abort_stmt(Span span = {});
Stmt seq(Stmt first, Stmt second, Span span = {});
Stmt if_stmt(std::vector<GuardedCommand> commands, Span span = {});
Stmt do_stmt(std::vector<GuardedCommand> commands,
             std::optional<LoopAnnotation> annotation = std::nullopt,
             Span span = {});

/// Statements of a sequential composition, in execution order. A non-Seq
/// statement is a one-element list.
std::vector<Stmt> flatten(const Stmt& s);
/// Right-nested composition of the items; an empty list is `null`.
Stmt sequence(const std::vector<Stmt>& items);
/// Drops trailing `null` statements from every sequence of two or more.
Stmt normalize(const Stmt& s);

bool is_loop(const Stmt& s);
bool is_alternative(const Stmt& s);
/// Guards of an If or Do, in order; empty for any other statement.
const std::vector<GuardedCommand>* guarded_commands(const Stmt& s);
/// Rebuilds an If/Do with the body of command `branch` replaced.
Stmt with_branch_body(const Stmt& s, std::size_t branch, Stmt body);

struct Program {
  std::string name;
  std::vector<std::string> params;
  Stmt body;
  Span span;

  friend bool operator==(const Program& a, const Program& b);
};

Program normalize(const Program& p);

// ---------------------------------------------------------------------------
// Free variables and validation

struct FreeVars {
  std::set<std::string> names;
  /// Set when a Marker is present: the marker may mention anything.
  bool any = false;

  friend bool operator==(const FreeVars&, const FreeVars&) = default;
};

FreeVars free_vars(const Expr& e);
FreeVars free_vars(const Pred& p);
/// Identifiers read by executing the statement (targets are not reads).
FreeVars free_vars(const Stmt& s);

/// Identifiers assigned anywhere inside the statement.
std::set<std::string> assigned_vars(const Stmt& s);

enum class Severity { error, warning };

struct Diagnostic {
  Severity severity;
  Span span;
  std::string message;

  friend bool operator==(const Diagnostic& a, const Diagnostic& b) {
    return a.severity == b.severity && a.span.line == b.span.line &&
           a.span.column == b.span.column && a.message == b.message;
  }
};

std::vector<Diagnostic> validate(const Program& program);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

}  // namespace gclrip
