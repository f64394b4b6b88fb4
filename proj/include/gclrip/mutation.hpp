#pragma once

// Locating the single change between an original program and a mutant, and
// decomposing both around it.

#include <optional>
#include <string>
#include <vector>

#include "gclrip/ast.hpp"

namespace gclrip {

enum class ModificationKind { statement, guarded_command };
enum class GuardKind { alternative, iteration };

const char* to_string(ModificationKind k);
const char* to_string(GuardKind k);

/// One level of guarded-command nesting around the change, outermost first.
struct GuardStep {
  GuardKind kind;
  std::size_t branch;
  Pred guard;
  /// The If/Do holding the branch, in the original and in the mutant.
  Stmt enclosing_u;
  Stmt enclosing_m;
  /// Statements of the branch body before and after the next level down.
  std::vector<Stmt> before;
  std::vector<Stmt> after;
};

/// Addresses a statement in a normalised body: sequence index, then
/// alternately branch index and sequence index for each nesting level.
using Location = std::vector<std::size_t>;

struct ModificationTemplate {
  ModificationKind kind = ModificationKind::statement;
  /// Top-level decomposition. For a guarded-command change st_u/st_m are the
  /// enclosing top-level If/Do statements.
  Stmt prog_b = null_stmt();
  Stmt st_u = null_stmt();
  Stmt st_m = null_stmt();
  Stmt prog_a = null_stmt();
  std::vector<Stmt> before;
  std::vector<Stmt> after;

  std::vector<GuardStep> guard_path;
  /// Guarded-command decomposition; empty/null for statement changes.
  Stmt prog_jb = null_stmt();
  Stmt st_ju = null_stmt();
  Stmt st_jm = null_stmt();
  Stmt prog_ja = null_stmt();

  /// Where the changed statement sits, identical in both programs.
  Location location;
  Span span_u;
  Span span_m;

  /// The innermost changed statement: st_u or st_ju.
  const Stmt& changed_u() const { return kind == ModificationKind::statement ? st_u : st_ju; }
  const Stmt& changed_m() const { return kind == ModificationKind::statement ? st_m : st_jm; }
};

/// Diffs the normalised bodies. Throws MutationError on equal programs,
/// several changes, mismatched shapes or differing signatures.
ModificationTemplate locate_mutation(const Program& original, const Program& mutant);

enum class ModificationRow {
  expr_mutated,
  target_mutated,
  multi_expr_component,
  multi_target_component,
  if_guard_mutated,
  do_guard_mutated,
  body_stmt_mutated,
  /// Any other replacement of one statement by another.
  statement_replaced,
};

const char* to_string(ModificationRow r);

struct ModificationClass {
  ModificationRow row;
  /// For body_stmt_mutated, the class of the change inside the body.
  std::optional<ModificationRow> inner;
};

ModificationClass classify(const ModificationTemplate& t);
ModificationRow classify_pair(const Stmt& u, const Stmt& m);

/// Rebuilds the body around st_u/st_ju, or around st_m/st_jm.
Stmt reassemble(const ModificationTemplate& t, bool mutant);

/// Statement at `location` in a normalised body.
Stmt resolve(const Stmt& body, const Location& location);

}  // namespace gclrip
