#pragma once

// Reachability conditions: what executing a statement requires for control
// to reach the statement that follows it.

#include <set>
#include <vector>

#include "gclrip/ast.hpp"
#include "gclrip/wp.hpp"

namespace gclrip {

/// Which loop rule produced a result; ordered by how much was assumed.
enum class LoopPolicy { none, k0, k1, declared_false };

const char* to_string(LoopPolicy p);

struct RcOptions {
  /// Loops whose annotation is known not to hold; they yield false.
  std::set<const StmtNode*> lwdc_failed;
};

struct RcResult {
  Pred predicate;
  /// Strongest policy used by any loop inside the statement.
  LoopPolicy loop_policy_used = LoopPolicy::none;
  std::vector<DerivationStep> derivation;
};

/// assign/skip/null give true, return/abort false, sequences conjoin and
/// alternatives give the disjunction of (guard and branch condition).
RcResult rc(const Stmt& s, const RcOptions& options = {});

/// Loops: R_0 = !G unless that is false; otherwise the one-iteration
/// condition R_1, which is true when every body is straight-line code.
RcResult rc_loop(const Stmt& loop, const RcOptions& options = {});

/// rc of the top-level statements of `program` that start before `line`.
RcResult rc_upto(const Program& program, int line, const RcOptions& options = {});

}  // namespace gclrip
