#pragma once

// Small-step interpreter for guarded-command programs.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gclrip/ast.hpp"
#include "gclrip/domain.hpp"

namespace gclrip {

inline constexpr std::uint64_t default_fuel = 10'000;

enum class OutcomeKind { returned, aborted, fuel_exhausted, nondeterministic };

const char* to_string(OutcomeKind k);

struct Outcome {
  OutcomeKind kind = OutcomeKind::aborted;
  std::optional<Rational> value;
  /// Why execution aborted or got stuck; empty otherwise.
  std::string reason;
  std::uint64_t trace_len = 0;
  /// Store just before the watched statement first ran.
  std::optional<State> l_state;
  State final_state;

  /// Observable output: returned value, or the kind for everything else.
  bool same_output(const Outcome& other) const {
    return kind == other.kind && value == other.value;
  }
};

std::string describe(const Outcome& o);

/// A paused or finished execution. Copying a machine snapshots it.
class Machine {
 public:
  enum class Status { running, paused, completed, returned, aborted, fuel_exhausted, nondeterministic };

  Machine(std::string result_var, State store, std::uint64_t fuel);

  /// Schedules `s` to run before anything already pending.
  void push(const Stmt& s);

  /// Runs until the work list empties, a return/abort, fuel runs out, or
  /// the statement `pause_at` is about to run. A paused machine resumes past
  /// the pause on the next call.
  Status run(const StmtNode* pause_at = nullptr);

  /// Records the store before and after every execution of `watched`.
  void trace(const StmtNode* watched) { watched_ = watched; }

  struct Visit {
    State before;
    Status status_after = Status::running;
    std::optional<Rational> value_after;
    std::optional<State> after;
  };
  const std::vector<Visit>& visits() const { return visits_; }

  Status status() const { return status_; }
  const State& store() const { return store_; }
  State& store() { return store_; }
  const std::optional<Rational>& value() const { return value_; }
  const std::string& reason() const { return reason_; }
  std::uint64_t steps() const { return steps_; }
  const std::string& result_var() const { return result_var_; }

  /// Replaces pending statements through `map`; entries not in the map stay.
  void remap(const std::unordered_map<const StmtNode*, Stmt>& map);

  /// Outcome of the whole program, applying the fall-through rule.
  Outcome outcome() const;

 private:
  struct Frame {
    std::optional<Stmt> stmt;  // empty: end of a watched statement
  };

  void step(const Stmt& s);
  void finish_visit();
  void fail(Status status, std::string reason);

  std::string result_var_;
  State store_;
  std::uint64_t fuel_;
  std::uint64_t steps_ = 0;
  std::vector<Frame> stack_;
  Status status_ = Status::running;
  std::optional<Rational> value_;
  std::string reason_;
  bool resume_past_pause_ = false;
  const StmtNode* watched_ = nullptr;
  std::vector<Visit> visits_;
  std::size_t open_visits_ = 0;
};

/// Runs `program` on `input`. Scalars and arrays not in the input start
/// unbound. When `watch` is given, l_state holds the store before its first
/// execution.
Outcome execute(const Program& program, const State& input, std::uint64_t fuel = default_fuel,
                const StmtNode* watch = nullptr);

/// Maps every node of `original` to the node at the same position in
/// `mutant`, stopping at `changed_u`, which maps to `changed_m`. The trees
/// must agree everywhere else.
std::unordered_map<const StmtNode*, Stmt> zip_nodes(const Stmt& original, const Stmt& mutant,
                                                    const StmtNode* changed_u,
                                                    const Stmt& changed_m);

}  // namespace gclrip
