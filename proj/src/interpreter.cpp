#include "gclrip/interpreter.hpp"

#include "gclrip/errors.hpp"
#include "gclrip/predicate.hpp"

namespace gclrip {

const char* to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::returned: return "returned";
    case OutcomeKind::aborted: return "aborted";
    case OutcomeKind::fuel_exhausted: return "fuel_exhausted";
    case OutcomeKind::nondeterministic: return "nondeterministic";
  }
  return "aborted";
}

std::string describe(const Outcome& o) {
  if (o.kind == OutcomeKind::returned) {
    return "returned " + (o.value ? to_string(*o.value) : std::string("?"));
  }
  std::string out = to_string(o.kind);
  if (!o.reason.empty()) out += " (" + o.reason + ")";
  return out;
}

Machine::Machine(std::string result_var, State store, std::uint64_t fuel)
    : result_var_(std::move(result_var)), store_(std::move(store)), fuel_(fuel) {}

void Machine::push(const Stmt& s) { stack_.push_back(Frame{s}); }

void Machine::fail(Status status, std::string reason) {
  status_ = status;
  reason_ = std::move(reason);
}

void Machine::finish_visit() {
  for (auto it = visits_.rbegin(); it != visits_.rend(); ++it) {
    if (!it->after) {
      it->after = store_;
      it->status_after = status_;
      it->value_after = value_;
      break;
    }
  }
  --open_visits_;
}

Machine::Status Machine::run(const StmtNode* pause_at) {
  if (status_ != Status::running && status_ != Status::paused) return status_;
  status_ = Status::running;
  for (;;) {
    if (stack_.empty()) {
      status_ = Status::completed;
      return status_;
    }
    if (!stack_.back().stmt) {
      stack_.pop_back();
      finish_visit();
      continue;
    }
    const Stmt s = *stack_.back().stmt;
    if (pause_at && s.id() == pause_at && !resume_past_pause_) {
      status_ = Status::paused;
      resume_past_pause_ = true;
      return status_;
    }
    resume_past_pause_ = false;
    if (steps_ >= fuel_) {
      fail(Status::fuel_exhausted, "fuel of " + std::to_string(fuel_) + " steps exhausted");
      return status_;
    }
    stack_.pop_back();
    ++steps_;
    if (watched_ && s.id() == watched_) {
      visits_.push_back(Visit{store_, Status::running, std::nullopt, std::nullopt});
      stack_.push_back(Frame{std::nullopt});
      ++open_visits_;
    }
    step(s);
    if (status_ != Status::running) {
      while (open_visits_ > 0) finish_visit();
      return status_;
    }
  }
}

void Machine::step(const Stmt& s) {
  auto choose = [&](const std::vector<GuardedCommand>& commands) -> std::optional<std::size_t> {
    std::optional<std::size_t> chosen;
    std::size_t count = 0;
    for (std::size_t i = 0; i < commands.size(); ++i) {
      if (eval_pred(commands[i].guard, store_)) {
        ++count;
        if (!chosen) chosen = i;
      }
    }
    if (count > 1) {
      fail(Status::nondeterministic, std::to_string(count) + " guards hold at line " +
                                         std::to_string(s.span().line));
      return std::nullopt;
    }
    return chosen;
  };
  try {
    std::visit(
        overloaded{
            [&](const stmt::Assign& a) {
              std::vector<Rational> values;
              values.reserve(a.values.size());
              for (const auto& v : a.values) values.push_back(eval_expr(v, store_));
              for (std::size_t i = 0; i < a.targets.size(); ++i) {
                store_.scalars[a.targets[i]] = values[i];
              }
            },
            [&](const stmt::Skip&) {},
            [&](const stmt::Null&) {},
            [&](const stmt::Return& r) {
              if (r.value) {
                value_ = eval_expr(*r.value, store_);
                store_.scalars[result_var_] = *value_;
                status_ = Status::returned;
                return;
              }
              auto it = store_.scalars.find(result_var_);
              if (it == store_.scalars.end()) {
                fail(Status::aborted, "return without a result");
                return;
              }
              value_ = it->second;
              status_ = Status::returned;
            },
            [&](const stmt::Abort&) { fail(Status::aborted, "abort"); },
            [&](const stmt::Seq& q) {
              push(q.second);
              push(q.first);
            },
            [&](const stmt::If& i) {
              auto chosen = choose(i.commands);
              if (status_ != Status::running) return;
              if (!chosen) {
                fail(Status::aborted, "no guard holds at line " + std::to_string(s.span().line));
                return;
              }
              push(i.commands[*chosen].body);
            },
            [&](const stmt::Do& d) {
              auto chosen = choose(d.commands);
              if (status_ != Status::running || !chosen) return;
              push(s);
              push(d.commands[*chosen].body);
            },
        },
        s.node().value);
  } catch (const EvalError& e) {
    fail(Status::aborted, e.what());
  }
}

void Machine::remap(const std::unordered_map<const StmtNode*, Stmt>& map) {
  for (auto& f : stack_) {
    if (!f.stmt) continue;
    auto it = map.find(f.stmt->id());
    if (it != map.end()) f.stmt = it->second;
  }
}

Outcome Machine::outcome() const {
  Outcome o;
  o.trace_len = steps_;
  o.final_state = store_;
  o.reason = reason_;
  switch (status_) {
    case Status::returned:
      o.kind = OutcomeKind::returned;
      o.value = value_;
      break;
    case Status::completed: {
      auto it = store_.scalars.find(result_var_);
      if (it != store_.scalars.end()) {
        o.kind = OutcomeKind::returned;
        o.value = it->second;
      } else {
        o.kind = OutcomeKind::aborted;
        o.reason = "ended without a result";
      }
      break;
    }
    case Status::fuel_exhausted: o.kind = OutcomeKind::fuel_exhausted; break;
    case Status::nondeterministic: o.kind = OutcomeKind::nondeterministic; break;
    case Status::aborted: o.kind = OutcomeKind::aborted; break;
    case Status::running:
    case Status::paused:
      o.kind = OutcomeKind::aborted;
      o.reason = "execution incomplete";
      break;
  }
  return o;
}

Outcome execute(const Program& program, const State& input, std::uint64_t fuel,
                const StmtNode* watch) {
  Machine m(program.name, input, fuel);
  m.push(program.body);
  std::optional<State> l_state;
  if (watch && m.run(watch) == Machine::Status::paused) l_state = m.store();
  m.run();
  Outcome o = m.outcome();
  o.l_state = std::move(l_state);
  return o;
}

namespace {

void zip_into(const Stmt& o, const Stmt& m, const StmtNode* changed_u, const Stmt& changed_m,
              std::unordered_map<const StmtNode*, Stmt>& out) {
  if (o.id() == changed_u) {
    out.emplace(o.id(), changed_m);
    return;
  }
  out.emplace(o.id(), m);
  if (o.node().value.index() != m.node().value.index()) {
    throw Error("program shapes diverge outside the changed statement");
  }
  if (auto* so = o.get<stmt::Seq>()) {
    const auto* sm = m.get<stmt::Seq>();
    zip_into(so->first, sm->first, changed_u, changed_m, out);
    zip_into(so->second, sm->second, changed_u, changed_m, out);
    return;
  }
  const auto* co = guarded_commands(o);
  const auto* cm = guarded_commands(m);
  if (co) {
    if (co->size() != cm->size()) throw Error("program shapes diverge outside the changed statement");
    for (std::size_t i = 0; i < co->size(); ++i) {
      zip_into((*co)[i].body, (*cm)[i].body, changed_u, changed_m, out);
    }
  }
}

}  // namespace

std::unordered_map<const StmtNode*, Stmt> zip_nodes(const Stmt& original, const Stmt& mutant,
                                                    const StmtNode* changed_u,
                                                    const Stmt& changed_m) {
  std::unordered_map<const StmtNode*, Stmt> out;
  zip_into(original, mutant, changed_u, changed_m, out);
  return out;
}

}  // namespace gclrip
