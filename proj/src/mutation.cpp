#include "gclrip/mutation.hpp"

#include "gclrip/errors.hpp"
#include "gclrip/parser.hpp"

namespace gclrip {

const char* to_string(ModificationKind k) {
  return k == ModificationKind::statement ? "statement" : "guarded_command";
}

const char* to_string(GuardKind k) { return k == GuardKind::alternative ? "if" : "do"; }

const char* to_string(ModificationRow r) {
  switch (r) {
    case ModificationRow::expr_mutated: return "expr_mutated";
    case ModificationRow::target_mutated: return "target_mutated";
    case ModificationRow::multi_expr_component: return "multi_expr_component";
    case ModificationRow::multi_target_component: return "multi_target_component";
    case ModificationRow::if_guard_mutated: return "if_guard_mutated";
    case ModificationRow::do_guard_mutated: return "do_guard_mutated";
    case ModificationRow::body_stmt_mutated: return "body_stmt_mutated";
    case ModificationRow::statement_replaced: return "statement_replaced";
  }
  return "statement_replaced";
}

namespace {

struct ShapeMismatch {
  std::string message;
};

/// Branch index when u and m are both If or both Do, agree on guards (and
/// annotation), and differ in exactly one branch body.
std::optional<std::size_t> single_branch_change(const Stmt& u, const Stmt& m) {
  if (is_loop(u) != is_loop(m) || is_alternative(u) != is_alternative(m)) return std::nullopt;
  const auto* cu = guarded_commands(u);
  const auto* cm = guarded_commands(m);
  if (!cu || !cm || cu->size() != cm->size()) return std::nullopt;
  if (auto* du = u.get<stmt::Do>()) {
    const auto& au = du->annotation;
    const auto& am = m.get<stmt::Do>()->annotation;
    if (au.has_value() != am.has_value()) return std::nullopt;
    if (au && (!(au->invariant == am->invariant) || !(au->variant == am->variant) ||
               au->modified != am->modified)) {
      return std::nullopt;
    }
  }
  std::optional<std::size_t> changed;
  for (std::size_t j = 0; j < cu->size(); ++j) {
    if (!((*cu)[j].guard == (*cm)[j].guard)) return std::nullopt;
    if (!((*cu)[j].body == (*cm)[j].body)) {
      if (changed) return std::nullopt;
      changed = j;
    }
  }
  return changed;
}

struct Differ {
  ModificationTemplate& t;

  /// Finds the change in two statement lists; returns the index and fills
  /// t.guard_path / changed statements for deeper levels.
  void level(const std::vector<Stmt>& u, const std::vector<Stmt>& m, bool top) {
    if (u.size() != m.size()) {
      throw ShapeMismatch{"statement lists differ in length (" + std::to_string(u.size()) +
                          " vs " + std::to_string(m.size()) + ")"};
    }
    std::vector<std::size_t> diffs;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (!(u[i] == m[i])) diffs.push_back(i);
    }
    if (diffs.empty()) {
      throw MutationError(MutationError::Kind::no_difference, "programs are structurally equal");
    }
    if (diffs.size() > 1) {
      const Span a = u[diffs[0]].span();
      const Span b = u[diffs[1]].span();
      throw MutationError(MutationError::Kind::multiple_differences,
                          "changes at " + std::to_string(a.line) + ":" +
                              std::to_string(a.column) + " and " + std::to_string(b.line) +
                              ":" + std::to_string(b.column));
    }
    const std::size_t k = diffs[0];
    const Stmt& su = u[k];
    const Stmt& sm = m[k];
    const std::vector<Stmt> before(u.begin(), u.begin() + static_cast<long>(k));
    const std::vector<Stmt> after(u.begin() + static_cast<long>(k) + 1, u.end());

    const std::size_t path_size = t.guard_path.size();
    const std::size_t loc_size = t.location.size();
    t.location.push_back(k);
    if (top) {
      t.before = before;
      t.after = after;
      t.st_u = su;
      t.st_m = sm;
    } else {
      t.guard_path.back().before = before;
      t.guard_path.back().after = after;
    }
    if (auto j = single_branch_change(su, sm)) {
      const auto& cu = *guarded_commands(su);
      const auto& cm = *guarded_commands(sm);
      t.guard_path.push_back(GuardStep{
          is_loop(su) ? GuardKind::iteration : GuardKind::alternative, *j, cu[*j].guard, su, sm,
          {}, {}});
      t.location.push_back(*j);
      try {
        level(flatten(cu[*j].body), flatten(cm[*j].body), false);
        return;
      } catch (const ShapeMismatch&) {
        // The branch was rewritten wholesale: the If/Do itself is the change.
        t.guard_path.erase(t.guard_path.begin() + static_cast<std::ptrdiff_t>(path_size),
                           t.guard_path.end());
        t.location.resize(loc_size + 1);
      }
    }
    t.st_ju = su;
    t.st_jm = sm;
  }
};

std::vector<Stmt> concat(std::vector<Stmt> a, const std::vector<Stmt>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

bool equal_lists(const std::vector<Expr>& a, const std::vector<Expr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] == b[i])) return false;
  }
  return true;
}

}  // namespace

ModificationTemplate locate_mutation(const Program& original, const Program& mutant) {
  if (original.name != mutant.name || original.params != mutant.params) {
    throw MutationError(MutationError::Kind::signature_mismatch,
                        "programs differ in name or parameters");
  }
  const Stmt u = normalize(original.body);
  const Stmt m = normalize(mutant.body);
  ModificationTemplate t;
  try {
    Differ{t}.level(flatten(u), flatten(m), true);
  } catch (const ShapeMismatch& e) {
    throw MutationError(MutationError::Kind::shape_mismatch, e.message);
  }
  t.prog_b = sequence(t.before);
  t.prog_a = sequence(t.after);
  if (t.guard_path.empty()) {
    t.kind = ModificationKind::statement;
    t.st_ju = null_stmt();
    t.st_jm = null_stmt();
  } else {
    t.kind = ModificationKind::guarded_command;
    std::vector<Stmt> jb;
    std::vector<Stmt> ja;
    for (const auto& step : t.guard_path) jb = concat(jb, step.before);
    for (auto it = t.guard_path.rbegin(); it != t.guard_path.rend(); ++it) {
      ja = concat(ja, it->after);
    }
    t.prog_jb = sequence(jb);
    t.prog_ja = sequence(ja);
  }
  t.span_u = t.changed_u().span();
  t.span_m = t.changed_m().span();
  return t;
}

ModificationRow classify_pair(const Stmt& u, const Stmt& m) {
  const auto* au = u.get<stmt::Assign>();
  const auto* am = m.get<stmt::Assign>();
  if (au && am && au->targets.size() == am->targets.size()) {
    const bool same_targets = au->targets == am->targets;
    const bool same_values = equal_lists(au->values, am->values);
    const bool multi = au->targets.size() > 1;
    if (same_targets && !same_values) {
      return multi ? ModificationRow::multi_expr_component : ModificationRow::expr_mutated;
    }
    if (!same_targets && same_values) {
      return multi ? ModificationRow::multi_target_component : ModificationRow::target_mutated;
    }
    return ModificationRow::statement_replaced;
  }
  const auto* cu = guarded_commands(u);
  const auto* cm = guarded_commands(m);
  if (cu && cm && is_loop(u) == is_loop(m) && cu->size() == cm->size()) {
    bool bodies_equal = true;
    bool guards_equal = true;
    for (std::size_t j = 0; j < cu->size(); ++j) {
      if (!((*cu)[j].body == (*cm)[j].body)) bodies_equal = false;
      if (!((*cu)[j].guard == (*cm)[j].guard)) guards_equal = false;
    }
    if (bodies_equal && !guards_equal) {
      return is_loop(u) ? ModificationRow::do_guard_mutated : ModificationRow::if_guard_mutated;
    }
  }
  return ModificationRow::statement_replaced;
}

ModificationClass classify(const ModificationTemplate& t) {
  if (t.kind == ModificationKind::statement) return {classify_pair(t.st_u, t.st_m), std::nullopt};
  return {ModificationRow::body_stmt_mutated, classify_pair(t.st_ju, t.st_jm)};
}

Stmt reassemble(const ModificationTemplate& t, bool mutant) {
  Stmt st = mutant ? t.changed_m() : t.changed_u();
  for (auto it = t.guard_path.rbegin(); it != t.guard_path.rend(); ++it) {
    std::vector<Stmt> items = it->before;
    items.push_back(st);
    items.insert(items.end(), it->after.begin(), it->after.end());
    st = with_branch_body(mutant ? it->enclosing_m : it->enclosing_u, it->branch, sequence(items));
  }
  std::vector<Stmt> items = t.before;
  items.push_back(st);
  items.insert(items.end(), t.after.begin(), t.after.end());
  return sequence(items);
}

Stmt resolve(const Stmt& body, const Location& location) {
  if (location.empty() || location.size() % 2 == 0) throw Error("malformed location");
  Stmt cur = body;
  for (std::size_t i = 0;; i += 2) {
    auto items = flatten(cur);
    if (location[i] >= items.size()) throw Error("location out of range");
    Stmt item = items[location[i]];
    if (i + 1 == location.size()) return item;
    const auto* commands = guarded_commands(item);
    if (!commands || location[i + 1] >= commands->size()) throw Error("location out of range");
    cur = (*commands)[location[i + 1]].body;
  }
}

}  // namespace gclrip
