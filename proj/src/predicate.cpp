#include "gclrip/predicate.hpp"

#include <algorithm>

#include "gclrip/errors.hpp"
#include "gclrip/parser.hpp"

namespace gclrip {

// ---------------------------------------------------------------------------
// Substitution

namespace {

template <class F>
Expr map_vars(const Expr& e, const F& replace) {
  return std::visit(
      overloaded{
          [&](const expr::IntLit&) { return e; },
          [&](const expr::Var& x) { return replace(x.name, e); },
          [&](const expr::ArrayRead& x) { return at(x.array, map_vars(x.index, replace)); },
          [&](const expr::ArrayLength&) { return e; },
          [&](const expr::Neg& x) { return -map_vars(x.operand, replace); },
          [&](const expr::Binary& x) {
            Expr l = map_vars(x.lhs, replace);
            Expr r = map_vars(x.rhs, replace);
            switch (x.op) {
              case ArithOp::add: return l + r;
              case ArithOp::sub: return l - r;
              case ArithOp::mul: return l * r;
              case ArithOp::div: return l / r;
            }
            return e;
          },
          [&](const expr::Floor& x) { return floor(map_vars(x.operand, replace)); },
      },
      e.node().value);
}

template <class CmpF, class MarkerF>
Pred map_atoms(const Pred& p, const CmpF& on_cmp, const MarkerF& on_marker) {
  return std::visit(
      overloaded{
          [&](const pred::BoolLit&) { return p; },
          [&](const pred::Cmp& x) { return on_cmp(x); },
          [&](const pred::Not& x) { return !map_atoms(x.operand, on_cmp, on_marker); },
          [&](const pred::And& x) {
            return map_atoms(x.lhs, on_cmp, on_marker) && map_atoms(x.rhs, on_cmp, on_marker);
          },
          [&](const pred::Or& x) {
            return map_atoms(x.lhs, on_cmp, on_marker) || map_atoms(x.rhs, on_cmp, on_marker);
          },
          [&](const pred::Implies& x) {
            return implies(map_atoms(x.lhs, on_cmp, on_marker),
                           map_atoms(x.rhs, on_cmp, on_marker));
          },
          [&](const pred::Marker& x) { return on_marker(x); },
      },
      p.node().value);
}

}  // namespace

bool is_fresh_name(const std::string& name) {
  return name.find('$') != std::string::npos;
}

Expr substitute(const Expr& e, const std::string& name, const Expr& value) {
  return map_vars(e, [&](const std::string& v, const Expr& self) {
    return v == name ? value : self;
  });
}

Expr substitute_all(const Expr& e, const std::map<std::string, Expr>& values) {
  return map_vars(e, [&](const std::string& v, const Expr& self) {
    auto it = values.find(v);
    return it == values.end() ? self : it->second;
  });
}

Pred substitute(const Pred& p, const std::string& name, const Expr& value) {
  return map_atoms(
      p,
      [&](const pred::Cmp& c) {
        return cmp(c.op, substitute(c.lhs, name, value), substitute(c.rhs, name, value));
      },
      [&](const pred::Marker& m) {
        auto subs = m.substitutions;
        subs.emplace_back(name, value);
        return marker(m.tag, std::move(subs));
      });
}

Pred substitute_all(const Pred& p, const std::map<std::string, Expr>& values) {
  if (values.empty()) return p;
  bool interfering = false;
  for (const auto& [_, value] : values) {
    for (const auto& n : free_vars(value).names) {
      if (values.count(n)) interfering = true;
    }
  }
  std::vector<Substitution> sequential;
  if (interfering) {
    for (const auto& [name, _] : values) sequential.emplace_back(name, var(name + "$t"));
    for (const auto& [name, value] : values) sequential.emplace_back(name + "$t", value);
  } else {
    for (const auto& [name, value] : values) sequential.emplace_back(name, value);
  }
  return map_atoms(
      p,
      [&](const pred::Cmp& c) {
        return cmp(c.op, substitute_all(c.lhs, values), substitute_all(c.rhs, values));
      },
      [&](const pred::Marker& m) {
        auto subs = m.substitutions;
        subs.insert(subs.end(), sequential.begin(), sequential.end());
        return marker(m.tag, std::move(subs));
      });
}

std::map<std::string, Expr> compose(const std::vector<Substitution>& sequential) {
  std::map<std::string, Expr> out;
  for (const auto& [name, value] : sequential) {
    for (auto& [_, image] : out) image = substitute(image, name, value);
    out.emplace(name, value);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

Rational eval_expr(const Expr& e, const State& s) {
  return std::visit(
      overloaded{
          [&](const expr::IntLit& x) { return Rational(x.value); },
          [&](const expr::Var& x) {
            auto it = s.scalars.find(x.name);
            if (it == s.scalars.end()) {
              throw EvalError(EvalError::Kind::unbound_variable,
                              "unbound variable '" + x.name + "'");
            }
            return it->second;
          },
          [&](const expr::ArrayRead& x) {
            auto it = s.arrays.find(x.array);
            if (it == s.arrays.end()) {
              throw EvalError(EvalError::Kind::unbound_variable,
                              "unbound array '" + x.array + "'");
            }
            Rational index = eval_expr(x.index, s);
            if (!is_integral(index)) {
              throw EvalError(EvalError::Kind::non_integral_index,
                              "non-integral index " + to_string(index) + " into '" +
                                  x.array + "'");
            }
            Integer i = boost::multiprecision::numerator(index);
            if (i < 0 || i >= it->second.size()) {
              throw EvalError(EvalError::Kind::index_out_of_bounds,
                              "index " + i.str() + " out of bounds for '" + x.array + "'");
            }
            return Rational(it->second[static_cast<std::size_t>(i)]);
          },
          [&](const expr::ArrayLength& x) {
            auto it = s.arrays.find(x.array);
            if (it == s.arrays.end()) {
              throw EvalError(EvalError::Kind::unbound_variable,
                              "unbound array '" + x.array + "'");
            }
            return Rational(static_cast<long>(it->second.size()));
          },
          [&](const expr::Neg& x) { return Rational(-eval_expr(x.operand, s)); },
          [&](const expr::Binary& x) {
            Rational l = eval_expr(x.lhs, s);
            Rational r = eval_expr(x.rhs, s);
            switch (x.op) {
              case ArithOp::add: return Rational(l + r);
              case ArithOp::sub: return Rational(l - r);
              case ArithOp::mul: return Rational(l * r);
              case ArithOp::div:
                if (r == 0) {
                  throw EvalError(EvalError::Kind::division_by_zero, "division by zero");
                }
                return Rational(l / r);
            }
            return l;
          },
          [&](const expr::Floor& x) { return Rational(floor_of(eval_expr(x.operand, s))); },
      },
      e.node().value);
}

namespace {

bool compare(CmpOp op, const Rational& l, const Rational& r) {
  switch (op) {
    case CmpOp::eq: return l == r;
    case CmpOp::ne: return l != r;
    case CmpOp::lt: return l < r;
    case CmpOp::le: return l <= r;
    case CmpOp::gt: return l > r;
    case CmpOp::ge: return l >= r;
  }
  return false;
}

}  // namespace

bool eval_pred(const Pred& p, const State& s,
               const std::function<bool(const pred::Marker&)>& marker_value) {
  return std::visit(
      overloaded{
          [&](const pred::BoolLit& x) { return x.value; },
          [&](const pred::Cmp& x) {
            return compare(x.op, eval_expr(x.lhs, s), eval_expr(x.rhs, s));
          },
          [&](const pred::Not& x) { return !eval_pred(x.operand, s, marker_value); },
          [&](const pred::And& x) {
            return eval_pred(x.lhs, s, marker_value) && eval_pred(x.rhs, s, marker_value);
          },
          [&](const pred::Or& x) {
            return eval_pred(x.lhs, s, marker_value) || eval_pred(x.rhs, s, marker_value);
          },
          [&](const pred::Implies& x) {
            return !eval_pred(x.lhs, s, marker_value) || eval_pred(x.rhs, s, marker_value);
          },
          [&](const pred::Marker& x) { return marker_value(x); },
      },
      p.node().value);
}

bool eval_pred(const Pred& p, const State& s) {
  return eval_pred(p, s, [](const pred::Marker& m) -> bool {
    throw EvalError(EvalError::Kind::marker_not_ground,
                    "cannot evaluate postcondition marker '" + m.tag + "'");
  });
}

// ---------------------------------------------------------------------------
// Simplification

pred::Marker canonical_marker(const pred::Marker& m,
                              const std::optional<std::set<std::string>>& scope) {
  std::map<std::string, Expr> composed;
  for (const auto& [name, value] : compose(m.substitutions)) {
    if (is_fresh_name(name)) continue;
    if (scope && !scope->count(name)) continue;
    if (auto* v = value.get<expr::Var>(); v && v->name == name) continue;
    composed.emplace(name, value);
  }
  for (const auto& [_, value] : composed) {
    for (const auto& n : free_vars(value).names) {
      if (composed.count(n)) return m;
    }
  }
  return pred::Marker{m.tag, {composed.begin(), composed.end()}};
}

namespace {

class Simplifier {
 public:
  explicit Simplifier(const SimplifyOptions& options) : options_(options) {}

  Pred run(const Pred& p) const {
    return std::visit(
        overloaded{
            [&](const pred::BoolLit&) { return p; },
            [&](const pred::Cmp& x) { return fold(x, p); },
            [&](const pred::Not& x) { return negated(run(x.operand)); },
            [&](const pred::And&) { return junction(p, true); },
            [&](const pred::Or&) { return junction(p, false); },
            [&](const pred::Implies& x) {
              Pred l = run(x.lhs);
              Pred r = run(x.rhs);
              if (auto* b = l.get<pred::BoolLit>()) return b->value ? r : truth(true);
              if (auto* b = r.get<pred::BoolLit>()) return b->value ? r : negated(l);
              if (l == r) return truth(true);
              return implies(l, r);
            },
            [&](const pred::Marker& x) {
              pred::Marker c = canonical_marker(x, options_.marker_scope);
              return marker(std::move(c.tag), std::move(c.substitutions));
            },
        },
        p.node().value);
  }

 private:
  static Pred fold(const pred::Cmp& c, const Pred& self) {
    if (is_ground(c.lhs) && is_ground(c.rhs)) {
      try {
        return truth(compare(c.op, eval_expr(c.lhs, {}), eval_expr(c.rhs, {})));
      } catch (const EvalError&) {
        return self;
      }
    }
    if (c.lhs == c.rhs) {
      return truth(c.op == CmpOp::eq || c.op == CmpOp::le || c.op == CmpOp::ge);
    }
    return self;
  }

  /// Negation of an already simplified predicate, pushed inwards.
  Pred negated(const Pred& p) const {
    return std::visit(
        overloaded{
            [&](const pred::BoolLit& x) { return truth(!x.value); },
            [&](const pred::Cmp& x) { return cmp(negate(x.op), x.lhs, x.rhs); },
            [&](const pred::Not& x) { return x.operand; },
            [&](const pred::And& x) { return run(!x.lhs || !x.rhs); },
            [&](const pred::Or& x) { return run(!x.lhs && !x.rhs); },
            [&](const pred::Implies& x) { return run(x.lhs && !x.rhs); },
            [&](const pred::Marker&) { return !p; },
        },
        p.node().value);
  }

  static void gather(const Pred& p, bool conj, std::vector<Pred>& out) {
    if (conj) {
      if (auto* a = p.get<pred::And>()) {
        gather(a->lhs, conj, out);
        gather(a->rhs, conj, out);
        return;
      }
    } else if (auto* o = p.get<pred::Or>()) {
      gather(o->lhs, conj, out);
      gather(o->rhs, conj, out);
      return;
    }
    out.push_back(p);
  }

  Pred junction(const Pred& p, bool conj) const {
    std::vector<Pred> raw;
    gather(p, conj, raw);
    std::vector<Pred> items;
    for (const Pred& r : raw) {
      std::vector<Pred> parts;
      gather(run(r), conj, parts);
      for (Pred& part : parts) {
        if (auto* b = part.get<pred::BoolLit>()) {
          // The absorbing element decides; the unit disappears.
          if (b->value != conj) return truth(!conj);
          continue;
        }
        if (std::find(items.begin(), items.end(), part) == items.end()) {
          items.push_back(std::move(part));
        }
      }
    }
    for (std::size_t i = 0; i < items.size(); ++i) {
      Pred neg = negated(items[i]);
      for (std::size_t j = 0; j < items.size(); ++j) {
        if (i != j && items[j] == neg) return truth(!conj);
      }
    }
    absorb(items, conj);
    return conj ? conjunction(items) : disjunction(items);
  }

  // x || (x && y) -> x and x || (!x && y) -> x || y, with the duals for &&.
  // Each rewrite is applied in place, so later ones see earlier results.
  void absorb(std::vector<Pred>& items, bool conj) const {
    auto other_has = [&](std::size_t i, const Pred& q) {
      for (std::size_t j = 0; j < items.size(); ++j) {
        if (j != i && items[j] == q) return true;
      }
      return false;
    };
    for (std::size_t i = 0; i < items.size();) {
      const bool dual = conj ? items[i].get<pred::Or>() != nullptr : items[i].get<pred::And>() != nullptr;
      if (!dual) {
        ++i;
        continue;
      }
      std::vector<Pred> parts;
      gather(items[i], !conj, parts);
      bool subsumed = false;
      std::vector<Pred> kept;
      for (const Pred& part : parts) {
        if (other_has(i, part)) subsumed = true;
        if (!other_has(i, negated(part))) kept.push_back(part);
      }
      if (subsumed) {
        items.erase(items.begin() + static_cast<std::ptrdiff_t>(i));
        continue;
      }
      if (kept.size() != parts.size()) {
        items[i] = conj ? disjunction(kept) : conjunction(kept);
      }
      ++i;
    }
  }

  const SimplifyOptions& options_;
};

}  // namespace

Pred simplify(const Pred& p, const SimplifyOptions& options) {
  Simplifier s(options);
  Pred cur = s.run(p);
  for (int i = 0; i < 64; ++i) {
    Pred next = s.run(cur);
    if (next == cur) return cur;
    cur = std::move(next);
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Bounded comparison

namespace {

std::string marker_key(const pred::Marker& m, const State& s, const MarkerPolicy& policy) {
  std::string key = m.tag;
  auto images = compose(m.substitutions);
  for (const auto& name : policy.projection) {
    key += '|';
    auto it = images.find(name);
    Expr image = it == images.end() ? var(name) : it->second;
    try {
      key += to_string(eval_expr(image, s));
    } catch (const EvalError&) {
      key += "?" + to_string(image);
    }
  }
  return key;
}

void collect_keys(const Pred& p, const State& s, const MarkerPolicy& policy,
                  std::vector<std::string>& keys) {
  std::visit(overloaded{
                 [&](const pred::BoolLit&) {},
                 [&](const pred::Cmp&) {},
                 [&](const pred::Not& x) { collect_keys(x.operand, s, policy, keys); },
                 [&](const pred::And& x) {
                   collect_keys(x.lhs, s, policy, keys);
                   collect_keys(x.rhs, s, policy, keys);
                 },
                 [&](const pred::Or& x) {
                   collect_keys(x.lhs, s, policy, keys);
                   collect_keys(x.rhs, s, policy, keys);
                 },
                 [&](const pred::Implies& x) {
                   collect_keys(x.lhs, s, policy, keys);
                   collect_keys(x.rhs, s, policy, keys);
                 },
                 [&](const pred::Marker& x) {
                   auto k = marker_key(x, s, policy);
                   if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
                 },
             },
             p.node().value);
}

}  // namespace

bool differ_at(const Pred& p1, const Pred& p2, const State& s, const MarkerPolicy& markers) {
  std::vector<std::string> keys;
  collect_keys(p1, s, markers, keys);
  collect_keys(p2, s, markers, keys);
  if (keys.empty()) return eval_pred(p1, s) != eval_pred(p2, s);
  if (keys.size() > 20) throw Error("too many distinct postcondition markers to compare");
  for (std::uint32_t mask = 0; mask < (1u << keys.size()); ++mask) {
    auto value = [&](const pred::Marker& m) {
      auto k = marker_key(m, s, markers);
      auto pos = std::find(keys.begin(), keys.end(), k) - keys.begin();
      return ((mask >> pos) & 1u) != 0;
    };
    if (eval_pred(p1, s, value) != eval_pred(p2, s, value)) return true;
  }
  return false;
}

ComparisonResult bounded_compare(const Pred& p1, const Pred& p2, const DomainSpec& domain,
                                 const CompareOptions& options) {
  ComparisonResult result;
  result.domain = domain;
  for_each_state(domain, options.max_states, [&](const State& s) {
    if (options.assume && !eval_pred(*options.assume, s)) return;
    ++result.states_checked;
    if (differ_at(p1, p2, s, options.markers)) {
      ++result.differing_states;
      result.verdict = Verdict::differ;
      if (result.witnesses.size() < options.max_witnesses) result.witnesses.push_back(s);
    }
  });
  return result;
}

const char* to_string(Verdict v) {
  return v == Verdict::differ ? "differ" : "equivalent_on_domain";
}

}  // namespace gclrip
