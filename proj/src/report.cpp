#include "gclrip/report.hpp"

#include <limits>
#include <map>
#include <sstream>

#include "gclrip/parser.hpp"

namespace gclrip {

Json to_json(const Rational& r) {
  if (is_integral(r)) {
    const Integer n = boost::multiprecision::numerator(r);
    if (n >= std::numeric_limits<long long>::min() && n <= std::numeric_limits<long long>::max()) {
      return Json(static_cast<long long>(n));
    }
  }
  return Json(to_string(r));
}

Json to_json(const State& s) {
  std::map<std::string, Json> fields;
  for (const auto& [k, v] : s.scalars) fields[k] = to_json(v);
  for (const auto& [k, v] : s.arrays) {
    Json items = Json::array();
    for (const auto& e : v) items.push_back(to_json(Rational(e)));
    fields[k] = items;
  }
  Json out = Json::object();
  for (auto& [k, v] : fields) out[k] = std::move(v);
  return out;
}

Json to_json(const std::set<State>& states) {
  Json out = Json::array();
  for (const auto& s : states) out.push_back(to_json(s));
  return out;
}

Json to_json(const DomainSpec& d) {
  Json out = Json::object();
  for (const auto& [k, r] : d.scalars) {
    out[k] = Json{{"lo", to_json(Rational(r.lo))}, {"hi", to_json(Rational(r.hi))}};
  }
  for (const auto& [k, a] : d.arrays) {
    out[k] = Json{{"len_lo", a.len_lo},
                  {"len_hi", a.len_hi},
                  {"elem_lo", to_json(Rational(a.elem_lo))},
                  {"elem_hi", to_json(Rational(a.elem_hi))}};
  }
  return out;
}

Json to_json(const Diagnostic& d) {
  return Json{{"severity", d.severity == Severity::error ? "error" : "warning"},
              {"line", d.span.line},
              {"column", d.span.column},
              {"message", d.message}};
}

Json to_json(const Program& p, const std::vector<Diagnostic>& diagnostics) {
  Json diags = Json::array();
  for (const auto& d : diagnostics) diags.push_back(to_json(d));
  return Json{{"name", p.name},
              {"params", p.params},
              {"text", pretty_print(p)},
              {"diagnostics", diags}};
}

namespace {

Json steps(const std::vector<DerivationStep>& derivation) {
  Json out = Json::array();
  for (const auto& s : derivation) {
    out.push_back(Json{{"rule", s.rule}, {"before", to_string(s.before)}, {"after", to_string(s.after)}});
  }
  return out;
}

std::string stmt_text(const Stmt& s) { return pretty_print(s, 0); }

std::string indent_lines(const std::string& text, const std::string& pad) {
  std::string out;
  for (char c : text) {
    out += c;
    if (c == '\n') out += pad;
  }
  return out;
}

}  // namespace

Json to_json(const WpResult& r) {
  return Json{{"predicate", to_string(r.predicate)}, {"derivation", steps(r.derivation)}};
}

Json to_json(const RcResult& r) {
  return Json{{"predicate", to_string(r.predicate)},
              {"loop_policy", to_string(r.loop_policy_used)},
              {"derivation", steps(r.derivation)}};
}

Json to_json(const ModificationTemplate& t) {
  const ModificationClass c = classify(t);
  Json out{{"kind", to_string(t.kind)},
           {"class", to_string(c.row)},
           {"location", t.location},
           {"line", t.span_m.line},
           {"column", t.span_m.column},
           {"prog_b", stmt_text(t.prog_b)},
           {"st_u", stmt_text(t.st_u)},
           {"st_m", stmt_text(t.st_m)},
           {"prog_a", stmt_text(t.prog_a)}};
  if (c.inner) out["inner_class"] = to_string(*c.inner);
  if (t.kind == ModificationKind::guarded_command) {
    Json path = Json::array();
    for (const auto& step : t.guard_path) {
      path.push_back(Json{{"kind", to_string(step.kind)},
                          {"branch", step.branch},
                          {"guard", to_string(step.guard)}});
    }
    out["guard_path"] = path;
    out["prog_jb"] = stmt_text(t.prog_jb);
    out["st_ju"] = stmt_text(t.st_ju);
    out["st_jm"] = stmt_text(t.st_jm);
    out["prog_ja"] = stmt_text(t.prog_ja);
  }
  return out;
}

Json to_json(const KillReport& k) {
  return Json{{"strong_kill", to_json(k.strong_kill)},
              {"weak_kill", to_json(k.weak_kill)},
              {"reached", to_json(k.reached)},
              {"total_enumerated", k.total_enumerated},
              {"timeouts", k.timeouts}};
}

Json to_json(const RipReport& r) {
  Json infection{{"witnesses", to_json(r.infection.semantic_witnesses)}};
  if (r.infection.symbolic) infection["symbolic"] = to_string(*r.infection.symbolic);
  if (r.infection.symbolic_agrees) infection["symbolic_agrees"] = *r.infection.symbolic_agrees;
  Json propagation{{"wp_u", to_string(r.propagation.wp_u)},
                   {"wp_m", to_string(r.propagation.wp_m)},
                   {"witnesses", to_json(r.propagation.semantic)}};
  if (r.propagation.symbolic_agrees) {
    propagation["symbolic_agrees"] = *r.propagation.symbolic_agrees;
  }
  Json out{{"program", r.program_name},
           {"modification", to_json(r.modification)},
           {"reachability", to_string(r.reachability)},
           {"reachability_loop_policy", to_string(r.reachability_policy)},
           {"infection", infection},
           {"propagation", propagation},
           {"full_spec", to_json(r.full_spec)},
           {"classification", to_string(r.classification)},
           {"oracle", to_json(r.oracle)},
           {"domain", to_json(r.domain)},
           {"unroll_bound", r.unroll_bound},
           {"timeouts", r.timeouts}};
  return out;
}

Json to_json(const LwdcResult& r) {
  Json outcomes = Json::array();
  for (const auto& o : r.outcomes) {
    Json item{{"obligation", to_string(o.obligation)}, {"holds", o.holds}};
    if (o.branch) item["branch"] = *o.branch;
    if (o.counterexample) item["counterexample"] = to_json(*o.counterexample);
    outcomes.push_back(item);
  }
  Json out{{"holds_on_domain", r.holds_on_domain},
           {"failing_obligation", to_string(r.failing_obligation)},
           {"states_checked", r.states_checked},
           {"outcomes", outcomes}};
  if (r.counterexample) out["counterexample"] = to_json(*r.counterexample);
  return out;
}

std::string render_text(const WpResult& r) {
  std::ostringstream out;
  for (std::size_t i = 0; i < r.derivation.size(); ++i) {
    const auto& s = r.derivation[i];
    out << "  [" << i + 1 << "] " << s.rule << "\n      " << to_string(s.after) << "\n";
  }
  out << "wp: " << to_string(r.predicate) << "\n";
  return out.str();
}

std::string render_text(const RcResult& r) {
  std::ostringstream out;
  out << "rc: " << to_string(r.predicate) << "\n";
  out << "loop policy: " << to_string(r.loop_policy_used) << "\n";
  return out.str();
}

std::string render_text(const ModificationTemplate& t) {
  std::ostringstream out;
  const ModificationClass c = classify(t);
  const std::string pad(10, ' ');
  auto field = [&](const char* name, const Stmt& s) {
    std::string label = name;
    label.resize(8, ' ');
    out << "  " << label << ": " << indent_lines(stmt_text(s), pad) << "\n";
  };
  out << "kind: " << to_string(t.kind) << " (" << to_string(c.row);
  if (c.inner) out << ", inner " << to_string(*c.inner);
  out << ") at " << t.span_m.line << ":" << t.span_m.column << "\n";
  field("prog_b", t.prog_b);
  field("st_u", t.st_u);
  field("st_m", t.st_m);
  field("prog_a", t.prog_a);
  if (t.kind == ModificationKind::guarded_command) {
    for (const auto& step : t.guard_path) {
      out << "  G_j     : " << to_string(step.guard) << "  (" << to_string(step.kind)
          << " branch " << step.branch << ")\n";
    }
    field("prog_jb", t.prog_jb);
    field("st_ju", t.st_ju);
    field("st_jm", t.st_jm);
    field("prog_ja", t.prog_ja);
  }
  return out.str();
}

namespace {

std::string state_list(const std::set<State>& states) {
  std::string out;
  for (const auto& s : states) out += "    " + to_string(s) + "\n";
  return out;
}

}  // namespace

std::string render_text(const KillReport& k) {
  std::ostringstream out;
  out << "inputs enumerated: " << k.total_enumerated << " (timeouts " << k.timeouts << ")\n";
  out << "reached: " << k.reached.size() << "\n";
  out << "weak kill: " << k.weak_kill.size() << "\n" << state_list(k.weak_kill);
  out << "strong kill: " << k.strong_kill.size() << "\n" << state_list(k.strong_kill);
  return out.str();
}

std::string render_text(const RipReport& r) {
  std::ostringstream out;
  auto flag = [](const std::optional<bool>& b) {
    return !b ? std::string() : *b ? " [symbolic and semantic agree]" : " [symbolic and semantic DISAGREE]";
  };
  out << "program: " << r.program_name << "\n";
  out << render_text(r.modification);
  out << "reachability: " << to_string(r.reachability);
  if (r.reachability_policy != LoopPolicy::none) {
    out << "  (loop policy " << to_string(r.reachability_policy) << ")";
  }
  out << "\n";
  out << "infection: "
      << (r.infection.symbolic ? to_string(*r.infection.symbolic) : std::string("(no closed form)"))
      << flag(r.infection.symbolic_agrees) << "\n";
  out << "  infected L-states: " << r.infection.semantic_witnesses.size() << " of "
      << r.infection.reachable_l_states.size() << " reached\n";
  out << "propagation:" << flag(r.propagation.symbolic_agrees) << "\n";
  out << "  wp_u: " << to_string(r.propagation.wp_u) << "\n";
  out << "  wp_m: " << to_string(r.propagation.wp_m) << "\n";
  out << "  propagating L-states: " << r.propagation.semantic.size() << "\n";
  out << "full test specification on " << to_string(r.domain) << " (unroll " << r.unroll_bound
      << "): " << r.full_spec.size() << " inputs\n"
      << state_list(r.full_spec);
  out << "classification: " << to_string(r.classification) << "\n";
  out << "oracle: strong " << r.oracle.strong_kill.size() << ", weak " << r.oracle.weak_kill.size()
      << ", reached " << r.oracle.reached.size() << " of " << r.oracle.total_enumerated;
  if (r.timeouts) out << ", timeouts " << r.timeouts;
  out << "\n";
  return out.str();
}

std::string render_text(const Diagnostic& d) {
  return std::to_string(d.span.line) + ":" + std::to_string(d.span.column) + ": " +
         (d.severity == Severity::error ? "error: " : "warning: ") + d.message;
}

}  // namespace gclrip
