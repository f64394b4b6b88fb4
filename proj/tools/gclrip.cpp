// gclrip: RIP analysis of guarded-command mutants.
//
//   gclrip parse FILE
//   gclrip wp FILE [--post PRED] [--unroll K]
//   gclrip rc FILE [--upto LINE]
//   gclrip diff ORIGINAL MUTANT
//   gclrip rip ORIGINAL MUTANT --domain a=-3..3,b=-3..3 [--array b=len:1..2,elem:0..5]
//   gclrip oracle ORIGINAL MUTANT --domain ...
//   gclrip validate ORIGINAL MUTANT --domain ...
//
// Exit status: 0 success, 1 validate found a disagreement, 2 usage or input
// errors.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gclrip/errors.hpp"
#include "gclrip/parser.hpp"
#include "gclrip/rc.hpp"
#include "gclrip/report.hpp"
#include "gclrip/rip.hpp"
#include "gclrip/wp.hpp"

namespace {

struct Config {
  std::vector<std::string> files;
  std::string domain;
  std::string arrays;
  int unroll = 1;
  std::uint64_t fuel = gclrip::default_fuel;
  std::string format = "text";
  std::uint64_t max_states = gclrip::default_state_cap;
  int upto = 0;
  std::string post = "A";
};

struct UsageError {
  std::string message;
};

gclrip::Program load(const std::string& path) {
  const auto source = gclrip::read_source(path);
  try {
    gclrip::Program p = gclrip::parse_program(source.text);
    bool errors = false;
    for (const auto& d : gclrip::validate(p)) {
      std::cerr << path << ":" << gclrip::render_text(d) << "\n";
      errors |= d.severity == gclrip::Severity::error;
    }
    if (errors) throw UsageError{path + ": program is not well-formed"};
    return p;
  } catch (const gclrip::SyntaxError& e) {
    throw UsageError{path + ":" + e.what()};
  }
}

gclrip::DomainSpec domain_of(const Config& c) {
  if (c.domain.empty() && c.arrays.empty()) throw UsageError{"--domain is required"};
  return gclrip::parse_domain(c.domain, c.arrays);
}

void emit(const Config& c, const gclrip::Json& json, const std::string& text) {
  if (c.format == "json") {
    std::cout << json.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

int run_parse(const Config& c) {
  const auto p = load(c.files.at(0));
  emit(c, gclrip::to_json(p, gclrip::validate(p)), gclrip::pretty_print(p));
  return 0;
}

int run_wp(const Config& c) {
  const auto p = load(c.files.at(0));
  gclrip::Pred post = [&] {
    try {
      return gclrip::parse_predicate(c.post);
    } catch (const gclrip::SyntaxError& e) {
      throw UsageError{std::string("--post: ") + e.what()};
    }
  }();
  gclrip::WpOptions o;
  o.unroll = c.unroll;
  o.program_name = p.name;
  o.marker_scope = std::set<std::string>{p.name};
  o.record_derivation = true;
  const auto r = gclrip::wp(p.body, post, o);
  emit(c, gclrip::to_json(r), gclrip::render_text(r));
  return 0;
}

int run_rc(const Config& c) {
  const auto p = load(c.files.at(0));
  const auto r = c.upto > 0 ? gclrip::rc_upto(p, c.upto) : gclrip::rc(p.body);
  emit(c, gclrip::to_json(r), gclrip::render_text(r));
  return 0;
}

int run_diff(const Config& c) {
  const auto t = gclrip::locate_mutation(load(c.files.at(0)), load(c.files.at(1)));
  emit(c, gclrip::to_json(t), gclrip::render_text(t));
  return 0;
}

gclrip::RipOptions rip_options(const Config& c) {
  gclrip::RipOptions o;
  o.unroll = c.unroll;
  o.fuel = c.fuel;
  o.max_states = c.max_states;
  return o;
}

int run_rip(const Config& c) {
  const auto r = gclrip::full_test_spec(load(c.files.at(0)), load(c.files.at(1)), domain_of(c),
                                        rip_options(c));
  emit(c, gclrip::to_json(r), gclrip::render_text(r));
  return 0;
}

int run_oracle(const Config& c) {
  gclrip::OracleOptions o{c.fuel, c.max_states};
  const auto k = gclrip::kill_analysis(load(c.files.at(0)), load(c.files.at(1)), domain_of(c), o);
  emit(c, gclrip::to_json(k), gclrip::render_text(k));
  return 0;
}

int run_validate(const Config& c) {
  const auto r = gclrip::full_test_spec(load(c.files.at(0)), load(c.files.at(1)), domain_of(c),
                                        rip_options(c));
  std::set<gclrip::State> only_rip;
  std::set<gclrip::State> only_oracle;
  for (const auto& s : r.full_spec) {
    if (!r.oracle.strong_kill.count(s)) only_rip.insert(s);
  }
  for (const auto& s : r.oracle.strong_kill) {
    if (!r.full_spec.count(s)) only_oracle.insert(s);
  }
  const bool sets_agree = only_rip.empty() && only_oracle.empty();
  const bool infection_ok = r.infection.symbolic_agrees.value_or(true);
  const bool propagation_ok = r.propagation.symbolic_agrees.value_or(true);
  const bool ok = sets_agree && infection_ok && propagation_ok;

  gclrip::Json json{{"ok", ok},
                    {"sets_agree", sets_agree},
                    {"full_spec_size", r.full_spec.size()},
                    {"strong_kill_size", r.oracle.strong_kill.size()},
                    {"only_in_full_spec", gclrip::to_json(only_rip)},
                    {"only_in_strong_kill", gclrip::to_json(only_oracle)}};
  if (r.infection.symbolic_agrees) json["infection_symbolic_agrees"] = *r.infection.symbolic_agrees;
  if (r.propagation.symbolic_agrees) {
    json["propagation_symbolic_agrees"] = *r.propagation.symbolic_agrees;
  }
  std::string text = std::string(ok ? "ok" : "MISMATCH") + ": full spec " +
                     std::to_string(r.full_spec.size()) + " inputs, oracle strong kill " +
                     std::to_string(r.oracle.strong_kill.size()) + " inputs\n";
  for (const auto& s : only_rip) text += "  + only in full spec: " + gclrip::to_string(s) + "\n";
  for (const auto& s : only_oracle) text += "  - only in strong kill: " + gclrip::to_string(s) + "\n";
  if (!infection_ok) text += "  infection: symbolic condition disagrees with witnesses\n";
  if (!propagation_ok) text += "  propagation: symbolic sides disagree with executions\n";
  emit(c, json, text);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RIP conditions for guarded-command mutants"};
  app.set_config("--config", "", "Read options from a key=value file");
  app.require_subcommand(1);

  Config c;
  app.add_option("--domain", c.domain, "Scalar input ranges, e.g. a=-3..3,b=0..5");
  app.add_option("--array", c.arrays, "Array inputs, e.g. b=len:1..2,elem:0..5 (';' separates)");
  app.add_option("--unroll", c.unroll, "Loop iterations considered by wp")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--fuel", c.fuel, "Execution step limit per run")->check(CLI::PositiveNumber);
  app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--max-states", c.max_states, "Largest domain enumerated")
      ->check(CLI::PositiveNumber);
  app.add_option("--upto", c.upto, "rc: only statements starting before this line");
  app.add_option("--post", c.post, "wp: postcondition (default: marker A)");

  struct Command {
    const char* name;
    const char* help;
    int files;
    int (*run)(const Config&);
  };
  const Command commands[] = {
      {"parse", "Parse, check and pretty-print a program", 1, run_parse},
      {"wp", "Weakest precondition of a program", 1, run_wp},
      {"rc", "Reachability condition of a program or prefix", 1, run_rc},
      {"diff", "Locate and decompose the change between two programs", 2, run_diff},
      {"rip", "Full reachability/infection/propagation analysis", 2, run_rip},
      {"oracle", "Bounded strong/weak kill analysis", 2, run_oracle},
      {"validate", "Check the analysis against the kill oracle", 2, run_validate},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const auto& cmd : commands) {
    auto* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->fallthrough();
    sub->add_option("files", c.files, cmd.files == 1 ? "Program file" : "Original and mutant files")
        ->required()
        ->expected(cmd.files)
        ->check(CLI::ExistingFile);
    subs.emplace_back(sub, &cmd);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (const auto& [sub, cmd] : subs) {
      if (sub->parsed()) return cmd->run(c);
    }
  } catch (const UsageError& e) {
    std::cerr << "gclrip: " << e.message << "\n";
    return 2;
  } catch (const gclrip::Error& e) {
    std::cerr << "gclrip: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
