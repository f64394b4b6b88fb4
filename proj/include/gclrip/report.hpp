#pragma once

// JSON and plain-text renderings of analysis results. Sets are emitted in
// sorted order and predicates in canonical printed form, so identical
// inputs give byte-identical output.

#include <string>
#include <vector>

#include <json.hpp>

#include "gclrip/ast.hpp"
#include "gclrip/domain.hpp"
#include "gclrip/mutation.hpp"
#include "gclrip/oracle.hpp"
#include "gclrip/rc.hpp"
#include "gclrip/rip.hpp"
#include "gclrip/wp.hpp"

namespace gclrip {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& r);
Json to_json(const State& s);
Json to_json(const std::set<State>& states);
Json to_json(const DomainSpec& d);
Json to_json(const Diagnostic& d);
Json to_json(const Program& p, const std::vector<Diagnostic>& diagnostics);
Json to_json(const WpResult& r);
Json to_json(const RcResult& r);
Json to_json(const ModificationTemplate& t);
Json to_json(const KillReport& k);
Json to_json(const RipReport& r);
Json to_json(const LwdcResult& r);

std::string render_text(const WpResult& r);
std::string render_text(const RcResult& r);
std::string render_text(const ModificationTemplate& t);
std::string render_text(const KillReport& k);
std::string render_text(const RipReport& r);
std::string render_text(const Diagnostic& d);

}  // namespace gclrip
