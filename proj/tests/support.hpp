#pragma once

#include <filesystem>
#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>

#include "gclrip/ast.hpp"
#include "gclrip/domain.hpp"
#include "gclrip/parser.hpp"

// Readable gtest failure messages.
namespace gclrip {
inline void PrintTo(const Expr& e, std::ostream* os) { *os << to_string(e); }
inline void PrintTo(const Pred& p, std::ostream* os) { *os << to_string(p); }
inline void PrintTo(const Stmt& s, std::ostream* os) { *os << "\n" << pretty_print(s, 0); }
inline void PrintTo(const Program& p, std::ostream* os) { *os << "\n" << pretty_print(p); }
inline void PrintTo(const State& s, std::ostream* os) { *os << to_string(s); }
}  // namespace gclrip

namespace testing_support {

inline std::filesystem::path corpus_dir() { return GCLRIP_CORPUS_DIR; }

inline std::string corpus_path(const std::string& name) {
  return (corpus_dir() / (name + ".gcl")).string();
}

inline gclrip::Program corpus(const std::string& name) {
  return gclrip::parse_program(gclrip::read_source(corpus_path(name)).text);
}

inline gclrip::State scalars(std::initializer_list<std::pair<const char*, long>> values) {
  gclrip::State s;
  for (const auto& [k, v] : values) s.scalars[k] = gclrip::Rational(v);
  return s;
}

inline long int_of(const gclrip::State& s, const std::string& name) {
  return static_cast<long>(boost::multiprecision::numerator(s.scalars.at(name)));
}

}  // namespace testing_support
