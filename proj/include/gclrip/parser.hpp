#pragma once

// Concrete syntax for guarded-command programs:
//
//   program  := "program" IDENT "(" params ")" "{" stmts "}"
//   stmts    := stmt (";" stmt)* [";"]
//   stmt     := idlist ":=" exprlist | "skip" | "null" | "abort"
//             | "return" ["(" expr ")"]
//             | "if" gcs "fi" | "do" [annotation] gcs "od"
//   gcs      := gc ("[]" gc)*
//   gc       := pred "->" stmts
//   annotation := "@invariant" pred "@variant" expr "@modifies" idlist
//
// Predicates use "!", "&&", "||" and "=>" (right associative, loosest).
// A bare capitalised identifier in predicate position is a postcondition
// marker; pending substitutions are written A[x\e][y\f]. Expressions
// support unary minus, + - * /, floor(e), a[e], a.length and integers.
// "#" starts a comment running to the end of the line.

#include <string>
#include <string_view>

#include "gclrip/ast.hpp"

namespace gclrip {

struct SourceFile {
  std::string path;
  std::string text;
};

SourceFile read_source(const std::string& path);

Program parse_program(std::string_view text);
Pred parse_predicate(std::string_view text);
Expr parse_expression(std::string_view text);

std::string pretty_print(const Program& program);
std::string pretty_print(const Stmt& s, int indent = 0);
std::string to_string(const Pred& p);
std::string to_string(const Expr& e);

}  // namespace gclrip
