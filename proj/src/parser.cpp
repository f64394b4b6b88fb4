#include "gclrip/parser.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

#include "gclrip/errors.hpp"

namespace gclrip {

SourceFile read_source(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return SourceFile{path, buf.str()};
}

namespace {

enum class Tok {
  ident, integer, kw_program, kw_if, kw_fi, kw_do, kw_od, kw_skip, kw_null,
  kw_abort, kw_return, kw_true, kw_false, kw_floor, at_invariant, at_variant,
  at_modifies, lparen, rparen, lbrace, rbrace, lbracket, rbracket, box, semi,
  comma, dot, backslash, assign, arrow, implies, and_, or_, not_, eq, ne, lt,
  le, gt, ge, plus, minus, star, slash, eof,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::string describe(Tok t) {
  switch (t) {
    case Tok::ident: return "identifier";
    case Tok::integer: return "integer";
    case Tok::kw_program: return "'program'";
    case Tok::kw_if: return "'if'";
    case Tok::kw_fi: return "'fi'";
    case Tok::kw_do: return "'do'";
    case Tok::kw_od: return "'od'";
    case Tok::kw_skip: return "'skip'";
    case Tok::kw_null: return "'null'";
    case Tok::kw_abort: return "'abort'";
    case Tok::kw_return: return "'return'";
    case Tok::kw_true: return "'true'";
    case Tok::kw_false: return "'false'";
    case Tok::kw_floor: return "'floor'";
    case Tok::at_invariant: return "'@invariant'";
    case Tok::at_variant: return "'@variant'";
    case Tok::at_modifies: return "'@modifies'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::lbrace: return "'{'";
    case Tok::rbrace: return "'}'";
    case Tok::lbracket: return "'['";
    case Tok::rbracket: return "']'";
    case Tok::box: return "'[]'";
    case Tok::semi: return "';'";
    case Tok::comma: return "','";
    case Tok::dot: return "'.'";
    case Tok::backslash: return "'\\'";
    case Tok::assign: return "':='";
    case Tok::arrow: return "'->'";
    case Tok::implies: return "'=>'";
    case Tok::and_: return "'&&'";
    case Tok::or_: return "'||'";
    case Tok::not_: return "'!'";
    case Tok::eq: return "'='";
    case Tok::ne: return "'!='";
    case Tok::lt: return "'<'";
    case Tok::le: return "'<='";
    case Tok::gt: return "'>'";
    case Tok::ge: return "'>='";
    case Tok::plus: return "'+'";
    case Tok::minus: return "'-'";
    case Tok::star: return "'*'";
    case Tok::slash: return "'/'";
    case Tok::eof: return "end of input";
  }
  return "token";
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const int tl = line;
    const int tc = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '@') {
      std::size_t j = i + 1;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' ||
              src[j] == '$')) {
        ++j;
      }
      std::string word(src.substr(i, j - i));
      Tok kind = Tok::ident;
      static const std::pair<const char*, Tok> keywords[] = {
          {"program", Tok::kw_program}, {"if", Tok::kw_if},
          {"fi", Tok::kw_fi},           {"do", Tok::kw_do},
          {"od", Tok::kw_od},           {"skip", Tok::kw_skip},
          {"null", Tok::kw_null},       {"abort", Tok::kw_abort},
          {"return", Tok::kw_return},   {"true", Tok::kw_true},
          {"false", Tok::kw_false},     {"floor", Tok::kw_floor},
          {"@invariant", Tok::at_invariant}, {"@variant", Tok::at_variant},
          {"@modifies", Tok::at_modifies},
      };
      bool known = false;
      for (const auto& [kw, k] : keywords) {
        if (word == kw) {
          kind = k;
          known = true;
        }
      }
      if (c == '@' && !known) {
        throw SyntaxError(tl, tc, "unknown annotation '" + word + "'",
                          {"@invariant", "@variant", "@modifies"});
      }
      out.push_back({kind, word, tl, tc});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::integer, std::string(src.substr(i, j - i)), tl, tc});
      advance(j - i);
      continue;
    }
    auto two = src.substr(i, 2);
    static const std::pair<const char*, Tok> pairs[] = {
        {"[]", Tok::box}, {":=", Tok::assign}, {"->", Tok::arrow},
        {"=>", Tok::implies}, {"&&", Tok::and_}, {"||", Tok::or_},
        {"!=", Tok::ne}, {"<=", Tok::le}, {">=", Tok::ge},
    };
    bool matched = false;
    for (const auto& [text, k] : pairs) {
      if (two == text) {
        out.push_back({k, text, tl, tc});
        advance(2);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    Tok kind;
    switch (c) {
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      case '{': kind = Tok::lbrace; break;
      case '}': kind = Tok::rbrace; break;
      case '[': kind = Tok::lbracket; break;
      case ']': kind = Tok::rbracket; break;
      case ';': kind = Tok::semi; break;
      case ',': kind = Tok::comma; break;
      case '.': kind = Tok::dot; break;
      case '\\': kind = Tok::backslash; break;
      case '!': kind = Tok::not_; break;
      case '=': kind = Tok::eq; break;
      case '<': kind = Tok::lt; break;
      case '>': kind = Tok::gt; break;
      case '+': kind = Tok::plus; break;
      case '-': kind = Tok::minus; break;
      case '*': kind = Tok::star; break;
      case '/': kind = Tok::slash; break;
      default:
        throw SyntaxError(tl, tc, std::string("unexpected character '") + c + "'");
    }
    out.push_back({kind, std::string(1, c), tl, tc});
    advance(1);
  }
  out.push_back({Tok::eof, "", line, col});
  return out;
}

struct Failure {
  std::size_t pos;
  std::string message;
  std::vector<std::string> expected;
};

bool is_cmp(Tok t) {
  return t == Tok::eq || t == Tok::ne || t == Tok::lt || t == Tok::le ||
         t == Tok::gt || t == Tok::ge;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  template <class F>
  auto top(F&& f) {
    try {
      auto result = f();
      expect(Tok::eof);
      return result;
    } catch (const Failure& failure) {
      const Failure& worst =
          best_ && best_->pos > failure.pos ? *best_ : failure;
      const Token& t = toks_[std::min(worst.pos, toks_.size() - 1)];
      throw SyntaxError(t.line, t.column, worst.message, worst.expected);
    }
  }

  Program program() {
    Span span = here();
    expect(Tok::kw_program);
    std::string name = ident();
    expect(Tok::lparen);
    std::vector<std::string> params;
    if (!at(Tok::rparen)) params = idlist();
    expect(Tok::rparen);
    expect(Tok::lbrace);
    Stmt body = stmts();
    expect(Tok::rbrace);
    return Program{std::move(name), std::move(params), std::move(body), span};
  }

  Pred predicate() { return implication(); }
  Expr expression() { return additive(); }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at(Tok t) const { return peek().kind == t; }
  Span here() const { return Span{peek().line, peek().column}; }

  [[noreturn]] void fail(std::string message, std::vector<std::string> expected = {}) {
    throw Failure{pos_, std::move(message), std::move(expected)};
  }

  void note(const Failure& f) {
    if (!best_ || f.pos > best_->pos) best_ = f;
  }

  const Token& expect(Tok t) {
    if (!at(t)) {
      fail("unexpected " + (at(Tok::eof) ? std::string("end of input")
                                         : "'" + peek().text + "'"),
           {describe(t)});
    }
    return toks_[pos_++];
  }

  bool accept(Tok t) {
    if (!at(t)) return false;
    ++pos_;
    return true;
  }

  std::string ident() { return expect(Tok::ident).text; }

  std::vector<std::string> idlist() {
    std::vector<std::string> out{ident()};
    while (accept(Tok::comma)) out.push_back(ident());
    return out;
  }

  // -- statements ----------------------------------------------------------

  bool ends_block() const {
    Tok t = peek().kind;
    return t == Tok::rbrace || t == Tok::kw_fi || t == Tok::kw_od ||
           t == Tok::box || t == Tok::eof;
  }

  Stmt stmts() {
    std::vector<Stmt> items{statement()};
    while (accept(Tok::semi)) {
      if (ends_block()) break;
      items.push_back(statement());
    }
    return sequence(items);
  }

  Stmt statement() {
    Span span = here();
    switch (peek().kind) {
      case Tok::kw_skip: ++pos_; return skip(span);
      case Tok::kw_null: ++pos_; return null_stmt(span);
      case Tok::kw_abort: ++pos_; return abort_stmt(span);
      case Tok::kw_return: {
        ++pos_;
        if (accept(Tok::lparen)) {
          Expr value = expression();
          expect(Tok::rparen);
          return return_stmt(value, span);
        }
        return return_stmt(std::nullopt, span);
      }
      case Tok::kw_if: {
        ++pos_;
        auto commands = guarded_commands();
        expect(Tok::kw_fi);
        return if_stmt(std::move(commands), span);
      }
      case Tok::kw_do: {
        ++pos_;
        std::optional<LoopAnnotation> annotation;
        if (accept(Tok::at_invariant)) {
          Pred inv = predicate();
          expect(Tok::at_variant);
          Expr variant = expression();
          expect(Tok::at_modifies);
          annotation = LoopAnnotation{inv, variant, idlist()};
        }
        auto commands = guarded_commands();
        expect(Tok::kw_od);
        return do_stmt(std::move(commands), std::move(annotation), span);
      }
      case Tok::ident: {
        auto targets = idlist();
        expect(Tok::assign);
        std::vector<Expr> values{expression()};
        while (accept(Tok::comma)) values.push_back(expression());
        return assign(std::move(targets), std::move(values), span);
      }
      default:
        fail("expected a statement",
             {"identifier", "'skip'", "'null'", "'abort'", "'return'", "'if'", "'do'"});
    }
  }

  std::vector<GuardedCommand> guarded_commands() {
    std::vector<GuardedCommand> out{guarded_command()};
    while (accept(Tok::box)) out.push_back(guarded_command());
    return out;
  }

  GuardedCommand guarded_command() {
    const std::size_t start = pos_;
    try {
      Pred guard = predicate();
      expect(Tok::arrow);
      return GuardedCommand{guard, stmts()};
    } catch (const Failure& f) {
      // An assignment before the arrow gets a dedicated message.
      for (std::size_t k = start; k < toks_.size(); ++k) {
        Tok t = toks_[k].kind;
        if (t == Tok::arrow || t == Tok::kw_fi || t == Tok::kw_od ||
            t == Tok::box || t == Tok::semi) {
          break;
        }
        if (t == Tok::assign) {
          throw Failure{k, "assignment is not allowed in a guard", {}};
        }
      }
      throw;
    }
  }

  // -- predicates ------------------------------------------------------------

  Pred implication() {
    Pred lhs = disjunction_();
    if (accept(Tok::implies)) return implies(lhs, implication());
    return lhs;
  }

  Pred disjunction_() {
    Pred lhs = conjunction_();
    while (accept(Tok::or_)) lhs = lhs || conjunction_();
    return lhs;
  }

  Pred conjunction_() {
    Pred lhs = negation();
    while (accept(Tok::and_)) lhs = lhs && negation();
    return lhs;
  }

  Pred negation() {
    if (accept(Tok::not_)) return !negation();
    return atom();
  }

  Pred atom() {
    if (accept(Tok::kw_true)) return truth(true);
    if (accept(Tok::kw_false)) return truth(false);
    const std::size_t start = pos_;
    if (at(Tok::lparen)) {
      try {
        ++pos_;
        Pred inner = implication();
        expect(Tok::rparen);
        Tok next = peek().kind;
        if (!is_cmp(next) && next != Tok::plus && next != Tok::minus &&
            next != Tok::star && next != Tok::slash) {
          return inner;
        }
        fail("parenthesised predicate used as a term");
      } catch (const Failure& f) {
        note(f);
        pos_ = start;
      }
    }
    try {
      Expr lhs = expression();
      Tok op = peek().kind;
      if (!is_cmp(op)) {
        fail("expected a comparison operator", {"'='", "'!='", "'<'", "'<='", "'>'", "'>='"});
      }
      ++pos_;
      Expr rhs = expression();
      return cmp(to_cmp(op), lhs, rhs);
    } catch (const Failure& f) {
      note(f);
      pos_ = start;
    }
    if (at(Tok::ident) && std::isupper(static_cast<unsigned char>(peek().text[0]))) {
      std::string tag = ident();
      std::vector<Substitution> subs;
      while (at(Tok::lbracket)) {
        ++pos_;
        std::string name = ident();
        expect(Tok::backslash);
        Expr value = expression();
        expect(Tok::rbracket);
        subs.emplace_back(std::move(name), std::move(value));
      }
      return marker(std::move(tag), std::move(subs));
    }
    throw *best_;
  }

  static CmpOp to_cmp(Tok t) {
    switch (t) {
      case Tok::eq: return CmpOp::eq;
      case Tok::ne: return CmpOp::ne;
      case Tok::lt: return CmpOp::lt;
      case Tok::le: return CmpOp::le;
      case Tok::gt: return CmpOp::gt;
      default: return CmpOp::ge;
    }
  }

  // -- expressions -----------------------------------------------------------

  Expr additive() {
    Expr lhs = multiplicative();
    for (;;) {
      if (accept(Tok::plus)) {
        lhs = lhs + multiplicative();
      } else if (accept(Tok::minus)) {
        lhs = lhs - multiplicative();
      } else {
        return lhs;
      }
    }
  }

  Expr multiplicative() {
    Expr lhs = unary();
    for (;;) {
      if (accept(Tok::star)) {
        lhs = lhs * unary();
      } else if (accept(Tok::slash)) {
        lhs = lhs / unary();
      } else {
        return lhs;
      }
    }
  }

  Expr unary() {
    if (accept(Tok::minus)) {
      // "-5" is a negative literal; "-(5)" negates a literal.
      if (at(Tok::integer)) return lit(-Integer(toks_[pos_++].text));
      return -unary();
    }
    return primary();
  }

  Expr primary() {
    if (at(Tok::integer)) return lit(Integer(toks_[pos_++].text));
    if (accept(Tok::kw_floor)) {
      expect(Tok::lparen);
      Expr inner = expression();
      expect(Tok::rparen);
      return floor(inner);
    }
    if (accept(Tok::lparen)) {
      Expr inner = expression();
      expect(Tok::rparen);
      return inner;
    }
    if (at(Tok::ident)) {
      std::string name = ident();
      if (accept(Tok::lbracket)) {
        Expr index = expression();
        expect(Tok::rbracket);
        return at_(std::move(name), index);
      }
      if (at(Tok::dot)) {
        ++pos_;
        if (!(at(Tok::ident) && peek().text == "length")) fail("expected 'length'", {"'length'"});
        ++pos_;
        return length_of(std::move(name));
      }
      return var(std::move(name));
    }
    fail("expected an expression", {"integer", "identifier", "'('", "'floor'", "'-'"});
  }

  static Expr at_(std::string name, Expr index) {
    return gclrip::at(std::move(name), std::move(index));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::optional<Failure> best_;
};

// ---------------------------------------------------------------------------
// Printing

int precedence(const Expr& e) {
  if (auto* b = e.get<expr::Binary>()) {
    return (b->op == ArithOp::add || b->op == ArithOp::sub) ? 1 : 2;
  }
  if (e.get<expr::Neg>()) return 3;
  if (auto* l = e.get<expr::IntLit>(); l && l->value < 0) return 3;
  return 4;
}

void print(const Expr& e, int context, std::string& out);

void print_wrapped(const Expr& e, int context, std::string& out) {
  if (precedence(e) < context) {
    out += '(';
    print(e, 0, out);
    out += ')';
  } else {
    print(e, context, out);
  }
}

void print(const Expr& e, int context, std::string& out) {
  (void)context;
  std::visit(overloaded{
                 [&](const expr::IntLit& x) { out += x.value.str(); },
                 [&](const expr::Var& x) { out += x.name; },
                 [&](const expr::ArrayRead& x) {
                   out += x.array + "[";
                   print(x.index, 0, out);
                   out += "]";
                 },
                 [&](const expr::ArrayLength& x) { out += x.array + ".length"; },
                 [&](const expr::Neg& x) {
                   out += '-';
                   if (x.operand.get<expr::IntLit>()) {
                     out += '(';
                     print(x.operand, 0, out);
                     out += ')';
                   } else {
                     print_wrapped(x.operand, 3, out);
                   }
                 },
                 [&](const expr::Binary& x) {
                   int p = precedence(e);
                   print_wrapped(x.lhs, p, out);
                   out += ' ';
                   out += symbol(x.op);
                   out += ' ';
                   print_wrapped(x.rhs, p + 1, out);
                 },
                 [&](const expr::Floor& x) {
                   out += "floor(";
                   print(x.operand, 0, out);
                   out += ')';
                 },
             },
             e.node().value);
}

int precedence(const Pred& p) {
  if (p.get<pred::Implies>()) return 1;
  if (p.get<pred::Or>()) return 2;
  if (p.get<pred::And>()) return 3;
  if (p.get<pred::Not>()) return 4;
  return 5;
}

void print(const Pred& p, std::string& out);

void print_wrapped(const Pred& p, int context, std::string& out) {
  if (precedence(p) < context) {
    out += '(';
    print(p, out);
    out += ')';
  } else {
    print(p, out);
  }
}

void print(const Pred& p, std::string& out) {
  std::visit(overloaded{
                 [&](const pred::BoolLit& x) { out += x.value ? "true" : "false"; },
                 [&](const pred::Cmp& x) {
                   print(x.lhs, 0, out);
                   out += ' ';
                   out += symbol(x.op);
                   out += ' ';
                   print(x.rhs, 0, out);
                 },
                 [&](const pred::Not& x) {
                   out += '!';
                   if (x.operand.get<pred::Cmp>()) {
                     out += '(';
                     print(x.operand, out);
                     out += ')';
                   } else {
                     print_wrapped(x.operand, 4, out);
                   }
                 },
                 [&](const pred::And& x) {
                   print_wrapped(x.lhs, 3, out);
                   out += " && ";
                   print_wrapped(x.rhs, 4, out);
                 },
                 [&](const pred::Or& x) {
                   print_wrapped(x.lhs, 2, out);
                   out += " || ";
                   print_wrapped(x.rhs, 3, out);
                 },
                 [&](const pred::Implies& x) {
                   print_wrapped(x.lhs, 2, out);
                   out += " => ";
                   print_wrapped(x.rhs, 1, out);
                 },
                 [&](const pred::Marker& x) {
                   out += x.tag;
                   for (const auto& [name, value] : x.substitutions) {
                     out += '[' + name + '\\';
                     print(value, 0, out);
                     out += ']';
                   }
                 },
             },
             p.node().value);
}

void print_commands(const std::vector<GuardedCommand>& commands, int indent,
                    std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (std::size_t i = 0; i < commands.size(); ++i) {
    if (i) out += "\n" + pad + "[] ";
    out += to_string(commands[i].guard) + " ->\n";
    out += std::string(static_cast<std::size_t>(indent + 2), ' ');
    out += pretty_print(commands[i].body, indent + 2);
  }
}

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += names[i];
  }
  return out;
}

}  // namespace

Program parse_program(std::string_view text) {
  Parser p(text);
  return p.top([&] { return p.program(); });
}

Pred parse_predicate(std::string_view text) {
  Parser p(text);
  return p.top([&] { return p.predicate(); });
}

Expr parse_expression(std::string_view text) {
  Parser p(text);
  return p.top([&] { return p.expression(); });
}

std::string to_string(const Expr& e) {
  std::string out;
  print(e, 0, out);
  return out;
}

std::string to_string(const Pred& p) {
  std::string out;
  print(p, out);
  return out;
}

std::string pretty_print(const Stmt& s, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  std::string out;
  std::visit(overloaded{
                 [&](const stmt::Assign& a) {
                   out += join(a.targets) + " := ";
                   for (std::size_t i = 0; i < a.values.size(); ++i) {
                     if (i) out += ", ";
                     out += to_string(a.values[i]);
                   }
                 },
                 [&](const stmt::Skip&) { out += "skip"; },
                 [&](const stmt::Null&) { out += "null"; },
                 [&](const stmt::Return& r) {
                   out += "return";
                   if (r.value) out += " (" + to_string(*r.value) + ")";
                 },
                 [&](const stmt::Abort&) { out += "abort"; },
                 [&](const stmt::Seq&) {
                   auto items = flatten(s);
                   for (std::size_t i = 0; i < items.size(); ++i) {
                     if (i) out += ";\n" + pad;
                     out += pretty_print(items[i], indent);
                   }
                 },
                 [&](const stmt::If& i) {
                   out += "if ";
                   print_commands(i.commands, indent, out);
                   out += "\n" + pad + "fi";
                 },
                 [&](const stmt::Do& d) {
                   out += "do ";
                   if (d.annotation) {
                     out += "@invariant " + to_string(d.annotation->invariant) +
                            " @variant " + to_string(d.annotation->variant) +
                            " @modifies " + join(d.annotation->modified) + "\n" +
                            pad + "   ";
                   }
                   print_commands(d.commands, indent, out);
                   out += "\n" + pad + "od";
                 },
             },
             s.node().value);
  return out;
}

std::string pretty_print(const Program& program) {
  return "program " + program.name + "(" + join(program.params) + ") {\n  " +
         pretty_print(program.body, 2) + "\n}\n";
}

}  // namespace gclrip
