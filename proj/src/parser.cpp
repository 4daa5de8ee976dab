#include "avlang/parser.hpp"

#include <cctype>
#include <charconv>
#include <set>
#include <utility>

namespace avlang {

using detail::Overload;

namespace {

std::string compose_what(int line, int col, const std::string& message,
                         const std::vector<std::string>& expected) {
  std::string out = "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + message;
  if (!expected.empty()) {
    out += " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) out += expected.size() == 2 ? " or " : ", ";
      if (i > 0 && expected.size() > 2 && i + 1 == expected.size()) out += "or ";
      out += expected[i];
    }
    out += ")";
  }
  return out;
}

}  // namespace

ParseError::ParseError(int line, int col, std::string message, std::vector<std::string> expected,
                       bool incomplete)
    : std::runtime_error(compose_what(line, col, message, expected)),
      line(line),
      col(col),
      message(std::move(message)),
      expected(std::move(expected)),
      incomplete(incomplete) {}

// ---- Lexer ---------------------------------------------------------------------

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}
bool alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

struct Lexer {
  std::string_view src;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;

  char peek() const { return pos < src.size() ? src[pos] : '\0'; }
  char peek2() const { return pos + 1 < src.size() ? src[pos + 1] : '\0'; }
  bool done() const { return pos >= src.size(); }

  void bump() {
    if (done()) return;
    if (src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_trivia() {
    for (;;) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        bump();
      } else if (c == '%') {
        while (!done() && peek() != '\n') bump();
      } else {
        break;
      }
    }
  }

  Token next() {
    skip_trivia();
    Token tok;
    tok.line = line;
    tok.col = col;
    if (done()) {
      tok.kind = TokenKind::Eof;
      return tok;
    }
    char c = peek();
    if (ident_start(c)) {
      std::string text;
      while (!done() && ident_char(peek())) {
        text += peek();
        bump();
      }
      if (text == "true")
        tok.kind = TokenKind::KwTrue;
      else if (text == "case")
        tok.kind = TokenKind::KwCase;
      else if (text == "of")
        tok.kind = TokenKind::KwOf;
      else if (text == "end")
        tok.kind = TokenKind::KwEnd;
      else if (text == "run")
        tok.kind = TokenKind::KwRun;
      else
        tok.kind = TokenKind::Ident;
      tok.text = std::move(text);
      return tok;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
      std::string text;
      while (!done() && std::isdigit(static_cast<unsigned char>(peek())) != 0) {
        text += peek();
        bump();
      }
      std::int64_t value = 0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
      if (ec != std::errc() || ptr != text.data() + text.size())
        throw ParseError(tok.line, tok.col, "integer literal out of range");
      tok.kind = TokenKind::Int;
      tok.text = std::move(text);
      tok.int_value = value;
      return tok;
    }
    if (c == '$') {
      std::string text = "$";
      bump();
      while (!done() && alnum(peek())) {
        text += peek();
        bump();
      }
      if (text.size() == 1)
        throw ParseError(tok.line, tok.col, "expected letters or digits after '$'");
      tok.kind = TokenKind::Money;
      tok.text = std::move(text);
      return tok;
    }
    if (c == '"') {
      bump();
      std::string text;
      for (;;) {
        if (done()) throw ParseError(tok.line, tok.col, "unterminated string literal", {}, true);
        char d = peek();
        if (d == '"') {
          bump();
          break;
        }
        if (d == '\\' && peek2() == '"') {
          text += '"';
          bump();
          bump();
          continue;
        }
        text += d;
        bump();
      }
      tok.kind = TokenKind::String;
      tok.text = std::move(text);
      return tok;
    }
    auto single = [&](TokenKind kind, const char* text) {
      bump();
      tok.kind = kind;
      tok.text = text;
      return tok;
    };
    switch (c) {
      case '_':
        return single(TokenKind::Underscore, "_");
      case '=':
        return single(TokenKind::Eq, "=");
      case ';':
        return single(TokenKind::Semi, ";");
      case ',':
        return single(TokenKind::Comma, ",");
      case ':':
        return single(TokenKind::Colon, ":");
      case '(':
        return single(TokenKind::LParen, "(");
      case ')':
        return single(TokenKind::RParen, ")");
      case '.':
        return single(TokenKind::Dot, ".");
      case '+':
        return single(TokenKind::Plus, "+");
      case '*':
        return single(TokenKind::Star, "*");
      case '/':
        return single(TokenKind::Slash, "/");
      case '-':
        if (peek2() == '>') {
          bump();
          bump();
          tok.kind = TokenKind::Arrow;
          tok.text = "->";
          return tok;
        }
        return single(TokenKind::Minus, "-");
      default:
        throw ParseError(tok.line, tok.col,
                         std::string("unexpected character '") + c + "'");
    }
  }
};

}  // namespace

std::vector<Token> lex(std::string_view source) {
  Lexer lexer{source};
  std::vector<Token> out;
  for (;;) {
    out.push_back(lexer.next());
    if (out.back().kind == TokenKind::Eof) return out;
  }
}

// ---- Parser --------------------------------------------------------------------

namespace {

const char* describe(TokenKind kind) {
  switch (kind) {
    case TokenKind::Ident: return "identifier";
    case TokenKind::Underscore: return "'_'";
    case TokenKind::Int: return "integer";
    case TokenKind::String: return "string";
    case TokenKind::Money: return "'$' literal";
    case TokenKind::KwTrue: return "'true'";
    case TokenKind::KwCase: return "'case'";
    case TokenKind::KwOf: return "'of'";
    case TokenKind::KwEnd: return "'end'";
    case TokenKind::KwRun: return "'run'";
    case TokenKind::Eq: return "'='";
    case TokenKind::Semi: return "';'";
    case TokenKind::Comma: return "','";
    case TokenKind::Colon: return "':'";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::Dot: return "'.'";
    case TokenKind::Plus: return "'+'";
    case TokenKind::Minus: return "'-'";
    case TokenKind::Star: return "'*'";
    case TokenKind::Slash: return "'/'";
    case TokenKind::Arrow: return "'->'";
    case TokenKind::Eof: return "end of input";
  }
  return "token";
}

struct Parser {
  const std::vector<Token>& toks;
  std::size_t pos = 0;
  NameGen names;

  const Token& cur() const { return toks[pos]; }
  const Token& peek(std::size_t ahead = 1) const {
    std::size_t i = pos + ahead;
    return i < toks.size() ? toks[i] : toks.back();
  }
  void advance() {
    if (pos + 1 < toks.size()) ++pos;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = cur();
    throw ParseError(t.line, t.col,
                     std::string("unexpected ") + describe(t.kind) +
                         (t.kind == TokenKind::Ident ? " '" + t.text + "'" : ""),
                     std::move(expected), t.kind == TokenKind::Eof);
  }

  Token expect(TokenKind kind) {
    if (cur().kind != kind) fail({describe(kind)});
    Token t = cur();
    advance();
    return t;
  }

  SourceUnit parse_unit() {
    SourceUnit unit;
    while (cur().kind != TokenKind::Eof) {
      if (cur().kind == TokenKind::KwRun) {
        unit.directives.push_back(parse_directive());
      } else if (cur().kind == TokenKind::Ident) {
        unit.declarations.push_back(parse_declaration());
      } else {
        fail({"declaration", "'run'"});
      }
    }
    return unit;
  }

  GoalPtr parse_directive() {
    const Token& start = cur();
    expect(TokenKind::KwRun);
    GoalPtr goal = parse_goal({});
    expect(TokenKind::Dot);
    return elaborate_wrap(goal, start);
  }

  ClausePtr parse_declaration() {
    const Token& start = cur();
    Token name = expect(TokenKind::Ident);
    expect(TokenKind::LParen);
    std::vector<Term> params;
    std::set<std::string> scope;
    if (cur().kind != TokenKind::RParen) {
      for (;;) {
        if (cur().kind == TokenKind::Underscore) {
          advance();
          params.push_back(var(kAnonName));
        } else if (cur().kind == TokenKind::Ident) {
          if (!scope.insert(cur().text).second)
            throw ParseError(cur().line, cur().col,
                             "duplicate parameter '" + cur().text + "'");
          params.push_back(var(cur().text));
          advance();
        } else {
          fail({"identifier", "'_'"});
        }
        if (cur().kind != TokenKind::Comma) break;
        advance();
      }
    }
    expect(TokenKind::RParen);
    expect(TokenKind::Eq);
    GoalPtr body = parse_goal(scope);
    expect(TokenKind::Dot);
    ClausePtr surface = c_def(Call{name.text, std::move(params)}, std::move(body));
    try {
      return elaborate_clause(surface, names);
    } catch (const ElaborateError& e) {
      throw ParseError(start.line, start.col, e.what());
    }
  }

  GoalPtr elaborate_wrap(const GoalPtr& goal, const Token& start) {
    try {
      return elaborate_goal(goal, names);
    } catch (const ElaborateError& e) {
      throw ParseError(start.line, start.col, e.what());
    }
  }

  GoalPtr parse_goal(const std::set<std::string>& scope) {
    std::vector<GoalPtr> parts;
    parts.push_back(parse_simple(scope));
    while (cur().kind == TokenKind::Semi) {
      advance();
      parts.push_back(parse_simple(scope));
    }
    GoalPtr out = parts.back();
    for (std::size_t i = parts.size() - 1; i-- > 0;) out = g_seq(parts[i], std::move(out));
    return out;
  }

  GoalPtr parse_simple(const std::set<std::string>& scope) {
    switch (cur().kind) {
      case TokenKind::KwTrue:
        advance();
        return g_true();
      case TokenKind::KwCase:
        return parse_case(scope);
      case TokenKind::Ident: {
        if (peek().kind == TokenKind::LParen) return parse_call(scope);
        if (peek().kind == TokenKind::Eq) return parse_assign(scope);
        advance();
        fail({"'('", "'='"});
      }
      default:
        fail({"'true'", "call", "assignment", "'case'"});
    }
  }

  GoalPtr parse_call(const std::set<std::string>& scope) {
    Token name = expect(TokenKind::Ident);
    expect(TokenKind::LParen);
    std::vector<Term> args;
    if (cur().kind != TokenKind::RParen) {
      for (;;) {
        args.push_back(parse_term(scope));
        if (cur().kind != TokenKind::Comma) break;
        advance();
      }
    }
    expect(TokenKind::RParen);
    return g_call(name.text, std::move(args));
  }

  Term parse_term(const std::set<std::string>& scope) {
    const Token& t = cur();
    switch (t.kind) {
      case TokenKind::Ident: {
        Term out = scope.count(t.text) != 0 ? var(t.text) : atom(t.text);
        advance();
        return out;
      }
      case TokenKind::Underscore:
        advance();
        return var(kAnonName);
      case TokenKind::Int: {
        Term out = num(t.int_value);
        advance();
        return out;
      }
      case TokenKind::String:
      case TokenKind::Money: {
        Term out = str(t.text);
        advance();
        return out;
      }
      default:
        fail({"identifier", "'_'", "integer", "string", "'$' literal"});
    }
  }

  GoalPtr parse_assign(const std::set<std::string>& scope) {
    Token target = expect(TokenKind::Ident);
    expect(TokenKind::Eq);
    return g_assign(target.text, parse_expr(scope));
  }

  GoalPtr parse_case(const std::set<std::string>& scope) {
    expect(TokenKind::KwCase);
    ExprPtr scrutinee = parse_expr(scope);
    expect(TokenKind::KwOf);
    std::vector<CaseBranch> branches;
    for (;;) {
      branches.push_back(parse_branch(scope));
      if (cur().kind == TokenKind::KwEnd) break;
      if (!branch_ahead()) fail({"case pattern", "'end'"});
    }
    expect(TokenKind::KwEnd);
    return g_case(std::move(scrutinee), std::move(branches));
  }

  bool branch_ahead() const {
    switch (cur().kind) {
      case TokenKind::Ident:
      case TokenKind::Int:
      case TokenKind::String:
      case TokenKind::Money:
        return peek().kind == TokenKind::Colon;
      default:
        return false;
    }
  }

  CaseBranch parse_branch(const std::set<std::string>& scope) {
    Term pattern;
    const Token& t = cur();
    switch (t.kind) {
      case TokenKind::Ident:
        pattern = atom(t.text);
        advance();
        break;
      case TokenKind::Int:
        pattern = num(t.int_value);
        advance();
        break;
      case TokenKind::String:
      case TokenKind::Money:
        pattern = str(t.text);
        advance();
        break;
      default:
        fail({"identifier", "integer", "string", "'$' literal"});
    }
    expect(TokenKind::Colon);
    GoalPtr body = parse_goal(scope);
    return CaseBranch{std::move(pattern), std::move(body)};
  }

  ExprPtr parse_expr(const std::set<std::string>& scope) {
    ExprPtr lhs = parse_mul(scope);
    for (;;) {
      TokenKind k = cur().kind;
      if (k != TokenKind::Plus && k != TokenKind::Minus) return lhs;
      advance();
      ExprPtr rhs = parse_mul(scope);
      lhs = e_bin(k == TokenKind::Plus ? BinaryOp::Add : BinaryOp::Sub, std::move(lhs),
                  std::move(rhs));
    }
  }

  ExprPtr parse_mul(const std::set<std::string>& scope) {
    ExprPtr lhs = parse_primary(scope);
    for (;;) {
      TokenKind k = cur().kind;
      if (k != TokenKind::Star && k != TokenKind::Slash) return lhs;
      advance();
      ExprPtr rhs = parse_primary(scope);
      lhs = e_bin(k == TokenKind::Star ? BinaryOp::Mul : BinaryOp::Div, std::move(lhs),
                  std::move(rhs));
    }
  }

  ExprPtr parse_primary(const std::set<std::string>& scope) {
    const Token& t = cur();
    switch (t.kind) {
      case TokenKind::Int: {
        ExprPtr out = e_lit(num(t.int_value));
        advance();
        return out;
      }
      case TokenKind::String:
      case TokenKind::Money: {
        ExprPtr out = e_lit(str(t.text));
        advance();
        return out;
      }
      case TokenKind::Ident: {
        ExprPtr out = e_ref(t.text);
        advance();
        return out;
      }
      case TokenKind::LParen: {
        advance();
        ExprPtr out = parse_expr(scope);
        expect(TokenKind::RParen);
        return out;
      }
      case TokenKind::Underscore:
        throw ParseError(t.line, t.col, "'_' cannot appear in an expression");
      default:
        fail({"integer", "string", "'$' literal", "identifier", "'('"});
    }
  }
};

}  // namespace

SourceUnit parse_tokens(const std::vector<Token>& tokens) {
  if (tokens.empty() || tokens.back().kind != TokenKind::Eof)
    throw InternalFault("token stream must end with Eof");
  Parser parser{tokens};
  return parser.parse_unit();
}

SourceUnit parse_unit(std::string_view source) { return parse_tokens(lex(source)); }

bool units_equal_mod_blind(const SourceUnit& a, const SourceUnit& b) {
  if (a.declarations.size() != b.declarations.size()) return false;
  if (a.directives.size() != b.directives.size()) return false;
  for (std::size_t i = 0; i < a.declarations.size(); ++i)
    if (!clauses_equal_mod_blind(a.declarations[i], b.declarations[i])) return false;
  for (std::size_t i = 0; i < a.directives.size(); ++i)
    if (!goals_equal_mod_blind(a.directives[i], b.directives[i])) return false;
  return true;
}

// ---- Rendering -------------------------------------------------------------------

namespace {

bool money_shaped(const std::string& text) {
  if (text.size() < 2 || text[0] != '$') return false;
  for (std::size_t i = 1; i < text.size(); ++i)
    if (!alnum(text[i])) return false;
  return true;
}

std::string quote(const std::string& text) {
  // Strings containing backslash-quote sequences are not representable; the
  // grammar has no backslash escape of its own.
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string render_term_in(const Term& t, const std::set<std::string>& blind) {
  return std::visit(Overload{
                        [](const Atom& a) { return a.name; },
                        [](const Num& n) { return std::to_string(n.value); },
                        [](const Str& s) { return money_shaped(s.text) ? s.text : quote(s.text); },
                        [&](const Var& v) {
                          return blind.count(v.name) != 0 ? std::string(kAnonName) : v.name;
                        },
                        [](const LogicVar&) { return std::string(kAnonName); },
                    },
                    t);
}

std::string render_call_in(const Call& c, const std::set<std::string>& blind) {
  std::string out = c.name + "(";
  for (std::size_t i = 0; i < c.args.size(); ++i) {
    if (i > 0) out += ", ";
    out += render_term_in(c.args[i], blind);
  }
  out += ")";
  return out;
}

int precedence(const ExprPtr& e) {
  if (const BinOp* b = std::get_if<BinOp>(&e->node))
    return (b->op == BinaryOp::Add || b->op == BinaryOp::Sub) ? 1 : 2;
  return 3;
}

std::string render_expr_impl(const ExprPtr& e) {
  return std::visit(Overload{
                        [](const Lit& l) { return render_term_in(l.value, {}); },
                        [](const VarRef& v) { return v.name; },
                        [&](const BinOp& b) {
                          const char* op = b.op == BinaryOp::Add   ? " + "
                                           : b.op == BinaryOp::Sub ? " - "
                                           : b.op == BinaryOp::Mul ? " * "
                                                                   : " / ";
                          int mine = precedence(e);
                          std::string lhs = render_expr_impl(b.lhs);
                          std::string rhs = render_expr_impl(b.rhs);
                          if (precedence(b.lhs) < mine) lhs = "(" + lhs + ")";
                          // Right operand needs parens at equal precedence too:
                          // the parser associates left.
                          if (precedence(b.rhs) <= mine) rhs = "(" + rhs + ")";
                          return lhs + op + rhs;
                        },
                    },
                    e->node);
}

std::string render_goal_in(const GoalPtr& g, std::set<std::string> blind) {
  return std::visit(
      Overload{
          [](const TrueGoal&) { return std::string("true"); },
          [&](const Call& c) { return render_call_in(c, blind); },
          [&](const ExistsBlind& ex) {
            blind.insert(ex.bound);
            return render_goal_in(ex.body, std::move(blind));
          },
          [&](const Assign& a) { return a.target + " = " + render_expr_impl(a.expr); },
          [&](const Seq& s) {
            return render_goal_in(s.first, blind) + "; " + render_goal_in(s.second, blind);
          },
          [&](const Case& c) {
            std::string out = "case " + render_expr_impl(c.scrutinee) + " of";
            for (const CaseBranch& br : c.branches) {
              out += " " + render_term_in(br.pattern, {}) + " : ";
              out += render_goal_in(br.body, blind);
            }
            out += " end";
            return out;
          },
      },
      g->node);
}

}  // namespace

std::string render_term(const Term& t) { return render_term_in(t, {}); }
std::string render_expr(const ExprPtr& e) { return render_expr_impl(e); }
std::string render_call(const Call& c) { return render_call_in(c, {}); }
std::string render_goal(const GoalPtr& g) { return render_goal_in(g, {}); }

std::string render_clause(const ClausePtr& c) {
  // Walk the binder prefix; blind binder names render as `_` at their
  // argument positions, visible ones keep their names.
  std::set<std::string> blind;
  const Clause* cur = c.get();
  while (const ForAll* fa = std::get_if<ForAll>(&cur->node)) {
    if (fa->visibility == Visibility::Blind) blind.insert(fa->bound);
    cur = fa->inner.get();
  }
  if (const Conj* conj = std::get_if<Conj>(&cur->node)) {
    // The surface grammar has no conjunction form; render both halves as
    // separate declarations on one line.
    (void)conj;
    throw InternalFault("conjunction clauses have no concrete syntax");
  }
  const Def& def = std::get<Def>(cur->node);
  return render_call_in(def.head, blind) + " = " + render_goal_in(def.body, blind) + ".";
}

std::string render_unit(const SourceUnit& u) {
  std::string out;
  for (const ClausePtr& c : u.declarations) {
    out += render_clause(c);
    out += '\n';
  }
  for (const GoalPtr& g : u.directives) {
    out += "run " + render_goal(g) + ".";
    out += '\n';
  }
  return out;
}

std::string display_term(const Term& t) {
  return std::visit(Overload{
                        [](const Atom& a) { return a.name; },
                        [](const Num& n) { return std::to_string(n.value); },
                        [](const Str& s) { return s.text; },
                        [](const Var& v) { return v.name; },
                        [](const LogicVar&) { return std::string(kAnonName); },
                    },
                    t);
}

}  // namespace avlang
