#pragma once
// Concrete syntax: lexer, recursive-descent parser, and the renderer that
// maps elaborated ASTs back to source text.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "avlang/ast.hpp"

namespace avlang {

enum class TokenKind {
  Ident,
  Underscore,
  Int,
  String,  // quoted literal, text stored unescaped
  Money,   // $-prefixed literal, text stored with the sign
  KwTrue,
  KwCase,
  KwOf,
  KwEnd,
  KwRun,
  Eq,
  Semi,
  Comma,
  Colon,
  LParen,
  RParen,
  Dot,
  Plus,
  Minus,
  Star,
  Slash,
  Arrow,
  Eof,
};

struct Token {
  TokenKind kind = TokenKind::Eof;
  std::string text;
  std::int64_t int_value = 0;
  int line = 1;  // 1-based
  int col = 1;   // 1-based
};

struct ParseError : std::runtime_error {
  ParseError(int line, int col, std::string message, std::vector<std::string> expected = {},
             bool incomplete = false);
  int line;
  int col;
  std::string message;
  std::vector<std::string> expected;
  // True when the input ended mid-form; the REPL uses this to keep buffering.
  bool incomplete;
};

// Tokenizes the whole input (trailing Eof token included). `%` starts a
// comment running to end of line. Throws ParseError on unknown characters,
// unterminated strings, or out-of-range integers.
std::vector<Token> lex(std::string_view source);

// A parsed compilation unit: elaborated declarations in order, elaborated
// directive goals in order.
struct SourceUnit {
  std::vector<ClausePtr> declarations;
  std::vector<GoalPtr> directives;
};

SourceUnit parse_tokens(const std::vector<Token>& tokens);
SourceUnit parse_unit(std::string_view source);

bool units_equal_mod_blind(const SourceUnit& a, const SourceUnit& b);

// ---- Rendering ---------------------------------------------------------------
// Maps elaborated ASTs back to concrete syntax; parsing the result yields a
// structurally equal AST up to blind binder names. Scope: ASTs the grammar
// can express (clause heads of variables/`_`, ground case patterns).

std::string render_term(const Term& t);      // unbound logic variables render as `_`
std::string render_expr(const ExprPtr& e);
std::string render_call(const Call& c);
std::string render_goal(const GoalPtr& g);
std::string render_clause(const ClausePtr& c);
std::string render_unit(const SourceUnit& u);

// Plain value text as the print builtin emits it: atoms and string contents
// unquoted, numbers in decimal.
std::string display_term(const Term& t);

}  // namespace avlang
