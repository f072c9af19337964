#pragma once

#include <string>
#include <vector>

#include "tgc/ast.hpp"

namespace tgc {

enum class Tok {
  Ident,
  Keyword,
  String,
  LBrace, RBrace,
  LParen, RParen,
  LBracket, RBracket,
  Colon, Comma, Semi, Dot,
  Arrow,      // ->
  DArrow,     // <->
  AndOp,      // conjunction operator
  OrOp,       // disjunction operator
  Tilde,      // ~
  Equal,      // =
  Turnstile,  // |-
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

// Throws no exceptions; lexing problems are returned as diagnostics and the
// offending character is skipped.
std::vector<Token> lex(const std::string& file, const std::string& text,
                       std::vector<Diagnostic>& diagnostics);

bool is_keyword(const std::string& word);

}  // namespace tgc
