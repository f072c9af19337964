#include "lexer.hpp"

#include <cstdint>
#include <set>

namespace tgc {

std::string to_text(const SourceSpan& s) {
  if (s.line <= 0) return s.file;  // whole-file spans (e.g. unreadable input)
  return s.file + ":" + std::to_string(s.line) + ":" + std::to_string(s.col);
}

std::string to_text(const Diagnostic& d) {
  std::string sev = d.severity == Diagnostic::Severity::Error ? "error" : "warning";
  std::string where = d.span.file.empty() ? "" : to_text(d.span) + ": ";
  return where + sev + " " + d.code + ": " + d.message;
}

bool is_keyword(const std::string& w) {
  static const std::set<std::string> kw = {
      "theory",    "morphism",  "theorem",   "derivation", "proofdoc",
      "crosscheck", "include",  "sort",      "func",       "pred",
      "axiom",     "obligation", "in",       "proves",     "shows",
      "by",        "assumed",   "witness",   "via",        "with",
      "informal",  "formal",    "claims",    "semantic",   "structural",
      "forall",    "exists",    "true",      "false",
  };
  return kw.count(w) > 0;
}

namespace {

struct Cursor {
  const std::string& text;
  const std::string& file;
  size_t pos = 0;
  int line = 1;
  int col = 1;

  bool done() const { return pos >= text.size(); }
  char peek(size_t ahead = 0) const {
    return pos + ahead < text.size() ? text[pos + ahead] : '\0';
  }

  // Decodes one UTF-8 codepoint, advancing position and column (columns count
  // codepoints, tabs count as one).
  uint32_t next() {
    unsigned char c = static_cast<unsigned char>(text[pos]);
    uint32_t cp = c;
    size_t len = 1;
    if (c >= 0xF0) len = 4;
    else if (c >= 0xE0) len = 3;
    else if (c >= 0xC0) len = 2;
    if (len > 1 && pos + len <= text.size()) {
      cp = c & (0xFF >> (len + 1));
      for (size_t i = 1; i < len; ++i)
        cp = (cp << 6) | (static_cast<unsigned char>(text[pos + i]) & 0x3F);
    } else {
      len = 1;
    }
    pos += len;
    if (cp == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return cp;
  }
};

bool ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool ident_cont(char c) {
  return ident_start(c) || (c >= '0' && c <= '9') || c == '\'';
}

}  // namespace

std::vector<Token> lex(const std::string& file, const std::string& text,
                       std::vector<Diagnostic>& diagnostics) {
  std::vector<Token> out;
  Cursor cur{text, file};

  auto start_span = [&] {
    SourceSpan s;
    s.file = file;
    s.line = cur.line;
    s.col = cur.col;
    return s;
  };
  auto close = [&](SourceSpan s) {
    s.end_line = cur.line;
    s.end_col = cur.col;
    return s;
  };
  auto push = [&](Tok kind, std::string text, SourceSpan s) {
    out.push_back(Token{kind, std::move(text), close(std::move(s))});
  };

  while (!cur.done()) {
    char c = cur.peek();
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      cur.next();
      continue;
    }
    if (c == '/' && cur.peek(1) == '/') {
      while (!cur.done() && cur.peek() != '\n') cur.next();
      continue;
    }

    SourceSpan span = start_span();

    if (ident_start(c)) {
      std::string word;
      while (!cur.done()) {
        char k = cur.peek();
        if (ident_cont(k)) {
          word += k;
          cur.next();
          continue;
        }
        // '-' continues an identifier only when a letter follows (rule names
        // like impl-intro), so `M->R` still lexes as M, ->, R.
        if (k == '-' && ident_start(cur.peek(1)) && cur.peek(1) != '_') {
          word += k;
          cur.next();
          continue;
        }
        break;
      }
      push(is_keyword(word) ? Tok::Keyword : Tok::Ident, word, span);
      continue;
    }

    if (c == '"') {
      cur.next();
      std::string value;
      bool closed = false;
      while (!cur.done()) {
        char k = cur.peek();
        if (k == '"') {
          cur.next();
          closed = true;
          break;
        }
        if (k == '\\') {
          cur.next();
          char esc = cur.peek();
          cur.next();
          switch (esc) {
            case 'n': value += '\n'; break;
            case 't': value += '\t'; break;
            case '"': value += '"'; break;
            case '\\': value += '\\'; break;
            default: value += esc; break;
          }
          continue;
        }
        if (k == '\n') break;
        value += k;
        cur.next();
      }
      if (!closed)
        diagnostics.push_back({Diagnostic::Severity::Error, "E-PARSE",
                               "unterminated string literal", close(span)});
      push(Tok::String, value, span);
      continue;
    }

    // multi-char operators
    if (c == '-' && cur.peek(1) == '>') {
      cur.next(); cur.next();
      push(Tok::Arrow, "->", span);
      continue;
    }
    if (c == '<' && cur.peek(1) == '-' && cur.peek(2) == '>') {
      cur.next(); cur.next(); cur.next();
      push(Tok::DArrow, "<->", span);
      continue;
    }
    if (c == '/' && cur.peek(1) == '\\') {
      cur.next(); cur.next();
      push(Tok::AndOp, "/\\", span);
      continue;
    }
    if (c == '\\' && cur.peek(1) == '/') {
      cur.next(); cur.next();
      push(Tok::OrOp, "\\/", span);
      continue;
    }
    if (c == '|' && cur.peek(1) == '-') {
      cur.next(); cur.next();
      push(Tok::Turnstile, "|-", span);
      continue;
    }

    switch (c) {
      case '{': cur.next(); push(Tok::LBrace, "{", span); continue;
      case '}': cur.next(); push(Tok::RBrace, "}", span); continue;
      case '(': cur.next(); push(Tok::LParen, "(", span); continue;
      case ')': cur.next(); push(Tok::RParen, ")", span); continue;
      case '[': cur.next(); push(Tok::LBracket, "[", span); continue;
      case ']': cur.next(); push(Tok::RBracket, "]", span); continue;
      case ':': cur.next(); push(Tok::Colon, ":", span); continue;
      case ',': cur.next(); push(Tok::Comma, ",", span); continue;
      case ';': cur.next(); push(Tok::Semi, ";", span); continue;
      case '.': cur.next(); push(Tok::Dot, ".", span); continue;
      case '~': cur.next(); push(Tok::Tilde, "~", span); continue;
      case '=': cur.next(); push(Tok::Equal, "=", span); continue;
      default: break;
    }

    // unicode aliases for the logical symbols
    if (static_cast<unsigned char>(c) >= 0x80) {
      uint32_t cp = cur.next();
      switch (cp) {
        case 0x2200: push(Tok::Keyword, "forall", span); continue;   // for-all
        case 0x2203: push(Tok::Keyword, "exists", span); continue;   // exists
        case 0x00AC: push(Tok::Tilde, "~", span); continue;          // not sign
        case 0x2227: push(Tok::AndOp, "/\\", span); continue;        // wedge
        case 0x2228: push(Tok::OrOp, "\\/", span); continue;         // vee
        case 0x2192: push(Tok::Arrow, "->", span); continue;         // arrow
        case 0x2194: push(Tok::DArrow, "<->", span); continue;       // double arrow
        case 0x22A4: push(Tok::Keyword, "true", span); continue;     // down tack
        case 0x22A5: push(Tok::Keyword, "false", span); continue;    // up tack
        case 0x22A2: push(Tok::Turnstile, "|-", span); continue;     // turnstile
        default:
          diagnostics.push_back({Diagnostic::Severity::Error, "E-PARSE",
                                 "unexpected character (codepoint " +
                                     std::to_string(cp) + ")",
                                 close(span)});
          continue;
      }
    }

    cur.next();
    diagnostics.push_back({Diagnostic::Severity::Error, "E-PARSE",
                           std::string("unexpected character '") + c + "'",
                           close(span)});
  }

  SourceSpan eof = start_span();
  out.push_back(Token{Tok::End, "", close(std::move(eof))});
  return out;
}

}  // namespace tgc
