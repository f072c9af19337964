#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "lexer.hpp"
#include "tgc/frontend.hpp"

namespace tgc {

namespace {

// Thrown to unwind to the closest declaration boundary after a syntax error
// has been recorded.
struct ParseBail {};

struct Parser {
  const std::vector<Token>& toks;
  std::vector<Diagnostic>& diags;
  size_t pos = 0;

  const Token& cur() const { return toks[pos]; }
  const Token& peek(size_t ahead = 1) const {
    return toks[std::min(pos + ahead, toks.size() - 1)];
  }
  bool at(Tok k) const { return cur().kind == k; }
  bool at_kw(const char* w) const {
    return cur().kind == Tok::Keyword && cur().text == w;
  }
  bool at_end() const { return at(Tok::End); }

  Token advance() {
    Token t = cur();
    if (!at_end()) ++pos;
    return t;
  }

  [[noreturn]] void fail(const std::string& message) {
    diags.push_back({Diagnostic::Severity::Error, "E-PARSE", message, cur().span});
    throw ParseBail{};
  }

  Token expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what + ", found '" + describe() + "'");
    return advance();
  }

  void expect_kw(const char* w) {
    if (!at_kw(w)) fail(std::string("expected '") + w + "', found '" + describe() + "'");
    advance();
  }

  std::string describe() const {
    if (at_end()) return "end of file";
    return cur().text.empty() ? "?" : cur().text;
  }

  Named name(const char* what) {
    Token t = expect(Tok::Ident, what);
    return Named{t.text, t.span};
  }

  static SourceSpan join(const SourceSpan& a, const SourceSpan& b) {
    SourceSpan s = a;
    s.end_line = b.end_line;
    s.end_col = b.end_col;
    return s;
  }

  // --- terms and formulas --------------------------------------------------

  STerm parse_term() {
    Token t = expect(Tok::Ident, "a term");
    STerm out;
    out.name = t.text;
    out.span = t.span;
    if (at(Tok::LParen)) {
      out.call = true;
      advance();
      out.args.push_back(parse_term());
      while (at(Tok::Comma)) {
        advance();
        out.args.push_back(parse_term());
      }
      Token close = expect(Tok::RParen, "')'");
      out.span = join(t.span, close.span);
    }
    return out;
  }

  SFormulaPtr mk(SourceSpan span, std::variant<SAtom, SEq, STrue, SFalse, SNot,
                                               SBin, SQuant> node) {
    auto f = std::make_shared<SFormula>();
    f->node = std::move(node);
    f->span = std::move(span);
    return f;
  }

  SFormulaPtr parse_formula() { return parse_iff(); }

  SFormulaPtr parse_iff() {
    SFormulaPtr l = parse_impl();
    while (at(Tok::DArrow)) {
      advance();
      SFormulaPtr r = parse_impl();
      SourceSpan s = join(l->span, r->span);
      l = mk(s, SBin{BinOp::Iff, l, r});
    }
    return l;
  }

  SFormulaPtr parse_impl() {
    SFormulaPtr l = parse_or();
    if (at(Tok::Arrow)) {
      advance();
      SFormulaPtr r = parse_impl();  // right-associative
      SourceSpan s = join(l->span, r->span);
      return mk(s, SBin{BinOp::Implies, l, r});
    }
    return l;
  }

  SFormulaPtr parse_or() {
    SFormulaPtr l = parse_and();
    while (at(Tok::OrOp)) {
      advance();
      SFormulaPtr r = parse_and();
      SourceSpan s = join(l->span, r->span);
      l = mk(s, SBin{BinOp::Or, l, r});
    }
    return l;
  }

  SFormulaPtr parse_and() {
    SFormulaPtr l = parse_unary();
    while (at(Tok::AndOp)) {
      advance();
      SFormulaPtr r = parse_unary();
      SourceSpan s = join(l->span, r->span);
      l = mk(s, SBin{BinOp::And, l, r});
    }
    return l;
  }

  SFormulaPtr parse_unary() {
    if (at(Tok::Tilde)) {
      Token t = advance();
      SFormulaPtr body = parse_unary();
      return mk(join(t.span, body->span), SNot{body});
    }
    if (at_kw("forall") || at_kw("exists")) return parse_quant();
    return parse_atom();
  }

  SFormulaPtr parse_quant() {
    Token q = advance();
    Quant kind = q.text == "forall" ? Quant::Forall : Quant::Exists;
    std::vector<SBinder> binders;
    while (true) {
      Named var = name("a bound variable");
      expect(Tok::Colon, "':'");
      Named sort = name("a sort");
      binders.push_back(SBinder{var.text, sort.text, join(var.span, sort.span),
                                sort.span});
      if (at(Tok::Comma)) {
        advance();
        continue;
      }
      break;
    }
    expect(Tok::Dot, "'.'");
    SFormulaPtr body = parse_formula();  // quantifier scope extends maximally
    return mk(join(q.span, body->span), SQuant{kind, std::move(binders), body});
  }

  SFormulaPtr parse_atom() {
    if (at_kw("true")) {
      Token t = advance();
      return mk(t.span, STrue{});
    }
    if (at_kw("false")) {
      Token t = advance();
      return mk(t.span, SFalse{});
    }
    if (at(Tok::LParen)) {
      advance();
      SFormulaPtr inner = parse_formula();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (!at(Tok::Ident)) fail("expected a formula, found '" + describe() + "'");
    STerm lhs = parse_term();
    if (at(Tok::Equal)) {
      advance();
      STerm rhs = parse_term();
      SourceSpan s = join(lhs.span, rhs.span);
      return mk(s, SEq{std::move(lhs), std::move(rhs)});
    }
    SourceSpan s = lhs.span;
    return mk(s, SAtom{std::move(lhs)});
  }

  // --- theory --------------------------------------------------------------

  DTheory parse_theory() {
    Token start = advance();  // 'theory'
    DTheory d;
    d.name = name("a theory name");
    expect(Tok::LBrace, "'{'");
    while (!at(Tok::RBrace) && !at_end()) {
      if (at(Tok::Semi)) {
        advance();
        continue;
      }
      if (at_kw("sort")) {
        advance();
        d.sorts.push_back(DSortDecl{name("a sort name")});
      } else if (at_kw("func")) {
        advance();
        DFuncDecl f;
        f.name = name("a function name");
        expect(Tok::Colon, "':'");
        std::vector<Named> sorts;
        sorts.push_back(name("a sort"));
        while (at(Tok::Comma)) {
          advance();
          sorts.push_back(name("a sort"));
        }
        if (at(Tok::Arrow)) {
          advance();
          f.result = name("a result sort");
          f.args = std::move(sorts);
        } else {
          if (sorts.size() != 1)
            fail("a constant declaration names exactly one sort");
          f.result = sorts[0];
        }
        d.funcs.push_back(std::move(f));
      } else if (at_kw("pred")) {
        advance();
        DPredDecl p;
        p.name = name("a predicate name");
        if (at(Tok::Colon)) {
          advance();
          p.args.push_back(name("a sort"));
          while (at(Tok::Comma)) {
            advance();
            p.args.push_back(name("a sort"));
          }
        }
        d.preds.push_back(std::move(p));
      } else if (at_kw("axiom")) {
        advance();
        DAxiom a;
        a.name = name("an axiom name");
        expect(Tok::Colon, "':'");
        a.formula = parse_formula();
        d.axioms.push_back(std::move(a));
      } else {
        fail("expected sort, func, pred, or axiom in a theory body");
      }
    }
    Token close = expect(Tok::RBrace, "'}'");
    d.span = join(start.span, close.span);
    return d;
  }

  // --- morphism ------------------------------------------------------------

  DMorphism parse_morphism() {
    Token start = advance();  // 'morphism'
    DMorphism d;
    d.name = name("a morphism name");
    expect(Tok::Colon, "':'");
    d.source = name("the source theory");
    expect(Tok::Arrow, "'->'");
    d.target = name("the target theory");
    expect(Tok::LBrace, "'{'");
    while (!at(Tok::RBrace) && !at_end()) {
      if (at(Tok::Semi)) {
        advance();
        continue;
      }
      if (at_kw("sort")) {
        advance();
        DMapSort m;
        m.from = name("a source sort");
        expect(Tok::Arrow, "'->'");
        m.to = name("a target sort");
        d.sorts.push_back(std::move(m));
      } else if (at_kw("func")) {
        advance();
        DMapFunc m;
        m.from = name("a source function");
        if (at(Tok::LParen)) {
          advance();
          m.params.push_back(name("a parameter"));
          while (at(Tok::Comma)) {
            advance();
            m.params.push_back(name("a parameter"));
          }
          expect(Tok::RParen, "')'");
        }
        expect(Tok::Arrow, "'->'");
        m.image = parse_term();
        d.funcs.push_back(std::move(m));
      } else if (at_kw("pred")) {
        advance();
        DMapPred m;
        m.from = name("a source predicate");
        if (at(Tok::LParen)) {
          advance();
          m.params.push_back(name("a parameter"));
          while (at(Tok::Comma)) {
            advance();
            m.params.push_back(name("a parameter"));
          }
          expect(Tok::RParen, "')'");
        }
        expect(Tok::Arrow, "'->'");
        m.image = parse_formula();
        d.preds.push_back(std::move(m));
      } else if (at_kw("obligation")) {
        Token ob = advance();
        DObligation o;
        o.axiom = name("a source axiom name");
        if (at_kw("by")) {
          advance();
          if (at_kw("axiom")) {
            advance();
            o.method = ObMethod::ByAxiom;
            o.ref = name("a target axiom name");
            o.span = join(ob.span, o.ref.span);
          } else if (at_kw("derivation")) {
            advance();
            o.method = ObMethod::ByDerivation;
            o.ref = name("a derivation name");
            o.span = join(ob.span, o.ref.span);
          } else {
            fail("expected 'axiom' or 'derivation' after 'by'");
          }
        } else if (at_kw("assumed")) {
          advance();
          o.method = ObMethod::Assumed;
          Token reason = expect(Tok::String, "a reason string");
          o.reason = reason.text;
          o.span = join(ob.span, reason.span);
        } else {
          fail("expected 'by' or 'assumed' in an obligation");
        }
        d.obligations.push_back(std::move(o));
      } else {
        fail("expected sort, func, pred, or obligation in a morphism body");
      }
    }
    Token close = expect(Tok::RBrace, "'}'");
    d.span = join(start.span, close.span);
    return d;
  }

  // --- theorem -------------------------------------------------------------

  DTheorem parse_theorem() {
    Token start = advance();  // 'theorem'
    DTheorem d;
    d.name = name("a theorem name");
    expect_kw("in");
    d.theory = name("a theory name");
    expect(Tok::Colon, "':'");
    d.formula = parse_formula();
    SourceSpan last = d.formula->span;
    if (at_kw("assumed")) {
      advance();
      d.assumed = true;
      Token reason = expect(Tok::String, "a reason string");
      d.reason = reason.text;
      last = reason.span;
    }
    d.span = join(start.span, last);
    return d;
  }

  // --- derivation ----------------------------------------------------------

  // A name that may carry a via:/step: qualifier, e.g. [via:idl].
  Named qualified_name() {
    if (!at(Tok::Ident) && !at(Tok::Keyword))
      fail("expected an axiom name, found '" + describe() + "'");
    Token first = advance();
    Named out{first.text, first.span};
    if (at(Tok::Colon)) {
      advance();
      Token second = expect(Tok::Ident, "a name after ':'");
      out.text += ":" + second.text;
      out.span = join(first.span, second.span);
    }
    return out;
  }

  DStep parse_step() {
    DStep s;
    s.label = name("a step label");
    SourceSpan start = s.label.span;
    expect(Tok::Colon, "':'");
    if (!at(Tok::Ident) && !at_kw("axiom"))
      fail("expected a rule name, found '" + describe() + "'");
    Token rule_tok = advance();
    std::optional<Rule> rule = rule_from_name(rule_tok.text);
    if (!rule) {
      diags.push_back({Diagnostic::Severity::Error, "E-PARSE",
                       "unknown rule '" + rule_tok.text + "'", rule_tok.span});
      throw ParseBail{};
    }
    s.rule = *rule;
    s.rule_span = rule_tok.span;

    while (at(Tok::Ident)) s.premises.push_back(name("a premise label"));

    // Rule-directed parameters in brackets.
    auto bracket = [&](auto parse_inner) {
      expect(Tok::LBracket, "'['");
      auto v = parse_inner();
      expect(Tok::RBracket, "']'");
      return v;
    };
    auto parse_binder = [&]() {
      Named var = name("a variable");
      expect(Tok::Colon, "':'");
      Named sort = name("a sort");
      return SBinder{var.text, sort.text, join(var.span, sort.span), sort.span};
    };
    switch (s.rule) {
      case Rule::Axiom:
        s.axiom = bracket([&] { return qualified_name(); });
        break;
      case Rule::ForallElim:
      case Rule::ExistsIntro:
      case Rule::EqRefl:
        s.terms.push_back(bracket([&] { return parse_term(); }));
        break;
      case Rule::ForallIntro:
      case Rule::ExistsElim:
        if (at(Tok::LBracket)) s.var = bracket(parse_binder);
        break;
      case Rule::EqSubst:
        s.var = bracket(parse_binder);
        s.formula = bracket([&] { return parse_formula(); });
        break;
      default:
        break;
    }
    if (at(Tok::LBracket))
      fail(std::string("rule '") + rule_name(s.rule) + "' takes no further parameters");

    expect(Tok::Turnstile, "'|-'");
    std::vector<SFormulaPtr> formulas;
    formulas.push_back(parse_formula());
    while (at(Tok::Comma)) {
      advance();
      formulas.push_back(parse_formula());
    }
    if (at(Tok::Turnstile)) {
      advance();
      s.hyps = std::move(formulas);
      s.concl = parse_formula();
    } else {
      if (formulas.size() != 1)
        fail("hypotheses must be followed by '|-' and a conclusion");
      s.concl = formulas[0];
    }
    s.span = join(start, s.concl->span);
    if (!at(Tok::RBrace)) expect(Tok::Semi, "';'");
    return s;
  }

  DDerivation parse_derivation() {
    Token start = advance();  // 'derivation'
    DDerivation d;
    d.name = name("a derivation name");
    expect_kw("in");
    d.theory = name("a theory name");
    if (at_kw("proves")) {
      advance();
      d.proves = name("a theorem name");
    }
    expect(Tok::LBrace, "'{'");
    while (!at(Tok::RBrace) && !at_end()) d.steps.push_back(parse_step());
    Token close = expect(Tok::RBrace, "'}'");
    d.span = join(start.span, close.span);
    return d;
  }

  // --- proofdoc -------------------------------------------------------------

  DProofDoc parse_proofdoc() {
    Token start = advance();  // 'proofdoc'
    DProofDoc d;
    d.name = name("a document name");
    expect_kw("in");
    d.theory = name("a theory name");
    expect_kw("shows");
    d.shows = name("a theorem name");
    expect(Tok::LBrace, "'{'");
    while (!at(Tok::RBrace) && !at_end()) {
      if (at(Tok::Semi)) {
        advance();
        continue;
      }
      if (at_kw("informal")) {
        Token kw = advance();
        DDocStep s;
        if (at(Tok::Ident) && peek().kind == Tok::Colon) {
          s.label = name("a step label");
          advance();  // ':'
        }
        Token text = expect(Tok::String, "the informal text");
        s.text = text.text;
        SourceSpan last = text.span;
        if (at_kw("claims")) {
          advance();
          s.claim = parse_formula();
          last = s.claim->span;
        }
        s.span = join(kw.span, last);
        d.steps.push_back(std::move(s));
      } else if (at_kw("formal")) {
        Token kw = advance();
        DDocStep s;
        s.formal = true;
        if (at(Tok::Ident) && peek().kind == Tok::Colon) {
          s.label = name("a step label");
          advance();  // ':'
        }
        s.derivation = name("a derivation name");
        s.span = join(kw.span, s.derivation.span);
        d.steps.push_back(std::move(s));
      } else if (at_kw("crosscheck")) {
        advance();
        d.checks.push_back(name("a check name"));
        while (at(Tok::Ident)) d.checks.push_back(name("a check name"));
      } else {
        fail("expected informal, formal, or crosscheck in a document body");
      }
    }
    Token close = expect(Tok::RBrace, "'}'");
    d.span = join(start.span, close.span);
    return d;
  }

  // --- crosscheck ------------------------------------------------------------

  DStmtRef parse_stmt_ref() {
    DStmtRef r;
    r.formula = parse_formula();
    expect_kw("in");
    r.theory = name("a theory name");
    return r;
  }

  DCheck parse_check() {
    Token start = advance();  // 'crosscheck'
    DCheck d;
    d.name = name("a check name");
    expect(Tok::Colon, "':'");
    if (at_kw("semantic")) {
      advance();
      d.structural = false;
      expect(Tok::LParen, "'('");
      d.a1 = parse_stmt_ref();
      expect(Tok::Comma, "','");
      d.a2 = parse_stmt_ref();
      expect(Tok::Comma, "','");
      expect_kw("via");
      d.via.push_back(name("a morphism name"));
      while (at(Tok::Comma) && !(peek().kind == Tok::Keyword && peek().text == "witness")) {
        advance();
        d.via.push_back(name("a morphism name"));
      }
      if (at(Tok::Comma)) {
        advance();
        expect_kw("witness");
        d.witness = name("a derivation name");
      }
      Token close = expect(Tok::RParen, "')'");
      d.span = join(start.span, close.span);
    } else if (at_kw("structural")) {
      advance();
      d.structural = true;
      expect(Tok::LParen, "'('");
      d.deriv1 = name("a derivation name");
      expect_kw("in");
      d.theory1 = name("a theory name");
      expect(Tok::Comma, "','");
      d.deriv2 = name("a derivation name");
      expect_kw("in");
      d.theory2 = name("a theory name");
      Token close = expect(Tok::RParen, "')'");
      SourceSpan last = close.span;
      if (at_kw("with")) {
        advance();
        expect(Tok::LBrace, "'{'");
        while (!at(Tok::RBrace) && !at_end()) {
          Named from = name("a symbol");
          expect(Tok::Arrow, "'->'");
          Named to = name("a symbol");
          d.correspondence.emplace_back(std::move(from), std::move(to));
          if (at(Tok::Comma)) advance();
        }
        Token cb = expect(Tok::RBrace, "'}'");
        last = cb.span;
      }
      d.span = join(start.span, last);
    } else {
      fail("expected 'semantic' or 'structural'");
    }
    return d;
  }

  // --- top level --------------------------------------------------------------

  void sync_to_declaration() {
    int depth = 0;
    while (!at_end()) {
      if (at(Tok::LBrace)) ++depth;
      if (at(Tok::RBrace) && depth > 0) --depth;
      else if (depth == 0 && cur().kind == Tok::Keyword) {
        const std::string& w = cur().text;
        if (w == "theory" || w == "morphism" || w == "theorem" ||
            w == "derivation" || w == "proofdoc" || w == "crosscheck" ||
            w == "include")
          return;
      }
      advance();
    }
  }

  void parse_file(Ast& ast) {
    while (!at_end()) {
      try {
        if (at(Tok::Semi)) advance();
        else if (at_kw("theory")) ast.decls.emplace_back(parse_theory());
        else if (at_kw("morphism")) ast.decls.emplace_back(parse_morphism());
        else if (at_kw("theorem")) ast.decls.emplace_back(parse_theorem());
        else if (at_kw("derivation")) ast.decls.emplace_back(parse_derivation());
        else if (at_kw("proofdoc")) ast.decls.emplace_back(parse_proofdoc());
        else if (at_kw("crosscheck")) ast.decls.emplace_back(parse_check());
        else if (at_kw("include")) {
          Token start = advance();
          Token path = expect(Tok::String, "a file path");
          ast.decls.emplace_back(DInclude{path.text, join(start.span, path.span)});
        } else {
          fail("expected a declaration, found '" + describe() + "'");
        }
      } catch (const ParseBail&) {
        advance();
        sync_to_declaration();
      }
    }
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrCode::IoError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

ParseResult parse_sources(const std::vector<SourceFile>& sources) {
  ParseResult result;
  std::set<std::string> loaded;
  // Queue-based so included files are processed exactly once.
  std::vector<SourceFile> queue = sources;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    // pushing included files below may reallocate the queue, so copy the
    // name out of the current element first
    const std::string src_name = queue[qi].name;
    loaded.insert(src_name);
    std::vector<Token> toks = lex(src_name, queue[qi].text, result.diagnostics);
    Ast file_ast;
    Parser p{toks, result.diagnostics};
    p.parse_file(file_ast);
    for (auto& decl : file_ast.decls) {
      if (const DInclude* inc = std::get_if<DInclude>(&decl)) {
        namespace fs = std::filesystem;
        fs::path base = fs::path(src_name).parent_path();
        std::string full = (base / inc->path).lexically_normal().string();
        if (loaded.count(full)) continue;
        loaded.insert(full);
        try {
          queue.push_back(SourceFile{full, read_file(full)});
        } catch (const Error& e) {
          result.diagnostics.push_back({Diagnostic::Severity::Error, "E-IO",
                                        e.message(), inc->span});
        }
        continue;
      }
      result.ast.decls.push_back(std::move(decl));
    }
  }
  return result;
}

ParseResult parse_files(const std::vector<std::string>& paths) {
  std::vector<SourceFile> sources;
  for (const auto& p : paths) sources.push_back(SourceFile{p, read_file(p)});
  return parse_sources(sources);
}

}  // namespace tgc
