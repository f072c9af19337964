#include <sstream>

#include "tgc/frontend.hpp"

namespace tgc {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

void print_term(std::ostream& os, const STerm& t) {
  os << t.name;
  if (t.call) {
    os << '(';
    for (size_t i = 0; i < t.args.size(); ++i) {
      if (i) os << ", ";
      print_term(os, t.args[i]);
    }
    os << ')';
  }
}

// Precedence mirrors the parser: iff < implies < or < and < unary; quantifiers
// extend to the end of the formula.
int prec_of(const SFormulaPtr& f) {
  if (std::get_if<SQuant>(&f->node)) return 0;
  if (const SBin* b = std::get_if<SBin>(&f->node)) {
    switch (b->op) {
      case BinOp::Iff: return 1;
      case BinOp::Implies: return 2;
      case BinOp::Or: return 3;
      case BinOp::And: return 4;
    }
  }
  if (std::get_if<SNot>(&f->node)) return 5;
  return 6;
}

void print_formula(std::ostream& os, const SFormulaPtr& f, int min_prec) {
  int p = prec_of(f);
  bool paren = p < min_prec;
  if (paren) os << '(';
  if (const SAtom* a = std::get_if<SAtom>(&f->node)) {
    print_term(os, a->term);
  } else if (const SEq* e = std::get_if<SEq>(&f->node)) {
    print_term(os, e->lhs);
    os << " = ";
    print_term(os, e->rhs);
  } else if (std::get_if<STrue>(&f->node)) {
    os << "true";
  } else if (std::get_if<SFalse>(&f->node)) {
    os << "false";
  } else if (const SNot* n = std::get_if<SNot>(&f->node)) {
    os << '~';
    print_formula(os, n->body, 5);
  } else if (const SBin* b = std::get_if<SBin>(&f->node)) {
    const char* op = "";
    int lp = p, rp = p + 1;
    switch (b->op) {
      case BinOp::And: op = " /\\ "; break;
      case BinOp::Or: op = " \\/ "; break;
      case BinOp::Implies: op = " -> "; lp = p + 1; rp = p; break;
      case BinOp::Iff: op = " <-> "; break;
    }
    print_formula(os, b->lhs, lp);
    os << op;
    print_formula(os, b->rhs, rp);
  } else {
    const SQuant& q = std::get<SQuant>(f->node);
    os << (q.q == Quant::Forall ? "forall " : "exists ");
    for (size_t i = 0; i < q.binders.size(); ++i) {
      if (i) os << ", ";
      os << q.binders[i].var << ':' << q.binders[i].sort;
    }
    os << ". ";
    print_formula(os, q.body, 0);
  }
  if (paren) os << ')';
}

std::string fmt(const SFormulaPtr& f) {
  std::ostringstream os;
  print_formula(os, f, 0);
  return os.str();
}

std::string fmt(const STerm& t) {
  std::ostringstream os;
  print_term(os, t);
  return os.str();
}

struct Printer {
  std::ostringstream os;

  void theory(const DTheory& d) {
    os << "theory " << d.name.text << " {\n";
    for (const auto& s : d.sorts) os << "  sort " << s.name.text << ";\n";
    for (const auto& f : d.funcs) {
      os << "  func " << f.name.text << " : ";
      for (size_t i = 0; i < f.args.size(); ++i) {
        if (i) os << ", ";
        os << f.args[i].text;
      }
      if (!f.args.empty()) os << " -> ";
      os << f.result.text << ";\n";
    }
    for (const auto& p : d.preds) {
      os << "  pred " << p.name.text;
      for (size_t i = 0; i < p.args.size(); ++i)
        os << (i ? ", " : " : ") << p.args[i].text;
      os << ";\n";
    }
    for (const auto& a : d.axioms)
      os << "  axiom " << a.name.text << " : " << fmt(a.formula) << ";\n";
    os << "}\n";
  }

  void params(const std::vector<Named>& ps) {
    if (ps.empty()) return;
    os << '(';
    for (size_t i = 0; i < ps.size(); ++i) {
      if (i) os << ", ";
      os << ps[i].text;
    }
    os << ')';
  }

  void morphism(const DMorphism& d) {
    os << "morphism " << d.name.text << " : " << d.source.text << " -> "
       << d.target.text << " {\n";
    for (const auto& m : d.sorts)
      os << "  sort " << m.from.text << " -> " << m.to.text << ";\n";
    for (const auto& m : d.funcs) {
      os << "  func " << m.from.text;
      params(m.params);
      os << " -> " << fmt(m.image) << ";\n";
    }
    for (const auto& m : d.preds) {
      os << "  pred " << m.from.text;
      params(m.params);
      os << " -> " << fmt(m.image) << ";\n";
    }
    for (const auto& o : d.obligations) {
      os << "  obligation " << o.axiom.text;
      switch (o.method) {
        case ObMethod::ByAxiom: os << " by axiom " << o.ref.text; break;
        case ObMethod::ByDerivation: os << " by derivation " << o.ref.text; break;
        case ObMethod::Assumed: os << " assumed " << quote(o.reason); break;
      }
      os << ";\n";
    }
    os << "}\n";
  }

  void theorem(const DTheorem& d) {
    os << "theorem " << d.name.text << " in " << d.theory.text << " : "
       << fmt(d.formula);
    if (d.assumed) os << " assumed " << quote(d.reason);
    os << ";\n";
  }

  void step(const DStep& s) {
    os << "  " << s.label.text << " : " << rule_name(s.rule);
    for (const auto& p : s.premises) os << ' ' << p.text;
    switch (s.rule) {
      case Rule::Axiom:
        os << " [" << s.axiom.text << ']';
        break;
      case Rule::ForallElim:
      case Rule::ExistsIntro:
      case Rule::EqRefl:
        os << " [" << fmt(s.terms[0]) << ']';
        break;
      case Rule::ForallIntro:
      case Rule::ExistsElim:
        if (s.var) os << " [" << s.var->var << ':' << s.var->sort << ']';
        break;
      case Rule::EqSubst:
        os << " [" << s.var->var << ':' << s.var->sort << "] [" << fmt(s.formula)
           << ']';
        break;
      default:
        break;
    }
    os << " |- ";
    for (size_t i = 0; i < s.hyps.size(); ++i)
      os << fmt(s.hyps[i]) << (i + 1 < s.hyps.size() ? ", " : " |- ");
    os << fmt(s.concl) << ";\n";
  }

  void derivation(const DDerivation& d) {
    os << "derivation " << d.name.text << " in " << d.theory.text;
    if (d.proves) os << " proves " << d.proves->text;
    os << " {\n";
    for (const auto& s : d.steps) step(s);
    os << "}\n";
  }

  void proofdoc(const DProofDoc& d) {
    os << "proofdoc " << d.name.text << " in " << d.theory.text << " shows "
       << d.shows.text << " {\n";
    for (const auto& s : d.steps) {
      if (s.formal) {
        os << "  formal ";
        if (!s.label.text.empty()) os << s.label.text << " : ";
        os << s.derivation.text << ";\n";
      } else {
        os << "  informal ";
        if (!s.label.text.empty()) os << s.label.text << " : ";
        os << quote(s.text);
        if (s.claim) os << " claims " << fmt(s.claim);
        os << ";\n";
      }
    }
    if (!d.checks.empty()) {
      os << "  crosscheck";
      for (const auto& c : d.checks) os << ' ' << c.text;
      os << ";\n";
    }
    os << "}\n";
  }

  void check(const DCheck& d) {
    os << "crosscheck " << d.name.text << " : ";
    if (d.structural) {
      os << "structural(" << d.deriv1.text << " in " << d.theory1.text << ", "
         << d.deriv2.text << " in " << d.theory2.text << ")";
      if (!d.correspondence.empty()) {
        os << " with { ";
        for (size_t i = 0; i < d.correspondence.size(); ++i) {
          if (i) os << ", ";
          os << d.correspondence[i].first.text << " -> "
             << d.correspondence[i].second.text;
        }
        os << " }";
      }
    } else {
      os << "semantic(" << fmt(d.a1.formula) << " in " << d.a1.theory.text << ", "
         << fmt(d.a2.formula) << " in " << d.a2.theory.text << ", via ";
      for (size_t i = 0; i < d.via.size(); ++i) {
        if (i) os << ", ";
        os << d.via[i].text;
      }
      if (d.witness) os << ", witness " << d.witness->text;
      os << ")";
    }
    os << ";\n";
  }

  void decl(const Declaration& d) {
    if (const DTheory* x = std::get_if<DTheory>(&d)) theory(*x);
    else if (const DMorphism* x = std::get_if<DMorphism>(&d)) morphism(*x);
    else if (const DTheorem* x = std::get_if<DTheorem>(&d)) theorem(*x);
    else if (const DDerivation* x = std::get_if<DDerivation>(&d)) derivation(*x);
    else if (const DProofDoc* x = std::get_if<DProofDoc>(&d)) proofdoc(*x);
    else if (const DCheck* x = std::get_if<DCheck>(&d)) check(*x);
    else if (const DInclude* x = std::get_if<DInclude>(&d))
      os << "include " << quote(x->path) << ";\n";
  }
};

}  // namespace

std::string pretty_print(const SFormulaPtr& f) { return fmt(f); }

std::string pretty_print(const Ast& ast) {
  Printer p;
  for (size_t i = 0; i < ast.decls.size(); ++i) {
    if (i) p.os << '\n';
    p.decl(ast.decls[i]);
  }
  return p.os.str();
}

}  // namespace tgc
