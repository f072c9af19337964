#include "tgc/expr.hpp"

#include <algorithm>

namespace tgc {

const char* name(ErrCode code) {
  switch (code) {
    case ErrCode::UnknownSort: return "unknown-sort";
    case ErrCode::UnknownSymbol: return "unknown-symbol";
    case ErrCode::UnknownVariable: return "unknown-variable";
    case ErrCode::ArityMismatch: return "arity-mismatch";
    case ErrCode::SortMismatch: return "sort-mismatch";
    case ErrCode::EqSortMismatch: return "eq-sort-mismatch";
    case ErrCode::IllFormedFormula: return "ill-formed-formula";
    case ErrCode::DuplicateName: return "duplicate-name";
    case ErrCode::OpenFormula: return "open-formula";
    case ErrCode::BadRuleApplication: return "bad-rule-application";
    case ErrCode::EigenvariableViolation: return "eigenvariable-violation";
    case ErrCode::UnknownAxiom: return "unknown-axiom";
    case ErrCode::DerivationMismatch: return "derivation-mismatch";
    case ErrCode::DuplicateTheoryId: return "duplicate-theory-id";
    case ErrCode::IllTypedAssignment: return "ill-typed-assignment";
    case ErrCode::UnmappedSymbol: return "unmapped-symbol";
    case ErrCode::TheoryMismatch: return "theory-mismatch";
    case ErrCode::NoSuchAxiom: return "no-such-axiom";
    case ErrCode::AxiomNotAlphaEqual: return "axiom-not-alpha-equal";
    case ErrCode::ObligationFailure: return "obligation-failure";
    case ErrCode::DuplicateId: return "duplicate-id";
    case ErrCode::DanglingEndpoint: return "dangling-endpoint";
    case ErrCode::UnknownTheory: return "unknown-theory";
    case ErrCode::UnknownTheorem: return "unknown-theorem";
    case ErrCode::PathMismatch: return "path-mismatch";
    case ErrCode::UnverifiedPath: return "unverified-path";
    case ErrCode::UnknownDerivation: return "unknown-derivation";
    case ErrCode::UnknownMorphism: return "unknown-morphism";
    case ErrCode::IllFormedCheck: return "ill-formed-check";
    case ErrCode::IllFormedTheorem: return "ill-formed-theorem";
    case ErrCode::NotEstablished: return "not-established";
    case ErrCode::AssumedContent: return "assumed-content";
    case ErrCode::ParseError: return "parse-error";
    case ErrCode::UnknownReference: return "unknown-reference";
    case ErrCode::IoError: return "io-error";
    case ErrCode::UsageError: return "usage-error";
  }
  return "unknown-error";
}

// ---------------------------------------------------------------------------
// Signature

void Signature::check_fresh(const std::string& n) const {
  if (functions_.count(n) || predicates_.count(n))
    throw Error(ErrCode::DuplicateName, "symbol '" + n + "' already declared");
}

void Signature::check_sort(const std::string& n) const {
  if (!sorts_.count(n))
    throw Error(ErrCode::UnknownSort, "unknown sort '" + n + "'");
}

void Signature::add_sort(const std::string& n) {
  if (sorts_.count(n))
    throw Error(ErrCode::DuplicateName, "sort '" + n + "' already declared");
  sorts_.insert(n);
}

void Signature::add_function(const std::string& n, std::vector<std::string> args,
                             std::string result) {
  check_fresh(n);
  for (const auto& a : args) check_sort(a);
  check_sort(result);
  functions_.emplace(n, FuncDecl{std::move(args), std::move(result)});
}

void Signature::add_predicate(const std::string& n, std::vector<std::string> args) {
  check_fresh(n);
  for (const auto& a : args) check_sort(a);
  predicates_.emplace(n, std::move(args));
}

const FuncDecl* Signature::function(const std::string& n) const {
  auto it = functions_.find(n);
  return it == functions_.end() ? nullptr : &it->second;
}

const std::vector<std::string>* Signature::predicate(const std::string& n) const {
  auto it = predicates_.find(n);
  return it == predicates_.end() ? nullptr : &it->second;
}

bool Signature::includes(const Signature& sub) const {
  for (const auto& s : sub.sorts_)
    if (!sorts_.count(s)) return false;
  for (const auto& [n, d] : sub.functions_) {
    auto it = functions_.find(n);
    if (it == functions_.end() || it->second.args != d.args ||
        it->second.result != d.result)
      return false;
  }
  for (const auto& [n, d] : sub.predicates_) {
    auto it = predicates_.find(n);
    if (it == predicates_.end() || it->second != d) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Constructors

TermPtr mk_var(std::string name, std::string sort) {
  return std::make_shared<Term>(Term{Var{std::move(name), std::move(sort)}});
}

TermPtr mk_app(std::string fn, std::vector<TermPtr> args) {
  return std::make_shared<Term>(Term{App{std::move(fn), std::move(args)}});
}

FormulaPtr mk_pred(std::string name, std::vector<TermPtr> args) {
  return std::make_shared<Formula>(Formula{Pred{std::move(name), std::move(args)}});
}

FormulaPtr mk_eq(TermPtr lhs, TermPtr rhs) {
  return std::make_shared<Formula>(Formula{Eq{std::move(lhs), std::move(rhs)}});
}

FormulaPtr mk_truth() { return std::make_shared<Formula>(Formula{Truth{}}); }
FormulaPtr mk_falsity() { return std::make_shared<Formula>(Formula{Falsity{}}); }

FormulaPtr mk_not(FormulaPtr body) {
  return std::make_shared<Formula>(Formula{Not{std::move(body)}});
}

FormulaPtr mk_bin(BinOp op, FormulaPtr lhs, FormulaPtr rhs) {
  return std::make_shared<Formula>(Formula{Bin{op, std::move(lhs), std::move(rhs)}});
}

FormulaPtr mk_and(FormulaPtr l, FormulaPtr r) { return mk_bin(BinOp::And, std::move(l), std::move(r)); }
FormulaPtr mk_or(FormulaPtr l, FormulaPtr r) { return mk_bin(BinOp::Or, std::move(l), std::move(r)); }
FormulaPtr mk_implies(FormulaPtr l, FormulaPtr r) { return mk_bin(BinOp::Implies, std::move(l), std::move(r)); }
FormulaPtr mk_iff(FormulaPtr l, FormulaPtr r) { return mk_bin(BinOp::Iff, std::move(l), std::move(r)); }

FormulaPtr mk_quant(Quant q, std::string var, std::string sort, FormulaPtr body) {
  return std::make_shared<Formula>(
      Formula{Quantified{q, std::move(var), std::move(sort), std::move(body)}});
}

FormulaPtr mk_forall(std::string var, std::string sort, FormulaPtr body) {
  return mk_quant(Quant::Forall, std::move(var), std::move(sort), std::move(body));
}

FormulaPtr mk_exists(std::string var, std::string sort, FormulaPtr body) {
  return mk_quant(Quant::Exists, std::move(var), std::move(sort), std::move(body));
}

// ---------------------------------------------------------------------------
// Well-formedness

namespace {

std::string wf_term_at(const Signature& sig, const VarCtx& ctx, const TermPtr& t,
                       std::vector<int>& path) {
  if (const Var* v = std::get_if<Var>(&t->node)) {
    auto it = ctx.find(v->name);
    if (it == ctx.end())
      throw Error(ErrCode::UnknownVariable,
                  "variable '" + v->name + "' not in context", path);
    if (it->second != v->sort)
      throw Error(ErrCode::SortMismatch,
                  "variable '" + v->name + "' has sort " + it->second +
                      " here, annotated " + v->sort,
                  path);
    return v->sort;
  }
  const App& a = std::get<App>(t->node);
  const FuncDecl* d = sig.function(a.fn);
  if (!d)
    throw Error(ErrCode::UnknownSymbol, "unknown function '" + a.fn + "'", path);
  if (d->args.size() != a.args.size())
    throw Error(ErrCode::ArityMismatch,
                "'" + a.fn + "' expects " + std::to_string(d->args.size()) +
                    " argument(s), got " + std::to_string(a.args.size()),
                path);
  for (size_t i = 0; i < a.args.size(); ++i) {
    path.push_back(static_cast<int>(i));
    std::string got = wf_term_at(sig, ctx, a.args[i], path);
    if (got != d->args[i])
      throw Error(ErrCode::SortMismatch,
                  "argument " + std::to_string(i + 1) + " of '" + a.fn +
                      "' has sort " + got + ", expected " + d->args[i],
                  path);
    path.pop_back();
  }
  return d->result;
}

void wf_formula_at(const Signature& sig, VarCtx& ctx, const FormulaPtr& f,
                   std::vector<int>& path) {
  struct V {
    const Signature& sig;
    VarCtx& ctx;
    std::vector<int>& path;

    void operator()(const Pred& p) {
      const std::vector<std::string>* d = sig.predicate(p.name);
      if (!d)
        throw Error(ErrCode::UnknownSymbol, "unknown predicate '" + p.name + "'",
                    path);
      if (d->size() != p.args.size())
        throw Error(ErrCode::ArityMismatch,
                    "'" + p.name + "' expects " + std::to_string(d->size()) +
                        " argument(s), got " + std::to_string(p.args.size()),
                    path);
      for (size_t i = 0; i < p.args.size(); ++i) {
        path.push_back(static_cast<int>(i));
        std::string got = wf_term_at(sig, ctx, p.args[i], path);
        if (got != (*d)[i])
          throw Error(ErrCode::SortMismatch,
                      "argument " + std::to_string(i + 1) + " of '" + p.name +
                          "' has sort " + got + ", expected " + (*d)[i],
                      path);
        path.pop_back();
      }
    }
    void operator()(const Eq& e) {
      path.push_back(0);
      std::string l = wf_term_at(sig, ctx, e.lhs, path);
      path.pop_back();
      path.push_back(1);
      std::string r = wf_term_at(sig, ctx, e.rhs, path);
      path.pop_back();
      if (l != r)
        throw Error(ErrCode::EqSortMismatch,
                    "equality between sorts " + l + " and " + r, path);
    }
    void operator()(const Truth&) {}
    void operator()(const Falsity&) {}
    void operator()(const Not& n) {
      path.push_back(0);
      wf_formula_at(sig, ctx, n.body, path);
      path.pop_back();
    }
    void operator()(const Bin& b) {
      path.push_back(0);
      wf_formula_at(sig, ctx, b.lhs, path);
      path.pop_back();
      path.push_back(1);
      wf_formula_at(sig, ctx, b.rhs, path);
      path.pop_back();
    }
    void operator()(const Quantified& q) {
      if (!sig.has_sort(q.sort))
        throw Error(ErrCode::UnknownSort, "unknown sort '" + q.sort + "'", path);
      auto prev = ctx.find(q.var);
      std::optional<std::string> saved;
      if (prev != ctx.end()) saved = prev->second;
      ctx[q.var] = q.sort;  // inner binders shadow outer same-named variables
      path.push_back(0);
      wf_formula_at(sig, ctx, q.body, path);
      path.pop_back();
      if (saved)
        ctx[q.var] = *saved;
      else
        ctx.erase(q.var);
    }
  };
  std::visit(V{sig, ctx, path}, f->node);
}

}  // namespace

std::string wf_term(const Signature& sig, const VarCtx& ctx, const TermPtr& t) {
  std::vector<int> path;
  return wf_term_at(sig, ctx, t, path);
}

void wf_formula(const Signature& sig, const VarCtx& ctx, const FormulaPtr& f) {
  std::vector<int> path;
  VarCtx scratch = ctx;
  wf_formula_at(sig, scratch, f, path);
}

bool is_closed(const FormulaPtr& f) { return free_vars(f).empty(); }

// ---------------------------------------------------------------------------
// Equality

bool term_eq(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (const Var* va = std::get_if<Var>(&a->node)) {
    const Var* vb = std::get_if<Var>(&b->node);
    return vb && va->name == vb->name && va->sort == vb->sort;
  }
  const App& aa = std::get<App>(a->node);
  const App* ab = std::get_if<App>(&b->node);
  if (!ab || aa.fn != ab->fn || aa.args.size() != ab->args.size()) return false;
  for (size_t i = 0; i < aa.args.size(); ++i)
    if (!term_eq(aa.args[i], ab->args[i])) return false;
  return true;
}

namespace {

// Parallel binder stacks; a variable occurrence refers to the innermost
// binder with its name.
using BinderStack = std::vector<std::pair<std::string, std::string>>;

int binder_index(const BinderStack& s, const std::string& name) {
  for (int i = static_cast<int>(s.size()) - 1; i >= 0; --i)
    if (s[static_cast<size_t>(i)].first == name) return i;
  return -1;
}

bool alpha_term(const TermPtr& a, const TermPtr& b, const BinderStack& sa,
                const BinderStack& sb) {
  if (const Var* va = std::get_if<Var>(&a->node)) {
    const Var* vb = std::get_if<Var>(&b->node);
    if (!vb) return false;
    int ia = binder_index(sa, va->name);
    int ib = binder_index(sb, vb->name);
    if (ia != ib) return false;
    if (ia >= 0) return va->sort == vb->sort;
    return va->name == vb->name && va->sort == vb->sort;
  }
  const App& aa = std::get<App>(a->node);
  const App* ab = std::get_if<App>(&b->node);
  if (!ab || aa.fn != ab->fn || aa.args.size() != ab->args.size()) return false;
  for (size_t i = 0; i < aa.args.size(); ++i)
    if (!alpha_term(aa.args[i], ab->args[i], sa, sb)) return false;
  return true;
}

bool alpha_formula(const FormulaPtr& a, const FormulaPtr& b, BinderStack& sa,
                   BinderStack& sb) {
  if (a->node.index() != b->node.index()) return false;
  if (const Pred* pa = std::get_if<Pred>(&a->node)) {
    const Pred& pb = std::get<Pred>(b->node);
    if (pa->name != pb.name || pa->args.size() != pb.args.size()) return false;
    for (size_t i = 0; i < pa->args.size(); ++i)
      if (!alpha_term(pa->args[i], pb.args[i], sa, sb)) return false;
    return true;
  }
  if (const Eq* ea = std::get_if<Eq>(&a->node)) {
    const Eq& eb = std::get<Eq>(b->node);
    return alpha_term(ea->lhs, eb.lhs, sa, sb) && alpha_term(ea->rhs, eb.rhs, sa, sb);
  }
  if (std::get_if<Truth>(&a->node) || std::get_if<Falsity>(&a->node)) return true;
  if (const Not* na = std::get_if<Not>(&a->node)) {
    const Not& nb = std::get<Not>(b->node);
    return alpha_formula(na->body, nb.body, sa, sb);
  }
  if (const Bin* ba = std::get_if<Bin>(&a->node)) {
    const Bin& bb = std::get<Bin>(b->node);
    return ba->op == bb.op && alpha_formula(ba->lhs, bb.lhs, sa, sb) &&
           alpha_formula(ba->rhs, bb.rhs, sa, sb);
  }
  const Quantified& qa = std::get<Quantified>(a->node);
  const Quantified& qb = std::get<Quantified>(b->node);
  if (qa.q != qb.q || qa.sort != qb.sort) return false;
  sa.emplace_back(qa.var, qa.sort);
  sb.emplace_back(qb.var, qb.sort);
  bool ok = alpha_formula(qa.body, qb.body, sa, sb);
  sa.pop_back();
  sb.pop_back();
  return ok;
}

}  // namespace

bool formula_eq(const FormulaPtr& a, const FormulaPtr& b) {
  if (a->node.index() != b->node.index()) return false;
  if (const Pred* pa = std::get_if<Pred>(&a->node)) {
    const Pred& pb = std::get<Pred>(b->node);
    if (pa->name != pb.name || pa->args.size() != pb.args.size()) return false;
    for (size_t i = 0; i < pa->args.size(); ++i)
      if (!term_eq(pa->args[i], pb.args[i])) return false;
    return true;
  }
  if (const Eq* ea = std::get_if<Eq>(&a->node)) {
    const Eq& eb = std::get<Eq>(b->node);
    return term_eq(ea->lhs, eb.lhs) && term_eq(ea->rhs, eb.rhs);
  }
  if (std::get_if<Truth>(&a->node) || std::get_if<Falsity>(&a->node)) return true;
  if (const Not* na = std::get_if<Not>(&a->node))
    return formula_eq(na->body, std::get<Not>(b->node).body);
  if (const Bin* ba = std::get_if<Bin>(&a->node)) {
    const Bin& bb = std::get<Bin>(b->node);
    return ba->op == bb.op && formula_eq(ba->lhs, bb.lhs) &&
           formula_eq(ba->rhs, bb.rhs);
  }
  const Quantified& qa = std::get<Quantified>(a->node);
  const Quantified& qb = std::get<Quantified>(b->node);
  return qa.q == qb.q && qa.var == qb.var && qa.sort == qb.sort &&
         formula_eq(qa.body, qb.body);
}

bool alpha_eq(const TermPtr& a, const TermPtr& b) {
  BinderStack sa, sb;
  return alpha_term(a, b, sa, sb);
}

bool alpha_eq(const FormulaPtr& a, const FormulaPtr& b) {
  BinderStack sa, sb;
  return alpha_formula(a, b, sa, sb);
}

// ---------------------------------------------------------------------------
// Free variables

namespace {

void free_term(const TermPtr& t, const std::set<std::string>& bound,
               std::set<std::pair<std::string, std::string>>& out) {
  if (const Var* v = std::get_if<Var>(&t->node)) {
    if (!bound.count(v->name)) out.insert({v->name, v->sort});
    return;
  }
  for (const auto& a : std::get<App>(t->node).args) free_term(a, bound, out);
}

void free_formula(const FormulaPtr& f, std::set<std::string>& bound,
                  std::set<std::pair<std::string, std::string>>& out) {
  if (const Pred* p = std::get_if<Pred>(&f->node)) {
    for (const auto& a : p->args) free_term(a, bound, out);
  } else if (const Eq* e = std::get_if<Eq>(&f->node)) {
    free_term(e->lhs, bound, out);
    free_term(e->rhs, bound, out);
  } else if (const Not* n = std::get_if<Not>(&f->node)) {
    free_formula(n->body, bound, out);
  } else if (const Bin* b = std::get_if<Bin>(&f->node)) {
    free_formula(b->lhs, bound, out);
    free_formula(b->rhs, bound, out);
  } else if (const Quantified* q = std::get_if<Quantified>(&f->node)) {
    bool fresh = bound.insert(q->var).second;
    free_formula(q->body, bound, out);
    if (fresh) bound.erase(q->var);
  }
}

}  // namespace

std::set<std::pair<std::string, std::string>> free_vars(const TermPtr& t) {
  std::set<std::pair<std::string, std::string>> out;
  free_term(t, {}, out);
  return out;
}

std::set<std::pair<std::string, std::string>> free_vars(const FormulaPtr& f) {
  std::set<std::pair<std::string, std::string>> out;
  std::set<std::string> bound;
  free_formula(f, bound, out);
  return out;
}

std::set<std::string> free_var_names(const FormulaPtr& f) {
  std::set<std::string> out;
  for (const auto& [n, s] : free_vars(f)) out.insert(n);
  return out;
}

bool occurs_free(const std::string& name, const FormulaPtr& f) {
  return free_var_names(f).count(name) > 0;
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

TermPtr subst_term(const TermPtr& t, const Subst& s) {
  if (const Var* v = std::get_if<Var>(&t->node)) {
    auto it = s.find(v->name);
    return it == s.end() ? t : it->second;
  }
  const App& a = std::get<App>(t->node);
  std::vector<TermPtr> args;
  args.reserve(a.args.size());
  bool changed = false;
  for (const auto& arg : a.args) {
    TermPtr n = subst_term(arg, s);
    changed = changed || n.get() != arg.get();
    args.push_back(std::move(n));
  }
  return changed ? mk_app(a.fn, std::move(args)) : t;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!taken.count(cand)) return cand;
  }
}

FormulaPtr subst_formula(const FormulaPtr& f, const Subst& s) {
  if (s.empty()) return f;
  if (const Pred* p = std::get_if<Pred>(&f->node)) {
    std::vector<TermPtr> args;
    args.reserve(p->args.size());
    for (const auto& a : p->args) args.push_back(subst_term(a, s));
    return mk_pred(p->name, std::move(args));
  }
  if (const Eq* e = std::get_if<Eq>(&f->node))
    return mk_eq(subst_term(e->lhs, s), subst_term(e->rhs, s));
  if (std::get_if<Truth>(&f->node) || std::get_if<Falsity>(&f->node)) return f;
  if (const Not* n = std::get_if<Not>(&f->node))
    return mk_not(subst_formula(n->body, s));
  if (const Bin* b = std::get_if<Bin>(&f->node))
    return mk_bin(b->op, subst_formula(b->lhs, s), subst_formula(b->rhs, s));

  const Quantified& q = std::get<Quantified>(f->node);
  // Keep only substitutions for variables actually free in the body, minus
  // the one this binder shadows.
  std::set<std::string> body_free;
  for (const auto& [n, srt] : free_vars(q.body)) body_free.insert(n);
  Subst active;
  for (const auto& [n, repl] : s)
    if (n != q.var && body_free.count(n)) active.emplace(n, repl);
  if (active.empty()) return f;

  bool captures = false;
  std::set<std::string> replacement_free;
  for (const auto& [n, repl] : active)
    for (const auto& [fn, fs] : free_vars(repl)) replacement_free.insert(fn);
  captures = replacement_free.count(q.var) > 0;

  if (!captures)
    return mk_quant(q.q, q.var, q.sort, subst_formula(q.body, active));

  std::set<std::string> taken = replacement_free;
  taken.insert(body_free.begin(), body_free.end());
  taken.insert(q.var);
  std::string renamed = fresh_name(q.var, taken);
  active[q.var] = mk_var(renamed, q.sort);
  return mk_quant(q.q, renamed, q.sort, subst_formula(q.body, active));
}

}  // namespace

TermPtr substitute(const TermPtr& t, const Subst& s) {
  return s.empty() ? t : subst_term(t, s);
}

FormulaPtr substitute(const FormulaPtr& f, const Subst& s) {
  return subst_formula(f, s);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

void print_term(const TermPtr& t, std::string& out) {
  if (const Var* v = std::get_if<Var>(&t->node)) {
    out += v->name;
    return;
  }
  const App& a = std::get<App>(t->node);
  out += a.fn;
  if (a.args.empty()) return;
  out += "(";
  for (size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ",";
    print_term(a.args[i], out);
  }
  out += ")";
}

// Precedence: iff < implies < or < and < not < atoms.  Implication is
// right-associative; and/or associate to the left.
int prec(const FormulaPtr& f) {
  if (std::get_if<Quantified>(&f->node)) return 0;
  if (const Bin* b = std::get_if<Bin>(&f->node)) {
    switch (b->op) {
      case BinOp::Iff: return 1;
      case BinOp::Implies: return 2;
      case BinOp::Or: return 3;
      case BinOp::And: return 4;
    }
  }
  if (std::get_if<Not>(&f->node)) return 5;
  return 6;
}

void print_formula(const FormulaPtr& f, int min_prec, std::string& out) {
  int p = prec(f);
  bool paren = p < min_prec;
  if (paren) out += "(";
  if (const Pred* pr = std::get_if<Pred>(&f->node)) {
    out += pr->name;
    if (!pr->args.empty()) {
      out += "(";
      for (size_t i = 0; i < pr->args.size(); ++i) {
        if (i) out += ",";
        print_term(pr->args[i], out);
      }
      out += ")";
    }
  } else if (const Eq* e = std::get_if<Eq>(&f->node)) {
    print_term(e->lhs, out);
    out += " = ";
    print_term(e->rhs, out);
  } else if (std::get_if<Truth>(&f->node)) {
    out += "true";
  } else if (std::get_if<Falsity>(&f->node)) {
    out += "false";
  } else if (const Not* n = std::get_if<Not>(&f->node)) {
    out += "~";
    print_formula(n->body, 5, out);
  } else if (const Bin* b = std::get_if<Bin>(&f->node)) {
    const char* op = b->op == BinOp::And       ? " /\\ "
                     : b->op == BinOp::Or      ? " \\/ "
                     : b->op == BinOp::Implies ? " -> "
                                               : " <-> ";
    // left operand binds one tighter for left-associative ops, right operand
    // one tighter for the right-associative ones
    int lp = b->op == BinOp::Implies ? p + 1 : p;
    int rp = b->op == BinOp::Implies ? p : p + 1;
    print_formula(b->lhs, lp, out);
    out += op;
    print_formula(b->rhs, rp, out);
  } else {
    const Quantified& q = std::get<Quantified>(f->node);
    out += q.q == Quant::Forall ? "forall " : "exists ";
    out += q.var + ":" + q.sort;
    // merge runs of same-quantifier binders for readability
    const Formula* body = q.body.get();
    FormulaPtr body_ptr = q.body;
    while (const Quantified* inner = std::get_if<Quantified>(&body->node)) {
      if (inner->q != q.q) break;
      out += ", " + inner->var + ":" + inner->sort;
      body_ptr = inner->body;
      body = body_ptr.get();
    }
    out += ". ";
    print_formula(body_ptr, 0, out);
  }
  if (paren) out += ")";
}

}  // namespace

std::string to_text(const TermPtr& t) {
  std::string out;
  print_term(t, out);
  return out;
}

std::string to_text(const FormulaPtr& f) {
  std::string out;
  print_formula(f, 0, out);
  return out;
}

}  // namespace tgc
