#include "tgc/crosscheck.hpp"

#include <algorithm>

namespace tgc {

const char* name(CheckOutcome::Status s) {
  switch (s) {
    case CheckOutcome::Status::Success: return "success";
    case CheckOutcome::Status::Failure: return "failure";
    case CheckOutcome::Status::Pending: return "pending";
  }
  return "?";
}

const std::string& check_id(const Check& c) {
  if (const StructuralCheck* s = std::get_if<StructuralCheck>(&c)) return s->id;
  return std::get<SemanticCheck>(c).id;
}

SkeletonNode skeleton(const Derivation& d) {
  auto build = [&](auto&& self, size_t idx) -> SkeletonNode {
    const Step& s = d.steps[idx];
    SkeletonNode n{rule_name(s.rule), {}};
    for (size_t p : s.premises) n.children.push_back(self(self, p));
    return n;
  };
  if (d.steps.empty()) return SkeletonNode{"empty", {}};
  return build(build, d.steps.size() - 1);
}

bool skeleton_eq(const SkeletonNode& a, const SkeletonNode& b) {
  if (a.rule != b.rule || a.children.size() != b.children.size()) return false;
  for (size_t i = 0; i < a.children.size(); ++i)
    if (!skeleton_eq(a.children[i], b.children[i])) return false;
  return true;
}

std::string to_text(const SkeletonNode& n) {
  std::string out = n.rule;
  if (!n.children.empty()) {
    out += "(";
    for (size_t i = 0; i < n.children.size(); ++i) {
      if (i) out += ",";
      out += to_text(n.children[i]);
    }
    out += ")";
  }
  return out;
}

namespace {

// Locates the first rule divergence between two skeletons; returns a
// human-readable path like "[0,1]" plus the differing rules.
bool skeleton_divergence(const SkeletonNode& a, const SkeletonNode& b,
                         std::vector<int>& path, std::string& what) {
  if (a.rule != b.rule) {
    what = a.rule + " vs " + b.rule;
    return true;
  }
  if (a.children.size() != b.children.size()) {
    what = a.rule + " has " + std::to_string(a.children.size()) + " vs " +
           std::to_string(b.children.size()) + " premises";
    return true;
  }
  for (size_t i = 0; i < a.children.size(); ++i) {
    path.push_back(static_cast<int>(i));
    if (skeleton_divergence(a.children[i], b.children[i], path, what)) return true;
    path.pop_back();
  }
  return false;
}

std::string path_text(const std::vector<int>& path) {
  std::string out = "[";
  for (size_t i = 0; i < path.size(); ++i)
    out += (i ? "," : "") + std::to_string(path[i]);
  return out + "]";
}

// Bijective symbol correspondence, built by simultaneous structural matching.
struct Matcher {
  std::map<std::string, std::string> fwd;
  std::map<std::string, std::string> bwd;
  std::string failure;

  bool bind(const std::string& a, const std::string& b) {
    auto f = fwd.find(a);
    if (f != fwd.end()) {
      if (f->second != b) {
        failure = "'" + a + "' corresponds to both '" + f->second + "' and '" + b + "'";
        return false;
      }
    } else {
      fwd[a] = b;
    }
    auto g = bwd.find(b);
    if (g != bwd.end()) {
      if (g->second != a) {
        failure = "'" + b + "' corresponds to both '" + g->second + "' and '" + a + "'";
        return false;
      }
    } else {
      bwd[b] = a;
    }
    return true;
  }

  using Binders = std::vector<std::string>;

  bool match_term(const TermPtr& a, const TermPtr& b, const Binders& ba,
                  const Binders& bb) {
    if (const Var* va = std::get_if<Var>(&a->node)) {
      const Var* vb = std::get_if<Var>(&b->node);
      if (!vb) {
        failure = "variable '" + va->name + "' paired with a compound term";
        return false;
      }
      auto index = [](const Binders& s, const std::string& n) {
        for (int i = static_cast<int>(s.size()) - 1; i >= 0; --i)
          if (s[static_cast<size_t>(i)] == n) return i;
        return -1;
      };
      int ia = index(ba, va->name);
      int ib = index(bb, vb->name);
      if (ia != ib) {
        failure = "binding structure differs at '" + va->name + "' / '" + vb->name + "'";
        return false;
      }
      if (ia < 0 && va->name != vb->name) {
        failure = "free variables '" + va->name + "' and '" + vb->name + "' differ";
        return false;
      }
      return bind(va->sort, vb->sort);
    }
    const App& aa = std::get<App>(a->node);
    const App* ab = std::get_if<App>(&b->node);
    if (!ab) {
      failure = "'" + aa.fn + "' paired with a variable";
      return false;
    }
    if (aa.args.size() != ab->args.size()) {
      failure = "'" + aa.fn + "' and '" + ab->fn + "' differ in arity";
      return false;
    }
    if (!bind(aa.fn, ab->fn)) return false;
    for (size_t i = 0; i < aa.args.size(); ++i)
      if (!match_term(aa.args[i], ab->args[i], ba, bb)) return false;
    return true;
  }

  bool match(const FormulaPtr& a, const FormulaPtr& b, Binders& ba, Binders& bb) {
    if (a->node.index() != b->node.index()) {
      failure = "formula shapes differ: " + to_text(a) + " vs " + to_text(b);
      return false;
    }
    if (const Pred* pa = std::get_if<Pred>(&a->node)) {
      const Pred& pb = std::get<Pred>(b->node);
      if (pa->args.size() != pb.args.size()) {
        failure = "'" + pa->name + "' and '" + pb.name + "' differ in arity";
        return false;
      }
      if (!bind(pa->name, pb.name)) return false;
      for (size_t i = 0; i < pa->args.size(); ++i)
        if (!match_term(pa->args[i], pb.args[i], ba, bb)) return false;
      return true;
    }
    if (const Eq* ea = std::get_if<Eq>(&a->node)) {
      const Eq& eb = std::get<Eq>(b->node);
      return match_term(ea->lhs, eb.lhs, ba, bb) && match_term(ea->rhs, eb.rhs, ba, bb);
    }
    if (std::get_if<Truth>(&a->node) || std::get_if<Falsity>(&a->node)) return true;
    if (const Not* na = std::get_if<Not>(&a->node))
      return match(na->body, std::get<Not>(b->node).body, ba, bb);
    if (const Bin* bna = std::get_if<Bin>(&a->node)) {
      const Bin& bnb = std::get<Bin>(b->node);
      if (bna->op != bnb.op) {
        failure = "connectives differ";
        return false;
      }
      return match(bna->lhs, bnb.lhs, ba, bb) && match(bna->rhs, bnb.rhs, ba, bb);
    }
    const Quantified& qa = std::get<Quantified>(a->node);
    const Quantified& qb = std::get<Quantified>(b->node);
    if (qa.q != qb.q) {
      failure = "quantifiers differ";
      return false;
    }
    if (!bind(qa.sort, qb.sort)) return false;
    ba.push_back(qa.var);
    bb.push_back(qb.var);
    bool ok = match(qa.body, qb.body, ba, bb);
    ba.pop_back();
    bb.pop_back();
    return ok;
  }
};

CheckOutcome failure(std::string reason, std::string locus = "") {
  return CheckOutcome{CheckOutcome::Status::Failure, std::move(reason),
                      std::move(locus)};
}

}  // namespace

std::string via_axiom_name(const SemanticCheck& c) {
  return "via:" + (c.a1_name.empty() ? std::string("a1") : c.a1_name);
}

CheckOutcome run_check(const StructuralCheck& c, const TheoryGraph& g) {
  if (!c.deriv1 || !c.deriv2)
    throw Error(ErrCode::UnknownDerivation,
                "check " + c.id + " references a missing derivation");
  const Theory& t1 = get_theory(g, c.theory1);
  const Theory& t2 = get_theory(g, c.theory2);

  Sequent r1, r2;
  try {
    r1 = check_derivation(t1.signature, t1.axioms, *c.deriv1);
  } catch (const Error& e) {
    return failure("first derivation does not check: " + std::string(e.what()));
  }
  try {
    r2 = check_derivation(t2.signature, t2.axioms, *c.deriv2);
  } catch (const Error& e) {
    return failure("second derivation does not check: " + std::string(e.what()));
  }

  SkeletonNode s1 = skeleton(*c.deriv1);
  SkeletonNode s2 = skeleton(*c.deriv2);
  std::vector<int> path;
  std::string what;
  if (skeleton_divergence(s1, s2, path, what))
    return failure("rule skeletons diverge: " + what,
                   "skeleton " + path_text(path));

  Matcher m;
  for (const auto& [a, b] : c.correspondence)
    if (!m.bind(a, b)) return failure("declared correspondence is not bijective: " + m.failure);
  Matcher::Binders ba, bb;
  if (!m.match(r1.concl, r2.concl, ba, bb))
    return failure("conclusions do not correspond: " + m.failure, "conclusion");

  return CheckOutcome{CheckOutcome::Status::Success,
                      "skeletons agree and conclusions correspond", ""};
}

CheckOutcome run_check(const SemanticCheck& c, const TheoryGraph& g) {
  const Theory& t2 = get_theory(g, c.theory2);
  if (c.via.empty())
    throw Error(ErrCode::IllFormedCheck, "check " + c.id + " names no morphism");
  MorphismPath path = make_path(g, c.via);
  if (path.composite.source != c.theory1 || path.composite.target != c.theory2)
    throw Error(ErrCode::IllFormedCheck,
                "check " + c.id + ": morphism path runs " + path.composite.source +
                    " -> " + path.composite.target + ", the statements live in " +
                    c.theory1 + " and " + c.theory2);

  FormulaPtr translated = translate_formula(path.composite.assignment, c.a1);
  if (alpha_eq(translated, c.a2))
    return CheckOutcome{CheckOutcome::Status::Success,
                        "translated statement is alpha-equal to the counterpart", ""};

  if (!c.witness)
    return CheckOutcome{CheckOutcome::Status::Pending,
                        "translation differs and no witness derivation is given", ""};

  AxiomMap extended = t2.axioms;
  extended.insert(via_axiom_name(c), translated);
  try {
    Sequent root = check_derivation(t2.signature, extended, *c.witness);
    if (!root.hyps.empty())
      return failure("witness leaves open hypotheses");
    if (!alpha_eq(root.concl, c.a2))
      return failure("witness concludes " + to_text(root.concl) + ", not " +
                     to_text(c.a2));
  } catch (const Error& e) {
    return failure("witness does not check: " + std::string(e.what()));
  }
  return CheckOutcome{CheckOutcome::Status::Success,
                      "witness derivation bridges the translation", ""};
}

CheckReport run_all(const OrderedMap<Check>& checks, const TheoryGraph& g) {
  std::vector<std::string> ids = checks.keys();
  std::sort(ids.begin(), ids.end());
  CheckReport report;
  for (const auto& id : ids) {
    const Check& c = *checks.find(id);
    CheckOutcome o;
    try {
      o = std::visit([&](const auto& cc) { return run_check(cc, g); }, c);
    } catch (const Error& e) {
      o = failure(e.what());
    }
    switch (o.status) {
      case CheckOutcome::Status::Success: ++report.successes; break;
      case CheckOutcome::Status::Failure: ++report.failures; break;
      case CheckOutcome::Status::Pending: ++report.pending; break;
    }
    report.outcomes.emplace_back(id, std::move(o));
  }
  return report;
}

}  // namespace tgc
