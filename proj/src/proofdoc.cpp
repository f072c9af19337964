#include "tgc/proofdoc.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tgc {

double formal_coverage(const ProofDoc& doc) {
  if (doc.steps.empty()) return 0.0;
  size_t formal = 0;
  for (const auto& s : doc.steps)
    if (s.kind == DocStep::Kind::Formal) ++formal;
  return static_cast<double>(formal) / static_cast<double>(doc.steps.size());
}

namespace {

constexpr const char* kStepPrefix = "step:";

std::vector<std::string> cited_labels(const Derivation& d) {
  std::vector<std::string> out;
  for (const auto& name : axiom_leaves(d)) {
    if (name.rfind(kStepPrefix, 0) == 0) out.push_back(name.substr(5));
  }
  return out;
}

}  // namespace

DocReport check_doc(const ProofDoc& doc, const TheoryGraph& g,
                    const OrderedMap<Check>& checks) {
  const Theory& home = get_theory(g, doc.home);

  try {
    wf_formula(home.signature, {}, doc.theorem);
  } catch (const Error& e) {
    throw Error(ErrCode::IllFormedTheorem,
                "document " + doc.id + ": " + e.message(), e.path());
  }
  if (!is_closed(doc.theorem))
    throw Error(ErrCode::IllFormedTheorem,
                "document " + doc.id + ": the stated theorem has free variables");

  DocReport report;
  report.coverage = formal_coverage(doc);

  // Claims citable so far, and which of those labels are grounded.
  AxiomMap pool = home.axioms;
  std::map<std::string, bool> label_grounded;
  std::set<std::string> cited;  // labels referenced by some formal step
  const DocStep* last_formal = nullptr;
  bool last_formal_grounded = false;
  FormulaPtr last_formal_concl;

  for (size_t i = 0; i < doc.steps.size(); ++i) {
    const DocStep& s = doc.steps[i];
    StepStatus st;
    st.index = i;
    st.label = s.label;
    st.formal = s.kind == DocStep::Kind::Formal;

    if (s.kind == DocStep::Kind::Informal) {
      if (s.claim) {
        try {
          wf_formula(home.signature, {}, s.claim);
        } catch (const Error& e) {
          throw Error(ErrCode::IllFormedTheorem,
                      "document " + doc.id + ", step " + std::to_string(i + 1) +
                          ": " + e.message(),
                      e.path());
        }
        if (!is_closed(s.claim))
          throw Error(ErrCode::IllFormedTheorem,
                      "document " + doc.id + ", step " + std::to_string(i + 1) +
                          ": claimed formula has free variables");
        st.conclusion = to_text(s.claim);
        if (!s.label.empty()) {
          pool.insert(kStepPrefix + s.label, s.claim);
          label_grounded[s.label] = false;  // prose never grounds anything
        }
      }
    } else {
      if (!s.derivation)
        throw Error(ErrCode::UnknownDerivation,
                    "document " + doc.id + ", step " + std::to_string(i + 1) +
                        ": formal step has no derivation");
      bool checked = false;
      FormulaPtr concl;
      std::string note;
      try {
        Sequent root = check_derivation(home.signature, pool, *s.derivation);
        if (!root.hyps.empty()) {
          note = "derivation leaves open hypotheses";
        } else {
          checked = true;
          concl = root.concl;
        }
      } catch (const Error& e) {
        note = e.what();
      }
      if (!concl) concl = s.derivation->steps.back().claimed.concl;

      bool grounded = checked;
      for (const auto& lbl : cited_labels(*s.derivation)) {
        cited.insert(lbl);
        auto it = label_grounded.find(lbl);
        if (it == label_grounded.end() || !it->second) grounded = false;
      }

      st.checked = checked;
      st.grounded = grounded;
      st.conclusion = concl ? to_text(concl) : "";
      st.note = note;
      if (!checked)
        report.flags.push_back(
            {DocFlag::Kind::FailedFormalStep,
             "step " + std::to_string(i + 1) + " (" + s.derivation_name + "): " + note});

      if (!s.label.empty() && concl) {
        pool.insert(kStepPrefix + s.label, concl);
        label_grounded[s.label] = grounded;
      }
      last_formal = &s;
      last_formal_grounded = grounded;
      last_formal_concl = concl;
    }
    report.steps.push_back(std::move(st));
  }

  report.established = last_formal != nullptr && last_formal_grounded &&
                       last_formal_concl && alpha_eq(last_formal_concl, doc.theorem);

  // A claim can also be redeemed by a later grounded formal step proving the
  // same formula.
  auto formally_established = [&](const FormulaPtr& claim) {
    for (size_t i = 0; i < doc.steps.size(); ++i) {
      const DocStep& s = doc.steps[i];
      if (s.kind != DocStep::Kind::Formal) continue;
      const StepStatus& st = report.steps[i];
      if (!st.grounded) continue;
      Sequent root = s.derivation->steps.back().claimed;
      if (root.hyps.empty() && alpha_eq(root.concl, claim)) return true;
    }
    return false;
  };

  for (size_t i = 0; i < doc.steps.size(); ++i) {
    const DocStep& s = doc.steps[i];
    if (s.kind != DocStep::Kind::Informal || !s.claim) continue;
    bool is_cited = !s.label.empty() && cited.count(s.label) > 0;
    if (is_cited) {
      report.gaps.emplace_back(
          i, "claim '" + (s.label.empty() ? std::to_string(i + 1) : s.label) +
                 "' is cited by a formal step but never formally established");
      continue;
    }
    if (!report.established && !formally_established(s.claim))
      report.gaps.emplace_back(
          i, "claim " + to_text(s.claim) + " rests on prose only");
  }

  // Attached cross-checks.
  for (const auto& cid : doc.checks) {
    const Check* c = checks.find(cid);
    if (!c)
      throw Error(ErrCode::UnknownReference,
                  "document " + doc.id + " attaches unknown check '" + cid + "'");
    CheckOutcome o;
    try {
      o = std::visit([&](const auto& cc) { return run_check(cc, g); }, *c);
    } catch (const Error& e) {
      o = CheckOutcome{CheckOutcome::Status::Failure, e.what(), ""};
    }
    // A check that leans on an assumed or pending morphism weakens the
    // document even when it succeeds.
    if (const SemanticCheck* sc = std::get_if<SemanticCheck>(c)) {
      for (const auto& mid : sc->via) {
        const Morphism* m = g.morphisms.find(mid);
        if (!m) continue;
        VerificationStatus vs = verify(*m);
        if (!vs.assumed.empty())
          report.flags.push_back(
              {DocFlag::Kind::AssumedReliance,
               "check " + cid + " travels along " + mid +
                   ", which assumes: " + vs.assumed.front()});
      }
    }
    report.check_outcomes.emplace_back(cid, std::move(o));
  }

  // Assumed theorems of the home theory cited by any formal step.
  for (const auto& s : doc.steps) {
    if (s.kind != DocStep::Kind::Formal || !s.derivation) continue;
    for (const auto& leaf : axiom_leaves(*s.derivation)) {
      const TheoremEntry* th = home.theorems.find(leaf);
      if (th && th->provenance.kind == Provenance::Kind::Assumed)
        report.flags.push_back({DocFlag::Kind::AssumedReliance,
                                "derivation cites assumed theorem '" + leaf + "'"});
    }
  }

  return report;
}

namespace {

// Splices the derivations behind step:* citations in place of the citing
// axiom leaves, producing a derivation that stands on theory axioms alone.
Derivation inline_citations(const Derivation& d,
                            const std::map<std::string, Derivation>& by_label) {
  Derivation out;
  std::vector<size_t> where(d.steps.size());
  for (size_t i = 0; i < d.steps.size(); ++i) {
    const Step& s = d.steps[i];
    if (s.rule == Rule::Axiom && s.axiom.rfind(kStepPrefix, 0) == 0) {
      auto it = by_label.find(s.axiom.substr(5));
      if (it != by_label.end()) {
        size_t base = out.steps.size();
        for (const Step& sub : it->second.steps) {
          Step copy = sub;
          copy.label = s.axiom.substr(5) + "." + sub.label;
          for (auto& p : copy.premises) p += base;
          out.steps.push_back(std::move(copy));
        }
        where[i] = out.steps.size() - 1;
        continue;
      }
    }
    Step copy = s;
    for (auto& p : copy.premises) p = where[p];
    where[i] = out.steps.size();
    out.steps.push_back(std::move(copy));
  }
  return out;
}

}  // namespace

Theory promote(const ProofDoc& doc, const TheoryGraph& g,
               const OrderedMap<Check>& checks) {
  DocReport report = check_doc(doc, g, checks);
  if (!report.established)
    throw Error(ErrCode::NotEstablished,
                "document " + doc.id + " does not establish " + doc.theorem_name);
  for (const auto& f : report.flags)
    if (f.kind == DocFlag::Kind::AssumedReliance)
      throw Error(ErrCode::AssumedContent,
                  "document " + doc.id + " relies on assumed content: " + f.what);

  const Theory& home = get_theory(g, doc.home);
  if (const TheoremEntry* existing = home.theorems.find(doc.theorem_name)) {
    if (alpha_eq(existing->formula, doc.theorem)) return home;  // idempotent
  }

  // Each grounded labeled formal step contributes its (already inlined)
  // derivation; the closing step then inlines every citation transitively.
  std::map<std::string, Derivation> by_label;
  std::shared_ptr<const Derivation> closing;
  for (size_t i = 0; i < doc.steps.size(); ++i) {
    const DocStep& s = doc.steps[i];
    if (s.kind != DocStep::Kind::Formal) continue;
    Derivation inlined = inline_citations(*s.derivation, by_label);
    if (!s.label.empty() && report.steps[i].grounded)
      by_label[s.label] = inlined;
    closing = std::make_shared<Derivation>(std::move(inlined));
  }
  return add_theorem(home, doc.theorem_name, doc.theorem,
                     Provenance::derived(closing));
}

}  // namespace tgc
