#pragma once

// Theories: a logic identifier, a signature, named axioms, and named
// theorems, each theorem carrying provenance.  Theories are values; the
// update operations return modified copies.

#include <memory>
#include <string>
#include <vector>

#include "tgc/derivation.hpp"
#include "tgc/expr.hpp"
#include "tgc/ordered_map.hpp"

namespace tgc {

inline constexpr const char* kDefaultLogic = "MSFOL";

struct Provenance {
  enum class Kind { Derived, Transported, Assumed };
  Kind kind = Kind::Assumed;

  // Derived
  std::shared_ptr<const Derivation> derivation;

  // Transported
  std::string source_theory;
  std::string source_theorem;
  std::vector<std::string> path;  // morphism ids, source first
  bool partial = false;           // transported along a partially verified path

  // Assumed
  std::string reason;

  static Provenance derived(std::shared_ptr<const Derivation> d);
  static Provenance transported(std::string theory, std::string theorem,
                                std::vector<std::string> path, bool partial);
  static Provenance assumed(std::string reason);
};

struct TheoremEntry {
  FormulaPtr formula;
  Provenance provenance;
};

struct Theory {
  std::string id;
  std::string logic = kDefaultLogic;
  Signature signature;
  OrderedMap<FormulaPtr> axioms;
  OrderedMap<TheoremEntry> theorems;
};

Theory make_theory(std::string id, Signature sig, std::string logic = kDefaultLogic);

// Axiom formulas must be closed and well-formed; names are unique across both
// axioms and theorems.  Throws DuplicateName / OpenFormula / wf errors.
Theory add_axiom(const Theory& t, const std::string& name, const FormulaPtr& f);

// Derived provenance re-runs the kernel: the derivation must check against
// the theory's axioms with no hypotheses and conclude (alpha-equal) f.
// Throws DerivationMismatch when it does not.
Theory add_theorem(const Theory& t, const std::string& name, const FormulaPtr& f,
                   Provenance prov);

// ext extends base: ext's signature includes base's and every axiom of base
// appears in ext (same name, alpha-equal formula).
bool extends(const Theory& ext, const Theory& base);

}  // namespace tgc
