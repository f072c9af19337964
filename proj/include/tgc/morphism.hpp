#pragma once

// Theory morphisms.  An assignment maps every source sort to a target sort
// and every source function/predicate to a target expression over the
// parameter variables p1..pn; translation is its homomorphic extension.  Each
// source axiom yields a proof obligation in the target; a morphism is
// meaning-preserving exactly when all obligations are discharged.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tgc/derivation.hpp"
#include "tgc/expr.hpp"
#include "tgc/theory.hpp"

namespace tgc {

struct Assignment {
  std::map<std::string, std::string> sorts;
  std::map<std::string, TermPtr> functions;     // images over p1..pn
  std::map<std::string, FormulaPtr> predicates; // images over p1..pn
};

// Checks totality over the source signature and that every image is
// well-formed in the target at the translated sorts, with free variables
// drawn only from the parameters.  Throws UnmappedSymbol / IllTypedAssignment.
void validate_assignment(const Assignment& a, const Signature& source,
                         const Signature& target);

TermPtr translate_term(const Assignment& a, const TermPtr& t);
FormulaPtr translate_formula(const Assignment& a, const FormulaPtr& f);

enum class ObligationStatus { Pending, Proved, ByAxiom, Assumed, ByComposition };

const char* name(ObligationStatus s);

struct Obligation {
  std::string axiom;        // source axiom name
  FormulaPtr translated;    // its image in the target
  ObligationStatus status = ObligationStatus::Pending;
  std::shared_ptr<const Derivation> derivation;  // Proved
  std::string target_axiom;                      // ByAxiom
  std::string reason;                            // Assumed
};

struct Morphism {
  std::string id;
  std::string source;
  std::string target;
  Assignment assignment;
  std::vector<Obligation> obligations;  // one per source axiom, source order
};

// One obligation per source axiom in declaration order; obligations whose
// translated formula is alpha-equal to some target axiom are pre-discharged
// ByAxiom.
std::vector<Obligation> generate_obligations(const Assignment& a,
                                             const Theory& source,
                                             const Theory& target);

// Discharge helpers validate their evidence against the target theory and
// return the updated obligation.
Obligation discharge_by_axiom(const Obligation& o, const std::string& axiom_name,
                              const Theory& target);
Obligation discharge_proved(const Obligation& o,
                            std::shared_ptr<const Derivation> d,
                            const Theory& target);
Obligation discharge_assumed(const Obligation& o, std::string reason);

struct VerificationStatus {
  bool verified = false;                // all Proved/ByAxiom/ByComposition
  std::vector<std::string> pending;     // axiom names still Pending
  std::vector<std::string> assumed;     // axiom names taken on trust
  bool partially_verified() const { return !verified; }
};

VerificationStatus verify(const Morphism& m);

// Builds a convenience morphism with the composite assignment; obligations
// are regenerated against `target` and marked ByComposition where both inputs
// were verified, Pending otherwise (unless alpha-equal to a target axiom).
// Throws TheoryMismatch when the endpoints do not chain.
Morphism compose(const Morphism& m1, const Morphism& m2, const Theory& source,
                 const Theory& target, const std::string& id = "");

// Identity assignment into an extending theory.
bool is_inclusion(const Morphism& m, const Theory& source, const Theory& target);

// Identity morphism on t (all obligations ByAxiom).
Morphism identity_morphism(const Theory& t, const std::string& id);

}  // namespace tgc
