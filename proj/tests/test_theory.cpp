#include <doctest.h>

#include <memory>

#include "support/gen.hpp"
#include "tgc/theory.hpp"

using namespace tgc;

namespace {

FormulaPtr Pc() { return mk_pred("P", {mk_app("c")}); }
FormulaPtr Qc() { return mk_pred("Q", {mk_app("c")}); }

Theory base() {
  Theory t = make_theory("T", tgctest::toy_signature());
  t = add_axiom(t, "imp", mk_implies(Pc(), Qc()));
  t = add_axiom(t, "p", Pc());
  return t;
}

std::shared_ptr<const Derivation> mp_derivation() {
  // imp, p |- Q(c) by modus ponens on the two axioms.
  auto d = std::make_shared<Derivation>();
  Step a1;
  a1.label = "a1";
  a1.rule = Rule::Axiom;
  a1.axiom = "imp";
  a1.claimed = {{}, mk_implies(Pc(), Qc())};
  Step a2;
  a2.label = "a2";
  a2.rule = Rule::Axiom;
  a2.axiom = "p";
  a2.claimed = {{}, Pc()};
  Step m;
  m.label = "m";
  m.rule = Rule::ImplElim;
  m.premises = {0, 1};
  m.claimed = {{}, Qc()};
  d->steps = {a1, a2, m};
  return d;
}

}  // namespace

TEST_CASE("axioms must be closed and well-formed, names unique") {
  Theory t = make_theory("T", tgctest::toy_signature());
  t = add_axiom(t, "a", mk_forall("x", "S", mk_pred("P", {mk_var("x", "S")})));
  CHECK(t.axioms.size() == 1);
  CHECK(t.logic == kDefaultLogic);

  CHECK_THROWS_AS(add_axiom(t, "a", Pc()), Error);                    // dup
  CHECK_THROWS_AS(add_axiom(t, "open", mk_pred("P", {mk_var("x", "S")})),
                  Error);                                             // open
  CHECK_THROWS_AS(add_axiom(t, "bad", mk_pred("R", {mk_app("c")})), Error);

  // updates are copies; the original is untouched
  Theory u = add_axiom(t, "b", Pc());
  CHECK(t.axioms.size() == 1);
  CHECK(u.axioms.size() == 2);
  CHECK(u.axioms.keys() == std::vector<std::string>{"a", "b"});
}

TEST_CASE("derived theorems replay their derivation in the kernel") {
  Theory t = base();
  Theory u = add_theorem(t, "q", Qc(), Provenance::derived(mp_derivation()));
  const TheoremEntry* e = u.theorems.find("q");
  REQUIRE(e);
  CHECK(e->provenance.kind == Provenance::Kind::Derived);
  CHECK(alpha_eq(e->formula, Qc()));

  // the claimed statement must be what the derivation concludes
  CHECK_THROWS_AS(
      add_theorem(t, "wrong", Pc(), Provenance::derived(mp_derivation())),
      Error);

  // a derivation with leftover hypotheses proves nothing
  auto open = std::make_shared<Derivation>();
  Step h;
  h.label = "h";
  h.rule = Rule::Hypothesis;
  h.claimed = {{Qc()}, Qc()};
  open->steps = {h};
  CHECK_THROWS_AS(add_theorem(t, "q", Qc(), Provenance::derived(open)), Error);

  // a derivation citing an axiom the theory lacks
  Theory bare = make_theory("B", tgctest::toy_signature());
  CHECK_THROWS_AS(
      add_theorem(bare, "q", Qc(), Provenance::derived(mp_derivation())),
      Error);
}

TEST_CASE("theorem names share the axiom namespace") {
  Theory t = base();
  CHECK_THROWS_AS(add_theorem(t, "imp", mk_implies(Pc(), Qc()),
                              Provenance::assumed("restating an axiom")),
                  Error);
  Theory u = add_theorem(t, "q", Qc(), Provenance::derived(mp_derivation()));
  CHECK_THROWS_AS(add_axiom(u, "q", Qc()), Error);
}

TEST_CASE("assumed theorems record their reason") {
  Theory t = base();
  Theory u = add_theorem(t, "conj", mk_and(Pc(), Qc()),
                         Provenance::assumed("believed; proof deferred"));
  const TheoremEntry* e = u.theorems.find("conj");
  REQUIRE(e);
  CHECK(e->provenance.kind == Provenance::Kind::Assumed);
  CHECK(e->provenance.reason == "believed; proof deferred");

  // assumed statements still have to be closed and well-formed
  CHECK_THROWS_AS(add_theorem(t, "open", mk_pred("P", {mk_var("x", "S")}),
                              Provenance::assumed("nope")),
                  Error);
}

TEST_CASE("extends checks signature and axiom containment") {
  Theory t = base();

  Signature wider = tgctest::toy_signature();
  wider.add_function("g", {"S"}, "S");
  Theory ext = make_theory("E", wider);
  ext = add_axiom(ext, "imp", mk_implies(Pc(), Qc()));
  ext = add_axiom(ext, "p", Pc());
  ext = add_axiom(ext, "extra", Qc());
  CHECK(extends(ext, t));
  CHECK_FALSE(extends(t, ext));  // t lacks "extra" and g

  // same formula under a different name is not containment
  Theory renamed = make_theory("R", tgctest::toy_signature());
  renamed = add_axiom(renamed, "imp2", mk_implies(Pc(), Qc()));
  renamed = add_axiom(renamed, "p", Pc());
  CHECK_FALSE(extends(renamed, t));

  // alpha-equal axiom bodies do count
  Theory alpha = make_theory("A", tgctest::toy_signature());
  alpha = add_axiom(alpha, "all",
                    mk_forall("x", "S", mk_pred("P", {mk_var("x", "S")})));
  Theory alpha2 = make_theory("A2", tgctest::toy_signature());
  alpha2 = add_axiom(alpha2, "all",
                     mk_forall("y", "S", mk_pred("P", {mk_var("y", "S")})));
  CHECK(extends(alpha2, alpha));
  CHECK(extends(alpha, alpha2));
}
