#include <doctest.h>

#include <string>
#include <vector>

#include "support/gen.hpp"
#include "tgc/crosscheck.hpp"

using namespace tgc;

TEST_CASE("skeletons reflect the rule tree from the root") {
  LoadResult lr = tgctest::load_corpus();
  REQUIRE_FALSE(lr.has_errors());
  const Workspace& ws = lr.workspace;

  const NamedDerivation* mon = ws.derivations.find("d_id_unique");
  const NamedDerivation* ring = ws.derivations.find("d_add_id");
  const NamedDerivation* swap = ws.derivations.find("d_swap");
  REQUIRE(mon);
  REQUIRE(ring);
  REQUIRE(swap);

  SkeletonNode a = skeleton(*mon->derivation);
  SkeletonNode b = skeleton(*ring->derivation);
  CHECK(a.rule == "forall-intro");
  CHECK(skeleton_eq(a, b));
  CHECK_FALSE(skeleton_eq(a, skeleton(*swap->derivation)));
  CHECK(to_text(a) == to_text(b));
}

TEST_CASE("the corpus checks all succeed, ordered by id") {
  LoadResult lr = tgctest::load_corpus();
  REQUIRE_FALSE(lr.has_errors());
  const Workspace& ws = lr.workspace;

  CheckReport report = run_all(ws.checks, ws.graph);
  CHECK(report.successes == 4);
  CHECK(report.failures == 0);
  CHECK(report.pending == 0);
  REQUIRE(report.outcomes.size() == 4);
  CHECK(report.outcomes[0].first == "cc_add");
  CHECK(report.outcomes[1].first == "cc_mul");
  CHECK(report.outcomes[2].first == "cc_struct");
  CHECK(report.outcomes[3].first == "cc_zero");
  for (const auto& [id, o] : report.outcomes) {
    CAPTURE(id);
    CHECK(o.status == CheckOutcome::Status::Success);
  }
}

TEST_CASE("a structurally mutated twin is flagged with a locus") {
  LoadResult lr =
      tgctest::load_corpus({tgctest::data_dir() + "/bad/mutated_check.tg"});
  REQUIRE_FALSE(lr.has_errors());
  const Workspace& ws = lr.workspace;

  const Check* c = ws.checks.find("cc_struct_bad");
  REQUIRE(c);
  CheckOutcome o = run_check(std::get<StructuralCheck>(*c), ws.graph);
  CHECK(o.status == CheckOutcome::Status::Failure);
  CHECK(o.locus == "skeleton [0,0,0,0]");
  CHECK(o.reason.find("diverge") != std::string::npos);
}

TEST_CASE("semantic checks fall back to a witness derivation") {
  LoadResult lr = tgctest::load_corpus();
  REQUIRE_FALSE(lr.has_errors());
  const Workspace& ws = lr.workspace;

  const Check* c = ws.checks.find("cc_zero");
  REQUIRE(c);
  const SemanticCheck& sc = std::get<SemanticCheck>(*c);
  CHECK(via_axiom_name(sc) == "via:id_unique");
  CheckOutcome o = run_check(sc, ws.graph);
  CHECK(o.status == CheckOutcome::Status::Success);
  CHECK(o.reason.find("witness") != std::string::npos);

  // without the witness the translation mismatch is only pending
  SemanticCheck bare = sc;
  bare.witness.reset();
  bare.witness_name.clear();
  CheckOutcome p = run_check(bare, ws.graph);
  CHECK(p.status == CheckOutcome::Status::Pending);

  // direct translations do not need one
  const Check* add = ws.checks.find("cc_add");
  REQUIRE(add);
  CheckOutcome direct = run_check(std::get<SemanticCheck>(*add), ws.graph);
  CHECK(direct.status == CheckOutcome::Status::Success);
  CHECK(direct.reason.find("alpha-equal") != std::string::npos);
}

TEST_CASE("pending checks load from source too") {
  LoadResult lr =
      tgctest::load_corpus({tgctest::data_dir() + "/bad/pending_check.tg"});
  REQUIRE_FALSE(lr.has_errors());
  CheckReport report = run_all(lr.workspace.checks, lr.workspace.graph);
  CHECK(report.successes == 4);
  CHECK(report.pending == 1);
  const Check* c = lr.workspace.checks.find("cc_zero_nowit");
  REQUIRE(c);
  CHECK(run_check(std::get<SemanticCheck>(*c), lr.workspace.graph).status ==
        CheckOutcome::Status::Pending);
}

TEST_CASE("the correspondence seed must stay bijective") {
  LoadResult lr = tgctest::load_corpus();
  REQUIRE_FALSE(lr.has_errors());
  const Workspace& ws = lr.workspace;

  const Check* c = ws.checks.find("cc_struct");
  REQUIRE(c);
  StructuralCheck bad = std::get<StructuralCheck>(*c);
  bad.correspondence["e"] = "add";  // collides with op -> add
  CheckOutcome o = run_check(bad, ws.graph);
  CHECK(o.status == CheckOutcome::Status::Failure);

  StructuralCheck wrong_seed = std::get<StructuralCheck>(*c);
  wrong_seed.correspondence["op"] = "mul";  // contradicts the derivations
  CheckOutcome o2 = run_check(wrong_seed, ws.graph);
  CHECK(o2.status == CheckOutcome::Status::Failure);
}

TEST_CASE("run_all surfaces resolution problems as failures") {
  LoadResult lr = tgctest::load_corpus();
  REQUIRE_FALSE(lr.has_errors());
  const Workspace& ws = lr.workspace;

  OrderedMap<Check> checks;
  SemanticCheck sc = std::get<SemanticCheck>(*ws.checks.find("cc_add"));
  sc.id = "broken";
  sc.via = {"NoSuchMorphism"};
  checks.insert("broken", Check{sc});

  CheckReport report = run_all(checks, ws.graph);
  REQUIRE(report.outcomes.size() == 1);
  CHECK(report.failures == 1);
  CHECK(report.outcomes[0].second.status == CheckOutcome::Status::Failure);
}
