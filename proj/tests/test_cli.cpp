#include <doctest.h>

#include <cstdio>
#include <string>

#include <json.hpp>

#include "support/gen.hpp"

#if defined(_WIN32)
#error "the CLI tests assume a POSIX popen"
#endif
#include <sys/wait.h>

using nlohmann::json;

namespace {

struct Run {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

Run run_tgc(const std::string& args) {
  std::string cmd = tgctest::tgc_bin() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  Run r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool has(const Run& r, const std::string& needle) {
  return r.output.find(needle) != std::string::npos;
}

std::string corpus() { return tgctest::corpus_dir(); }
std::string data(const std::string& rel) { return tgctest::data_dir() + "/" + rel; }

}  // namespace

TEST_CASE("check over the clean corpus") {
  Run r = run_tgc("check " + corpus());
  CHECK(r.exit_code == 0);
  CHECK(has(r, "theory Monoid: 3 axioms, 1 theorem"));
  CHECK(has(r, "theorem id_unique [derived]"));
  CHECK(has(r, "theorem mul_comm [assumed]"));
  CHECK(has(r, "morphism CmBA: CommMonoidB -> CommMonoidA [verified]"));
  CHECK(has(r, "idr: by-axiom add_idr"));
  CHECK(has(r, "check cc_zero: success (witness derivation bridges the translation)"));
  CHECK(has(r, "doc id_unique_doc: established, coverage 0.33"));
  CHECK(has(r, "doc left_id_doc: established, coverage 0.67"));
  CHECK(has(r,
            "summary: 5 theories, 6 morphisms, 4 checks, 2 docs; "
            "0 errors, 0 warnings"));
}

TEST_CASE("check surfaces partial morphisms as warnings and exit 1") {
  Run r = run_tgc("check " + corpus() + " " + data("bad/badmon.tg"));
  CHECK(r.exit_code == 1);
  CHECK(has(r, "warning W-PARTIAL-MORPHISM"));
  CHECK(has(r, "morphism BadMon: Monoid -> Ring [partially verified]"));
  CHECK(has(r, "idl: pending"));
  CHECK(has(r, "0 errors, 1 warning"));

  Run ok = run_tgc("--allow-partial check " + corpus() + " " + data("bad/badmon.tg"));
  CHECK(ok.exit_code == 0);
}

TEST_CASE("check propagates elaboration errors as exit 2") {
  Run r = run_tgc("check " + data("errors/unknown_sort.tg"));
  CHECK(r.exit_code == 2);
  CHECK(has(r, "errors/unknown_sort.tg:3:15: error E-UNKNOWN-SORT: unknown sort 'N'"));

  Run dup = run_tgc("check " + data("errors/dup_name.tg"));
  CHECK(dup.exit_code == 2);
  CHECK(has(dup, ":3:8: error E-DUP-NAME"));

  Run unmapped = run_tgc("check " + data("errors/unmapped.tg"));
  CHECK(unmapped.exit_code == 2);
  CHECK(has(unmapped, ":12:10: error E-UNMAPPED-SYMBOL"));

  Run io = run_tgc("check /definitely/not/here");
  CHECK(io.exit_code == 2);
  CHECK(has(io, "error E-IO"));
}

TEST_CASE("paths lists backward reachability in order") {
  Run r = run_tgc("paths " + corpus() + " --to Ring --max-depth 1");
  CHECK(r.exit_code == 0);
  CHECK(r.output ==
        "paths into Ring (max depth 1): 2\n"
        "  Monoid via [AddMon]\n"
        "  Monoid via [MulMon]\n");

  Run deeper = run_tgc("paths " + corpus() + " --to Integers");
  CHECK(deeper.exit_code == 0);
  CHECK(deeper.output ==
        "paths into Integers (max depth 3): 3\n"
        "  Ring via [RingToInt]\n"
        "  Monoid via [AddMon, RingToInt]\n"
        "  Monoid via [MulMon, RingToInt]\n");

  Run unknown = run_tgc("paths " + corpus() + " --to Nowhere");
  CHECK(unknown.exit_code == 2);
  CHECK(has(unknown, "error E-UNKNOWN-REF: unknown theory 'Nowhere'"));
}

TEST_CASE("transport moves theorems and reports duplicates") {
  Run fresh = run_tgc("transport Monoid.id_unique " + corpus() + " --via MulMon");
  CHECK(fresh.exit_code == 0);
  CHECK(fresh.output ==
        "transported Monoid.id_unique along [MulMon] into Ring as "
        "'id_unique_via_MulMon'\n"
        "  forall u:R. (forall x:R. mul(u,x) = x) -> u = one\n");

  Run dup = run_tgc("transport Monoid.id_unique " + corpus() + " --via AddMon");
  CHECK(dup.exit_code == 0);
  CHECK(has(dup, "already present in Ring as 'add_id_unique'"));

  Run chain =
      run_tgc("transport Monoid.id_unique " + corpus() + " --via AddMon,RingToInt");
  CHECK(chain.exit_code == 0);
  CHECK(has(chain, "into Integers as 'id_unique_via_AddMon_RingToInt'"));
}

TEST_CASE("transport refuses unverified paths unless --allow-partial") {
  std::string inputs = corpus() + " " + data("bad/badmon.tg");
  Run refused = run_tgc("transport Monoid.id_unique " + inputs + " --via BadMon");
  CHECK(refused.exit_code == 1);
  CHECK(has(refused,
            "error E-PATH: path is not fully verified (open obligations: idl, idr)"));

  Run partial =
      run_tgc("--allow-partial transport Monoid.id_unique " + inputs + " --via BadMon");
  CHECK(partial.exit_code == 0);
  CHECK(has(partial, "as 'id_unique_via_BadMon' (partial)"));
  CHECK(has(partial, "forall u:R. (forall x:R. add(u,x) = x) -> u = one"));
}

TEST_CASE("transport argument validation") {
  Run bad = run_tgc("transport Monoid " + corpus() + " --via AddMon");
  CHECK(bad.exit_code == 2);
  CHECK(has(bad, "error E-USAGE: expected <theory>.<theorem>"));

  Run unknown_m = run_tgc("transport Monoid.id_unique " + corpus() + " --via Nope");
  CHECK(unknown_m.exit_code == 2);
  CHECK(has(unknown_m, "E-UNKNOWN-REF"));

  Run unknown_t = run_tgc("transport Monoid.nope " + corpus() + " --via AddMon");
  CHECK(unknown_t.exit_code == 2);
}

TEST_CASE("crosscheck runs all or one") {
  Run all = run_tgc("crosscheck " + corpus());
  CHECK(all.exit_code == 0);
  CHECK(has(all, "cc_struct [structural]: success"));
  CHECK(has(all, "4 succeeded, 0 failed, 0 pending"));

  Run one = run_tgc("crosscheck " + corpus() + " --id cc_add");
  CHECK(one.exit_code == 0);
  CHECK(has(one, "cc_add [semantic]: success"));
  CHECK(has(one, "1 succeeded, 0 failed, 0 pending"));

  Run failing = run_tgc("crosscheck " + corpus() + " " + data("bad/mutated_check.tg") +
                    " --id cc_struct_bad");
  CHECK(failing.exit_code == 1);
  CHECK(has(failing, "failure (rule skeletons diverge: axiom vs hypothesis) "
                     "at skeleton [0,0,0,0]"));

  Run pending = run_tgc("crosscheck " + corpus() + " " + data("bad/pending_check.tg"));
  CHECK(pending.exit_code == 1);
  CHECK(has(pending, "4 succeeded, 0 failed, 1 pending"));

  Run unknown = run_tgc("crosscheck " + corpus() + " --id nope");
  CHECK(unknown.exit_code == 2);
  CHECK(has(unknown, "error E-UNKNOWN-REF: unknown cross-check 'nope'"));
}

TEST_CASE("json-like output is structured and deterministic") {
  Run a = run_tgc("--format json-like check " + corpus());
  Run b = run_tgc("--format json-like check " + corpus());
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);

  json j = json::parse(a.output);
  CHECK(j["version"] == "0.1.0");
  CHECK(j["command"] == "check");
  CHECK(j["status"] == "ok");
  CHECK(j["theories"].size() == 5);
  CHECK(j["morphisms"].size() == 6);
  CHECK(j["checks"].size() == 4);
  CHECK(j["docs"].size() == 2);
  CHECK(j["diagnostics"].empty());
  std::string digest = j["digest"];
  CHECK(digest.rfind("fnv1a:", 0) == 0);
  CHECK(digest.size() == 6 + 16);

  // text mode is deterministic too
  Run t1 = run_tgc("check " + corpus());
  Run t2 = run_tgc("check " + corpus());
  CHECK(t1.output == t2.output);

  Run p1 = run_tgc("--format json-like paths " + corpus() + " --to Ring");
  json pj = json::parse(p1.output);
  CHECK(pj["command"] == "paths");
  CHECK(pj["to"] == "Ring");
  CHECK(pj["paths"].size() == 2);
  CHECK(pj["paths"][0]["from"] == "Monoid");
  CHECK(pj["paths"][0]["edges"][0] == "AddMon");
  CHECK(pj["paths"][0]["verified"] == true);

  Run tr = run_tgc("--format json-like transport Monoid.id_unique " + corpus() +
               " --via MulMon");
  json tj = json::parse(tr.output);
  CHECK(tj["theorem"] == "Monoid.id_unique");
  CHECK(tj["target"] == "Ring");
  CHECK(tj["name"] == "id_unique_via_MulMon");
  CHECK(tj["duplicate"] == false);
  CHECK(tj["partial"] == false);
  CHECK(tj["formula"] == "forall u:R. (forall x:R. mul(u,x) = x) -> u = one");

  Run cc = run_tgc("--format json-like crosscheck " + corpus());
  json cj = json::parse(cc.output);
  CHECK(cj["totals"]["success"] == 4);
  CHECK(cj["totals"]["failure"] == 0);
  CHECK(cj["totals"]["pending"] == 0);
}

TEST_CASE("bare invocation and unknown flags are usage errors") {
  Run bare = run_tgc("");
  CHECK(bare.exit_code == 2);

  Run flag = run_tgc("check --no-such-flag " + corpus());
  CHECK(flag.exit_code == 2);

  Run mode = run_tgc("--format yaml check " + corpus());
  CHECK(mode.exit_code == 2);
}
