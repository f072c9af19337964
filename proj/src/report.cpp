#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tgc/report.hpp"

namespace tgc {

namespace {

using json = nlohmann::ordered_json;

std::uint64_t fnv1a(std::uint64_t h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrCode::IoError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json diag_json(const Diagnostic& d) {
  json j;
  j["severity"] = d.severity == Diagnostic::Severity::Error ? "error" : "warning";
  j["code"] = d.code;
  j["message"] = d.message;
  j["file"] = d.span.file;
  j["line"] = d.span.line;
  j["col"] = d.span.col;
  return j;
}

struct Renderer {
  const LoadResult& in;
  const Options& opt;
  std::ostringstream text;
  json j;

  explicit Renderer(const LoadResult& in, const Options& opt,
                    const std::string& command)
      : in(in), opt(opt) {
    j["version"] = kToolVersion;
    j["command"] = command;
    j["inputs"] = in.inputs;
    j["digest"] = "fnv1a:" + hex64(in.digest);
    json ds = json::array();
    for (const auto& d : in.diagnostics) {
      ds.push_back(diag_json(d));
      text << to_text(d) << '\n';
    }
    j["diagnostics"] = std::move(ds);
  }

  Outcome finish(int exit_code) {
    j["status"] = exit_code == 0 ? "ok" : exit_code == 1 ? "failed" : "error";
    std::string body = opt.json ? j.dump(2) + "\n" : text.str();
    return Outcome{exit_code, std::move(body)};
  }
};

std::string provenance_tag(const Provenance& p) {
  switch (p.kind) {
    case Provenance::Kind::Derived: return "derived";
    case Provenance::Kind::Transported: return "transported";
    case Provenance::Kind::Assumed: return "assumed";
  }
  return "?";
}

json provenance_json(const Provenance& p) {
  json j;
  j["kind"] = provenance_tag(p);
  if (p.kind == Provenance::Kind::Transported) {
    j["source"] = p.source_theory + "." + p.source_theorem;
    j["via"] = p.path;
    if (p.partial) j["partial"] = true;
  }
  if (p.kind == Provenance::Kind::Assumed && !p.reason.empty())
    j["reason"] = p.reason;
  return j;
}

std::string coverage_str(double c) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%.2f", c);
  return buf;
}

}  // namespace

bool LoadResult::has_errors() const {
  for (const auto& d : diagnostics)
    if (d.severity == Diagnostic::Severity::Error) return true;
  return false;
}

LoadResult load_sources(const std::vector<SourceFile>& sources) {
  LoadResult out;
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& s : sources) {
    out.inputs.push_back(s.name);
    h = fnv1a(h, s.name);
    h = fnv1a(h, std::string(1, '\0'));
    h = fnv1a(h, s.text);
  }
  out.digest = h;
  ParseResult pr = parse_sources(sources);
  out.diagnostics = pr.diagnostics;
  ElabResult er = elaborate(pr.ast);
  out.diagnostics.insert(out.diagnostics.end(), er.diagnostics.begin(),
                         er.diagnostics.end());
  out.workspace = std::move(er.workspace);
  return out;
}

LoadResult load_paths(const std::vector<std::string>& paths) {
  namespace fs = std::filesystem;
  std::vector<SourceFile> sources;
  std::vector<Diagnostic> io_errors;
  for (const auto& p : paths) {
    std::error_code ec;
    if (fs::is_directory(p, ec)) {
      std::vector<std::string> found;
      for (const auto& e : fs::recursive_directory_iterator(p, ec))
        if (e.is_regular_file() && e.path().extension() == ".tg")
          found.push_back(e.path().string());
      std::sort(found.begin(), found.end());
      for (const auto& f : found) sources.push_back(SourceFile{f, read_file(f)});
      continue;
    }
    try {
      sources.push_back(SourceFile{p, read_file(p)});
    } catch (const Error& e) {
      io_errors.push_back({Diagnostic::Severity::Error, "E-IO", e.message(),
                           SourceSpan{p, 0, 0, 0, 0}});
    }
  }
  LoadResult out = load_sources(sources);
  out.diagnostics.insert(out.diagnostics.begin(), io_errors.begin(),
                         io_errors.end());
  return out;
}

Outcome run_check(const LoadResult& in, const Options& opt) {
  Renderer r(in, opt, "check");
  const Workspace& ws = in.workspace;
  bool failed = false;

  json theories = json::array();
  for (const auto& [id, t] : ws.graph.theories) {
    json jt;
    jt["id"] = id;
    jt["axioms"] = t.axioms.keys();
    json thms = json::array();
    r.text << "theory " << id << ": " << t.axioms.size() << " axiom"
           << (t.axioms.size() == 1 ? "" : "s") << ", " << t.theorems.size()
           << " theorem" << (t.theorems.size() == 1 ? "" : "s") << '\n';
    for (const auto& [name, entry] : t.theorems) {
      json je;
      je["name"] = name;
      je["provenance"] = provenance_json(entry.provenance);
      thms.push_back(std::move(je));
      r.text << "  theorem " << name << " [" << provenance_tag(entry.provenance);
      if (entry.provenance.kind == Provenance::Kind::Transported) {
        r.text << " from " << entry.provenance.source_theory << "."
               << entry.provenance.source_theorem;
        if (entry.provenance.partial) r.text << ", partial";
      }
      r.text << "]\n";
    }
    jt["theorems"] = std::move(thms);
    theories.push_back(std::move(jt));
  }
  r.j["theories"] = std::move(theories);

  json morphisms = json::array();
  for (const auto& [id, m] : ws.graph.morphisms) {
    VerificationStatus vs = verify(m);
    json jm;
    jm["id"] = id;
    jm["source"] = m.source;
    jm["target"] = m.target;
    jm["verified"] = vs.verified;
    json obs = json::array();
    std::string status = vs.verified ? "verified"
                         : vs.pending.empty() ? "verified up to assumptions"
                                              : "partially verified";
    r.text << "morphism " << id << ": " << m.source << " -> " << m.target << " ["
           << status << "]\n";
    for (const auto& o : m.obligations) {
      json jo;
      jo["axiom"] = o.axiom;
      jo["status"] = name(o.status);
      r.text << "  " << o.axiom << ": " << name(o.status);
      if (o.status == ObligationStatus::ByAxiom) {
        jo["target_axiom"] = o.target_axiom;
        r.text << ' ' << o.target_axiom;
      }
      if (o.status == ObligationStatus::Assumed) {
        jo["reason"] = o.reason;
        r.text << " (" << o.reason << ')';
      }
      r.text << '\n';
      obs.push_back(std::move(jo));
    }
    jm["obligations"] = std::move(obs);
    morphisms.push_back(std::move(jm));
    if (!vs.pending.empty() && !opt.allow_partial) failed = true;
  }
  r.j["morphisms"] = std::move(morphisms);

  CheckReport cr = run_all(ws.checks, ws.graph);
  json checks = json::array();
  for (const auto& [id, outcome] : cr.outcomes) {
    json jc;
    jc["id"] = id;
    jc["status"] = name(outcome.status);
    if (!outcome.reason.empty()) jc["reason"] = outcome.reason;
    if (!outcome.locus.empty()) jc["locus"] = outcome.locus;
    checks.push_back(std::move(jc));
    r.text << "check " << id << ": " << name(outcome.status);
    if (!outcome.reason.empty()) r.text << " (" << outcome.reason << ')';
    if (!outcome.locus.empty()) r.text << " at " << outcome.locus;
    r.text << '\n';
    if (outcome.status == CheckOutcome::Status::Failure) failed = true;
    if (outcome.status == CheckOutcome::Status::Pending && !opt.allow_partial)
      failed = true;
  }
  r.j["checks"] = std::move(checks);

  json docs = json::array();
  for (const auto& [id, doc] : ws.docs) {
    json jd;
    jd["id"] = id;
    try {
      DocReport dr = check_doc(doc, ws.graph, ws.checks);
      jd["established"] = dr.established;
      jd["coverage"] = coverage_str(dr.coverage);
      json gaps = json::array();
      for (const auto& [idx, what] : dr.gaps) {
        json jg;
        jg["step"] = idx;
        jg["description"] = what;
        gaps.push_back(std::move(jg));
      }
      jd["gaps"] = std::move(gaps);
      json flags = json::array();
      bool step_failed = false;
      for (const auto& f : dr.flags) {
        json jf;
        jf["kind"] = f.kind == DocFlag::Kind::AssumedReliance
                         ? "assumed-reliance"
                         : "failed-formal-step";
        jf["what"] = f.what;
        flags.push_back(std::move(jf));
        if (f.kind == DocFlag::Kind::FailedFormalStep) step_failed = true;
      }
      jd["flags"] = std::move(flags);
      r.text << "doc " << id << ": "
             << (dr.established ? "established" : "flexiformal") << ", coverage "
             << coverage_str(dr.coverage);
      if (!dr.gaps.empty()) r.text << ", " << dr.gaps.size() << " gap"
                                   << (dr.gaps.size() == 1 ? "" : "s");
      r.text << '\n';
      for (const auto& [idx, what] : dr.gaps)
        r.text << "  gap at step " << idx << ": " << what << '\n';
      for (const auto& f : dr.flags)
        r.text << "  flag "
               << (f.kind == DocFlag::Kind::AssumedReliance ? "assumed-reliance"
                                                            : "failed-formal-step")
               << ": " << f.what << '\n';
      if (step_failed) failed = true;
    } catch (const Error& e) {
      jd["error"] = e.message();
      r.text << "doc " << id << ": error (" << e.message() << ")\n";
      failed = true;
    }
    docs.push_back(std::move(jd));
  }
  r.j["docs"] = std::move(docs);

  size_t errors = 0, warnings = 0;
  for (const auto& d : in.diagnostics)
    (d.severity == Diagnostic::Severity::Error ? errors : warnings)++;
  json summary;
  summary["theories"] = ws.graph.theories.size();
  summary["morphisms"] = ws.graph.morphisms.size();
  summary["checks"] = ws.checks.size();
  summary["docs"] = ws.docs.size();
  summary["errors"] = errors;
  summary["warnings"] = warnings;
  r.j["summary"] = std::move(summary);
  r.text << "summary: " << ws.graph.theories.size() << " theories, "
         << ws.graph.morphisms.size() << " morphisms, " << ws.checks.size()
         << " checks, " << ws.docs.size() << " docs; " << errors << " error"
         << (errors == 1 ? "" : "s") << ", " << warnings << " warning"
         << (warnings == 1 ? "" : "s") << '\n';

  int exit_code = in.has_errors() ? 2 : failed ? 1 : 0;
  return r.finish(exit_code);
}

Outcome run_paths(const LoadResult& in, const std::string& to, int max_depth,
                  const Options& opt) {
  Renderer r(in, opt, "paths");
  if (in.has_errors()) return r.finish(2);
  r.j["to"] = to;
  r.j["max_depth"] = max_depth;
  if (!in.workspace.graph.theories.contains(to)) {
    Diagnostic d{Diagnostic::Severity::Error, "E-UNKNOWN-REF",
                 "unknown theory '" + to + "'", {}};
    r.j["diagnostics"].push_back(diag_json(d));
    r.text << to_text(d) << '\n';
    return r.finish(2);
  }
  auto paths = backward_reach(in.workspace.graph, to, static_cast<size_t>(max_depth));
  json jp = json::array();
  r.text << "paths into " << to << " (max depth " << max_depth << "): "
         << paths.size() << '\n';
  for (const auto& [from, path] : paths) {
    json je;
    je["from"] = from;
    je["edges"] = path.edges;
    VerificationStatus vs = verify(path.composite);
    je["verified"] = vs.verified;
    jp.push_back(std::move(je));
    r.text << "  " << from << " via [";
    for (size_t i = 0; i < path.edges.size(); ++i)
      r.text << (i ? ", " : "") << path.edges[i];
    r.text << ']' << (vs.verified ? "" : " (unverified)") << '\n';
  }
  r.j["paths"] = std::move(jp);
  return r.finish(0);
}

Outcome run_transport(const LoadResult& in, const std::string& source_theory,
                      const std::string& theorem,
                      const std::vector<std::string>& via, const Options& opt) {
  Renderer r(in, opt, "transport");
  if (in.has_errors()) return r.finish(2);
  r.j["theorem"] = source_theory + "." + theorem;
  r.j["via"] = via;

  auto fail = [&](const Error& e, int code) {
    Diagnostic d{Diagnostic::Severity::Error, diagnostic_code(e.code()),
                 e.message(), {}};
    r.j["diagnostics"].push_back(diag_json(d));
    r.text << to_text(d) << '\n';
    return r.finish(code);
  };

  const TheoryGraph& g = in.workspace.graph;
  std::vector<const Morphism*> edges;
  for (const auto& v : via) {
    const Morphism* m = g.morphisms.find(v);
    if (!m)
      return fail(Error(ErrCode::UnknownMorphism, "unknown morphism '" + v + "'"),
                  2);
    edges.push_back(m);
  }
  try {
    MorphismPath path = make_path(g, via);
    TransportResult res = transport(g, source_theory, theorem, path,
                                    opt.allow_partial);
    r.j["target"] = res.theory;
    r.j["name"] = res.name;
    r.j["formula"] = to_text(res.formula);
    r.j["duplicate"] = res.duplicate;
    const TheoremEntry* e =
        res.graph.theories.find(res.theory)->theorems.find(res.name);
    bool partial = e && e->provenance.partial;
    r.j["partial"] = partial;
    if (res.duplicate) {
      r.text << "already present in " << res.theory << " as '" << res.name
             << "'\n";
    } else {
      r.text << "transported " << source_theory << "." << theorem << " along [";
      for (size_t i = 0; i < via.size(); ++i) r.text << (i ? ", " : "") << via[i];
      r.text << "] into " << res.theory << " as '" << res.name << "'"
             << (partial ? " (partial)" : "") << '\n';
    }
    r.text << "  " << to_text(res.formula) << '\n';
    return r.finish(0);
  } catch (const Error& e) {
    if (e.code() == ErrCode::UnverifiedPath) return fail(e, 1);
    return fail(e, 2);
  }
}

Outcome run_crosschecks(const LoadResult& in, const std::optional<std::string>& id,
                        const Options& opt) {
  Renderer r(in, opt, "crosscheck");
  if (in.has_errors()) return r.finish(2);
  const Workspace& ws = in.workspace;

  OrderedMap<Check> selected;
  if (id) {
    const Check* c = ws.checks.find(*id);
    if (!c) {
      Diagnostic d{Diagnostic::Severity::Error, "E-UNKNOWN-REF",
                   "unknown cross-check '" + *id + "'", {}};
      r.j["diagnostics"].push_back(diag_json(d));
      r.text << to_text(d) << '\n';
      return r.finish(2);
    }
    selected.insert(*id, *c);
  }
  const OrderedMap<Check>& checks = id ? selected : ws.checks;

  CheckReport cr = run_all(checks, ws.graph);
  json jc = json::array();
  bool failed = false;
  for (const auto& [cid, outcome] : cr.outcomes) {
    json je;
    je["id"] = cid;
    const Check* c = checks.find(cid);
    je["kind"] = std::holds_alternative<StructuralCheck>(*c) ? "structural"
                                                             : "semantic";
    je["status"] = name(outcome.status);
    if (!outcome.reason.empty()) je["reason"] = outcome.reason;
    if (!outcome.locus.empty()) je["locus"] = outcome.locus;
    jc.push_back(std::move(je));
    r.text << cid << " ["
           << (std::holds_alternative<StructuralCheck>(*c) ? "structural"
                                                           : "semantic")
           << "]: " << name(outcome.status);
    if (!outcome.reason.empty()) r.text << " (" << outcome.reason << ')';
    if (!outcome.locus.empty()) r.text << " at " << outcome.locus;
    r.text << '\n';
    if (outcome.status == CheckOutcome::Status::Failure) failed = true;
    if (outcome.status == CheckOutcome::Status::Pending && !opt.allow_partial)
      failed = true;
  }
  r.j["checks"] = std::move(jc);
  json totals;
  totals["success"] = cr.successes;
  totals["failure"] = cr.failures;
  totals["pending"] = cr.pending;
  r.j["totals"] = std::move(totals);
  r.text << cr.successes << " succeeded, " << cr.failures << " failed, "
         << cr.pending << " pending\n";
  return r.finish(failed ? 1 : 0);
}

}  // namespace tgc
