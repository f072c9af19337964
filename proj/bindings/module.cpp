#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tgc/report.hpp"

namespace py = pybind11;

namespace {

struct Session {
  tgc::LoadResult load;

  static Session from_paths(const std::vector<std::string>& paths) {
    return Session{tgc::load_paths(paths)};
  }

  static Session from_source(const std::string& name, const std::string& text) {
    return Session{tgc::load_sources({tgc::SourceFile{name, text}})};
  }

  bool ok() const { return !load.has_errors(); }

  std::vector<std::string> diagnostics() const {
    std::vector<std::string> out;
    for (const auto& d : load.diagnostics) out.push_back(tgc::to_text(d));
    return out;
  }

  static tgc::Options opts(bool allow_partial) {
    tgc::Options o;
    o.json = true;
    o.allow_partial = allow_partial;
    return o;
  }

  py::tuple check(bool allow_partial) const {
    tgc::Outcome o = tgc::run_check(load, opts(allow_partial));
    return py::make_tuple(o.exit_code, o.output);
  }

  py::tuple paths(const std::string& to, int max_depth) const {
    tgc::Outcome o = tgc::run_paths(load, to, max_depth, opts(false));
    return py::make_tuple(o.exit_code, o.output);
  }

  py::tuple transport(const std::string& theory, const std::string& theorem,
                      const std::vector<std::string>& via,
                      bool allow_partial) const {
    tgc::Outcome o = tgc::run_transport(load, theory, theorem, via,
                                        opts(allow_partial));
    return py::make_tuple(o.exit_code, o.output);
  }

  py::tuple crosscheck(const std::optional<std::string>& id) const {
    tgc::Outcome o = tgc::run_crosschecks(load, id, opts(false));
    return py::make_tuple(o.exit_code, o.output);
  }
};

std::string format_source(const std::string& name, const std::string& text) {
  tgc::ParseResult pr = tgc::parse_sources({tgc::SourceFile{name, text}});
  if (!pr.ok()) {
    std::string msg;
    for (const auto& d : pr.diagnostics) msg += tgc::to_text(d) + "\n";
    throw py::value_error(msg);
  }
  return tgc::pretty_print(pr.ast);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "theory-graph checker core";
  m.attr("__version__") = tgc::kToolVersion;

  py::class_<Session>(m, "Session")
      .def_static("from_paths", &Session::from_paths, py::arg("paths"))
      .def_static("from_source", &Session::from_source, py::arg("name"),
                  py::arg("text"))
      .def_property_readonly("ok", &Session::ok)
      .def("diagnostics", &Session::diagnostics)
      .def("check", &Session::check, py::arg("allow_partial") = false)
      .def("paths", &Session::paths, py::arg("to"), py::arg("max_depth") = 3)
      .def("transport", &Session::transport, py::arg("theory"),
           py::arg("theorem"), py::arg("via"), py::arg("allow_partial") = false)
      .def("crosscheck", &Session::crosscheck,
           py::arg("id") = std::optional<std::string>());

  m.def("format_source", &format_source, py::arg("name"), py::arg("text"),
        "parse and pretty-print a .tg source");
}
