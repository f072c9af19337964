#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tgc/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"tgc — batch checker for theory-graph declarations"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text";
  bool allow_partial = false;
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json-like"}))
      ->capture_default_str();
  app.add_flag("--allow-partial", allow_partial,
               "tolerate pending obligations and pending checks");

  std::vector<std::string> check_paths;
  CLI::App* check = app.add_subcommand("check", "parse, elaborate, and verify");
  check->add_option("paths", check_paths, ".tg files or directories")
      ->required()
      ->expected(-1);

  std::vector<std::string> paths_paths;
  std::string paths_to;
  int max_depth = 3;
  CLI::App* paths = app.add_subcommand("paths", "list morphism paths into a theory");
  paths->add_option("paths", paths_paths, ".tg files or directories")
      ->required()
      ->expected(-1);
  paths->add_option("--to", paths_to, "destination theory")->required();
  paths->add_option("--max-depth", max_depth, "maximum path length")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::string transport_what;
  std::vector<std::string> transport_paths;
  std::string via_arg;
  CLI::App* tr = app.add_subcommand("transport", "move a theorem along morphisms");
  tr->add_option("theorem", transport_what, "qualified name, e.g. Monoid.id_unique")
      ->required();
  tr->add_option("paths", transport_paths, ".tg files or directories")
      ->required()
      ->expected(-1);
  // a single token, split on ',' below — a greedy vector option would
  // swallow any path arguments placed after it
  tr->add_option("--via", via_arg, "comma-separated morphism ids")
      ->required();

  std::vector<std::string> cc_paths;
  std::string cc_id;
  CLI::App* cc = app.add_subcommand("crosscheck", "run declared cross-checks");
  cc->add_option("paths", cc_paths, ".tg files or directories")
      ->required()
      ->expected(-1);
  cc->add_option("--id", cc_id, "run a single check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  tgc::Options opt;
  opt.json = format == "json-like";
  opt.allow_partial = allow_partial;

  tgc::Outcome out;
  if (check->parsed()) {
    out = tgc::run_check(tgc::load_paths(check_paths), opt);
  } else if (paths->parsed()) {
    out = tgc::run_paths(tgc::load_paths(paths_paths), paths_to, max_depth, opt);
  } else if (tr->parsed()) {
    size_t dot = transport_what.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == transport_what.size()) {
      std::cerr << "error E-USAGE: expected <theory>.<theorem>, got '"
                << transport_what << "'\n";
      return 2;
    }
    std::vector<std::string> via;
    for (size_t pos = 0; pos <= via_arg.size();) {
      size_t comma = via_arg.find(',', pos);
      if (comma == std::string::npos) comma = via_arg.size();
      if (comma > pos) via.push_back(via_arg.substr(pos, comma - pos));
      pos = comma + 1;
    }
    out = tgc::run_transport(tgc::load_paths(transport_paths),
                             transport_what.substr(0, dot),
                             transport_what.substr(dot + 1), via, opt);
  } else {
    std::optional<std::string> id;
    if (!cc_id.empty()) id = cc_id;
    out = tgc::run_crosschecks(tgc::load_paths(cc_paths), id, opt);
  }
  std::cout << out.output;
  return out.exit_code;
}
