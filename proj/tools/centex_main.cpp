// Command-line front end: constructs class-two central extensions from
// normal-form cocycle data and reports automorphism structure, isomorphism
// witnesses, and brute-force cross-checks.
//
// Exit codes: 0 success, 1 invalid input, 2 parse error, 3 inconclusive.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "centex/io.hpp"

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n";
    std::exit(2);
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int emit(const centex::CommandResult& res) {
  if (res.exit_code == 0 || res.exit_code == 3) {
    std::cout << res.output;
  } else {
    std::cerr << res.output;
  }
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"class-two central extensions from cocycle data: automorphisms, isomorphisms, oracles"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string format = "json";
  centex::JobBudgets budgets;
  app.add_option("--format", format, "output format: json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--budget-cosets", budgets.cosets, "candidate bound for automorphism enumeration");
  app.add_option("--budget-table", budgets.table, "largest group order tabulated by the oracle");
  app.add_option("--budget-closure", budgets.closure, "largest closure computed by generation checks");
  app.add_option("--workers", budgets.workers, "worker threads for enumeration filters")->check(CLI::PositiveNumber);

  std::string in_a, in_b, x_lit, y_lit, target;

  auto* validate = app.add_subcommand("validate", "check the invariants of a cocycle data file");
  validate->add_option("input", in_a, "pair JSON file (- for stdin)")->required();

  auto* aut = app.add_subcommand("aut", "automorphism group order of the extension");
  aut->add_option("input", in_a)->required();

  auto* iso = app.add_subcommand("iso", "search for an isomorphism between two extensions");
  iso->add_option("first", in_a)->required();
  iso->add_option("second", in_b)->required();

  auto* oracle = app.add_subcommand("oracle", "brute-force automorphism count from the Cayley table");
  oracle->add_option("input", in_a)->required();

  auto* normalize = app.add_subcommand("normalize", "diagonalize the a-data when valid transforms exist");
  normalize->add_option("input", in_a)->required();

  auto* lift = app.add_subcommand("lift-check", "test whether a G-endomorphism lifts to the extension");
  lift->add_option("input", in_a)->required();
  lift->add_option("--x", x_lit, "matrix literal, e.g. [[1,1],[0,1]]")->required();
  lift->add_option("--target", target, "target pair JSON file (defaults to the input pair)");

  auto* transform = app.add_subcommand("transform", "apply a pullback or pushforward to the data");
  transform->add_option("input", in_a)->required();
  transform->add_option("--pullback", x_lit, "G-matrix literal");
  transform->add_option("--pushforward", y_lit, "embedded A-matrix literal");

  CLI11_PARSE(app, argc, argv);

  centex::ReportFormat fmt = format == "json" ? centex::ReportFormat::json : centex::ReportFormat::text;

  try {
    if (validate->parsed()) return emit(centex::run_validate(read_input(in_a), fmt));
    if (aut->parsed()) return emit(centex::run_aut(read_input(in_a), budgets, fmt));
    if (iso->parsed()) return emit(centex::run_iso(read_input(in_a), read_input(in_b), budgets, fmt));
    if (oracle->parsed()) return emit(centex::run_oracle(read_input(in_a), budgets, fmt));
    if (normalize->parsed()) return emit(centex::run_normalize(read_input(in_a), fmt));
    if (lift->parsed())
      return emit(centex::run_lift_check(read_input(in_a), x_lit, target.empty() ? "" : read_input(target), fmt));
    if (transform->parsed()) return emit(centex::run_transform(read_input(in_a), x_lit, y_lit, fmt));
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
