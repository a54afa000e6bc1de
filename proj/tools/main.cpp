// Command line front end: exact toric resolution audits, twistor fiber
// tables, Betti ledgers, and 120-cell chain combinatorics, all as
// deterministic JSON reports.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "crepant/report.hpp"

namespace {

using crepant::json;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const json& rep, const std::string& output, bool table) {
  const std::string text = table ? crepant::render_table(rep) : rep.dump(2) + "\n";
  if (output.empty() || output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(output);
  if (!out) throw std::runtime_error("cannot open output file '" + output + "'");
  out << text;
}

json parse_json(const std::string& text) {
  return json::parse(text);  // throws with byte position on malformed input
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"crepant: exact polyhedral audits of toric orbifold resolutions"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string output;
  bool table = false;
  app.add_option("-o,--output", output, "output file (default stdout)");
  app.add_flag("-t,--table", table, "render a plain-text table instead of JSON");

  // resolve
  auto* resolve = app.add_subcommand(
      "resolve", "audit a polyhedron, cut along its singular faces, recheck");
  std::string resolve_input;
  std::string epsilon = "1";
  resolve->add_option("input", resolve_input, "polyhedron JSON file, or - for stdin")
      ->required();
  resolve->add_option("-e,--epsilon", epsilon, "cut level as a rational p/q");

  // fiber-action
  auto* fiber = app.add_subcommand(
      "fiber-action", "tabulate the even sign-flip group acting on the fiber sphere");

  // betti
  auto* betti = app.add_subcommand(
      "betti", "resolution deltas for a singular locus description");
  std::string betti_input;
  std::vector<long> doubled;
  betti->add_option("input", betti_input,
                    "singular locus JSON file, or - for stdin");
  betti->add_option("--doubled", doubled,
                    "vertex and 2-face counts V F of a doubled polytope")
      ->expected(2);

  // coxeter
  auto* coxeter = app.add_subcommand(
      "coxeter", "chains of 120-cells and their face counts");
  int chain = 0;
  bool selftest = false;
  coxeter->add_option("--chain", chain, "number of 120-cells in the chain");
  coxeter->add_flag("--selftest", selftest, "run the 4-cube gluing regression");

  // verify-paper
  auto* verify = app.add_subcommand(
      "verify-paper", "run the built-in suite of pinned reference checks");
  std::string section;
  bool negative_control = false;
  verify->add_option("--section", section, "run only checks with this section tag");
  verify->add_flag("--negative-control", negative_control,
                   "perturb one expectation to demonstrate failure reporting");

  CLI11_PARSE(app, argc, argv);

  try {
    if (resolve->parsed()) {
      const auto poly = crepant::polyhedron_from_json(parse_json(read_input(resolve_input)));
      crepant::ResolveOptions opt;
      opt.epsilon = crepant::parse_rat(epsilon);
      emit(crepant::run_resolve(poly, opt), output, table);
      return 0;
    }
    if (fiber->parsed()) {
      emit(crepant::run_fiber_report(), output, table);
      return 0;
    }
    if (betti->parsed()) {
      crepant::SingularLocusDescription desc;
      if (!betti_input.empty())
        desc = crepant::locus_from_json(parse_json(read_input(betti_input)));
      std::optional<std::pair<long, long>> dv;
      if (!doubled.empty()) dv = std::pair<long, long>(doubled[0], doubled[1]);
      emit(crepant::run_betti_report(desc, dv), output, table);
      return 0;
    }
    if (coxeter->parsed()) {
      if (selftest) {
        const json rep = crepant::run_coxeter_selftest();
        emit(rep, output, table);
        return rep.at("pass").get<bool>() ? 0 : 1;
      }
      if (chain < 1)
        throw CLI::ValidationError("coxeter", "need --chain k (k >= 1) or --selftest");
      emit(crepant::run_coxeter_chain(chain), output, table);
      return 0;
    }
    if (verify->parsed()) {
      crepant::VerifyOptions opt;
      opt.section = section;
      opt.negative_control = negative_control;
      const auto outcome = crepant::run_verify(opt);
      emit(outcome.report, output, table);
      return outcome.failures == 0 ? 0 : 1;
    }
  } catch (const json::parse_error& ex) {
    std::cerr << "error: malformed JSON: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
