// hopfgal <subcommand> --workspace <file> [--job <name>] [--out <file>]
// Exit codes: 0 pass, 1 certificate failure, 2 input error, 3 internal error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

#include "hopfgal/io.hpp"

namespace {

int emit(const hopfgal::json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out);
  if (!f) {
    std::cerr << "cannot write " << out << "\n";
    return 2;
  }
  f << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hopfgal: exact certificates for finite-dimensional Hopf *-algebras and their actions"};
  app.require_subcommand(1);
  std::string workspace, job, out;
  const std::map<std::string, std::string> about = {
      {"validate", "check the axioms of every document, or of a job's targets"},
      {"dual", "dual Hopf *-algebra with its canonical pairing"},
      {"smash", "smash product A # H"},
      {"commutant", "relative commutant of a subspace"},
      {"jones", "basic construction, index and Markov trace"},
      {"qgal-depth2", "quantum Galois group of A < A # H"},
      {"qgal-banica", "quantum Galois group of A < C via a Hopf centralizer"},
      {"centralizer", "largest Hopf *-subalgebra commuting with a *-closed set"},
      {"measure", "largest subcoalgebra measuring through a multispan"}};
  for (const auto& name : hopfgal::commands()) {
    auto* sub = app.add_subcommand(name, about.at(name));
    sub->add_option("--workspace", workspace, "workspace JSON file")->required();
    sub->add_option("--job", job, "job document to run");
    sub->add_option("--out", out, "write the report here instead of stdout");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const hopfgal::Workspace ws = hopfgal::parse_workspace(workspace);
    const hopfgal::RunResult r = hopfgal::run_job(ws, command, job);
    if (emit(r.out, out) != 0) return 2;
    return r.exit_code;
  } catch (const hopfgal::Error& e) {
    emit(hopfgal::error_to_json(e), out);
    return e.kind() == hopfgal::ErrorKind::input ? 2 : 3;
  } catch (const nlohmann::json::exception& e) {
    emit(hopfgal::error_to_json(hopfgal::input_error("schema", e.what())), out);
    return 2;
  }
}
