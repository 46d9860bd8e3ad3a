// qwl: discrete-to-continuous quantum walk limits and simulable-Hamiltonian
// algebras from the command line.

#include "qwl/commands.hpp"
#include "qwl/error.hpp"
#include "qwl/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

}  // namespace

int main(int argc, char** argv) {
  qwl::RunConfig cfg;
  std::string m_list;
  std::string format = "csv";
  std::string out_path;

  CLI::App app{"Quantum walk limits and simulable Hamiltonians"};
  app.add_option("command", cfg.command, "info | converge | evolve | project | closure | simulable | example")
      ->required()
      ->check(CLI::IsMember({"info", "converge", "evolve", "project", "closure", "simulable", "example"}));
  app.add_option("--walk", cfg.walk_spec, "cycle:N, lattice:N,D, example or file:PATH");
  app.add_option("--protocol", cfg.protocol_spec, "strauch, evencyc or file:PATH");
  app.add_option("--gamma", cfg.gamma, "hopping rate");
  app.add_option("--t", cfg.t, "evolution time");
  app.add_option("--m-list", m_list, "ascending repetition counts, comma separated");
  app.add_option("--tol", cfg.tol, "closure and membership tolerance");
  app.add_option("--seed", cfg.seed, "seed for random states");
  app.add_option("--out", out_path, "output file (default: stdout)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--hamiltonian", cfg.hamiltonian_path, "Hamiltonian JSON for 'simulable'");
  app.add_flag("--dump-basis", cfg.dump_basis, "include the closure basis in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  cfg.format = format == "json" ? qwl::OutputFormat::Json : qwl::OutputFormat::Csv;

  qwl::CommandOutput result;
  try {
    if (!m_list.empty()) cfg.m_list = qwl::parse_int_list(m_list);
    result = qwl::run_command(cfg);
  } catch (const qwl::Error& e) {
    std::cerr << "qwl: " << e.what() << "\n";
    return qwl::is_numerical_failure(e.kind()) ? kExitNumerical : kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "qwl: " << e.what() << "\n";
    return kExitValidation;
  }

  if (out_path.empty()) {
    std::cout << result.text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "qwl: cannot write '" << out_path << "'\n";
      return kExitValidation;
    }
    out << result.text;
  }
  if (!result.ok) {
    std::cerr << "qwl: numerical contract violated, see report\n";
    return kExitNumerical;
  }
  return 0;
}
