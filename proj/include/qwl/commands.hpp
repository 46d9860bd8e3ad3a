#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qwl {

enum class OutputFormat { Csv, Json };

struct RunConfig {
  std::string command;  // info, converge, evolve, project, closure, simulable, example
  std::string walk_spec = "cycle:8";
  std::string protocol_spec = "strauch";
  double gamma = 1.0;
  double t = 1.0;
  std::vector<std::int64_t> m_list{32, 64, 128, 256, 512, 1024};
  double tol = 1e-9;
  std::uint64_t seed = 0;
  OutputFormat format = OutputFormat::Csv;
  std::string hamiltonian_path;
  bool dump_basis = false;
};

struct CommandOutput {
  std::string text;
  bool ok = true;  // false when a numerical contract was violated
};

/// Runs one command and renders its report. Invalid input throws qwl::Error
/// before anything is rendered.
CommandOutput run_command(const RunConfig& cfg);

}  // namespace qwl
