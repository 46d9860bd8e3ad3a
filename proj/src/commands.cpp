#include "qwl/commands.hpp"

#include "qwl/error.hpp"
#include "qwl/io.hpp"
#include "qwl/liealg.hpp"
#include "qwl/limits.hpp"
#include "qwl/random.hpp"

#include <cmath>
#include <functional>
#include <map>

namespace qwl {

namespace {

constexpr double kChiralTol = 1e-10;
constexpr double kReconstructionTol = 1e-12;
constexpr double kExampleMemberTol = 1e-8;

std::string csv_value(const Json& v) {
  switch (v.type()) {
    case Json::value_t::null: return "";
    case Json::value_t::string: return v.get<std::string>();
    case Json::value_t::number_float: {
      const double d = v.get<double>();
      return std::isfinite(d) ? format_double(d) : "nan";
    }
    default: return v.dump();
  }
}

// Flat objects become key,value rows; arrays of objects become one
// key,field,... row per element.
std::string key_value_csv(const Json& report) {
  std::string out;
  for (const auto& [key, value] : report.items()) {
    if (value.is_array()) {
      for (const auto& item : value) {
        out += key;
        if (item.is_object()) {
          for (const auto& [k, v] : item.items()) out += "," + csv_value(v);
        } else {
          out += "," + csv_value(item);
        }
        out += "\n";
      }
    } else if (!value.is_object()) {
      out += key + "," + csv_value(value) + "\n";
    }
  }
  return out;
}

std::string render(const Json& report, OutputFormat format) {
  return format == OutputFormat::Json ? dump_json(report) : key_value_csv(report);
}

Json spectrum_json(const std::vector<SpectrumEntry>& spectrum) {
  Json out = Json::array();
  for (const auto& e : spectrum) out.push_back(Json{{"value", e.value}, {"multiplicity", e.multiplicity}});
  return out;
}

void require_positive_gamma_and_time(const RunConfig& cfg) {
  if (!(cfg.gamma > 0.0) || !std::isfinite(cfg.gamma)) throw Error(ErrorKind::InvalidArgument, "gamma must be positive");
  if (!(cfg.t >= 0.0) || !std::isfinite(cfg.t)) throw Error(ErrorKind::InvalidArgument, "t must be nonnegative");
}

void require_m_list(const RunConfig& cfg) {
  if (cfg.m_list.empty()) throw Error(ErrorKind::InvalidArgument, "m list is empty");
  for (std::size_t i = 0; i < cfg.m_list.size(); ++i) {
    if (cfg.m_list[i] < 1) throw Error(ErrorKind::InvalidArgument, "m values must be positive");
    if (i > 0 && cfg.m_list[i] <= cfg.m_list[i - 1]) {
      throw Error(ErrorKind::InvalidArgument, "m list must be strictly ascending");
    }
  }
  // Domain check up front so no partial report is produced.
  if (cfg.gamma * cfg.t / static_cast<double>(cfg.m_list.front()) >= 1.0) {
    throw Error(ErrorKind::DomainExceeded, "gamma*t/m must stay below 1 for every m");
  }
}

CommandOutput cmd_info(const RunConfig& cfg) {
  const auto walk = resolve_walk(cfg.walk_spec);
  const auto degree = regular_degree(walk->graph());
  Json report{{"coin_dim", walk->coin_dim()},
              {"walker_dim", walk->walker_dim()},
              {"shift_order", shift_order(*walk)},
              {"regular_degree", degree ? Json(*degree) : Json(nullptr)},
              {"adjacency_spectrum", spectrum_json(spectrum_multiset(adjacency(walk->graph())))}};
  return {render(report, cfg.format), true};
}

CommandOutput cmd_converge(const RunConfig& cfg) {
  require_positive_gamma_and_time(cfg);
  require_m_list(cfg);
  const auto walk = resolve_walk(cfg.walk_spec);
  const ProtocolExpr protocol = resolve_protocol(cfg.protocol_spec, walk);

  const ConvergenceReport report = convergence_study(protocol, cfg.gamma, cfg.t, cfg.m_list);
  std::vector<double> single;
  for (const auto& s : report.samples) single.push_back(single_step_error(protocol, s.x));

  if (cfg.format == OutputFormat::Csv) {
    std::string out = "m,x,single_step_error,repeated_error\n";
    for (std::size_t i = 0; i < report.samples.size(); ++i) {
      const auto& s = report.samples[i];
      out += std::to_string(s.m) + "," + format_double(s.x) + "," + format_double(single[i]) + "," +
             format_double(s.error) + "\n";
    }
    out += "fitted_exponent," + (report.fitted_exponent ? format_double(*report.fitted_exponent) : "") + "\n";
    return {out, true};
  }
  Json samples = Json::array();
  for (std::size_t i = 0; i < report.samples.size(); ++i) {
    const auto& s = report.samples[i];
    samples.push_back(Json{{"m", s.m}, {"x", s.x}, {"single_step_error", single[i]}, {"repeated_error", s.error}});
  }
  Json out{{"gamma", cfg.gamma},
           {"t", cfg.t},
           {"samples", samples},
           {"fitted_exponent", report.fitted_exponent ? Json(*report.fitted_exponent) : Json(nullptr)}};
  return {dump_json(out), true};
}

CommandOutput cmd_evolve(const RunConfig& cfg) {
  require_positive_gamma_and_time(cfg);
  require_m_list(cfg);
  const auto walk = resolve_walk(cfg.walk_spec);
  const ProtocolExpr protocol = resolve_protocol(cfg.protocol_spec, walk);
  LcgStream rng(cfg.seed);
  const CVector psi0 = random_state(walk->dim(), rng);
  const CVector target = ctqw_propagator(effective_hamiltonian(protocol), cfg.gamma, cfg.t) * psi0;

  Json samples = Json::array();
  std::string csv = "m,x,state_error\n";
  for (const auto m : cfg.m_list) {
    const auto limit = repeated_limit(protocol, cfg.gamma, cfg.t, m);
    const double x = cfg.gamma * cfg.t / static_cast<double>(m);
    const double err = (limit.unitary * psi0 - target).norm();
    samples.push_back(Json{{"m", m}, {"x", x}, {"state_error", err}});
    csv += std::to_string(m) + "," + format_double(x) + "," + format_double(err) + "\n";
  }
  if (cfg.format == OutputFormat::Csv) return {csv, true};

  // Walker-position distribution of the target state, summed over the coin.
  Json probabilities = Json::array();
  for (int j = 0; j < walk->walker_dim(); ++j) {
    double p = 0.0;
    for (int k = 0; k < walk->coin_dim(); ++k) p += std::norm(target(k * walk->walker_dim() + j));
    probabilities.push_back(p);
  }
  Json out{{"gamma", cfg.gamma}, {"t", cfg.t},          {"seed", cfg.seed},
           {"samples", samples}, {"target_position_probabilities", probabilities}};
  return {dump_json(out), true};
}

CommandOutput cmd_project(const RunConfig& cfg) {
  require_positive_gamma_and_time(cfg);
  const auto walk = resolve_walk(cfg.walk_spec);
  if (!is_cycle_walk(*walk)) throw Error(ErrorKind::NotACycle, "chiral projections are defined on cycle walks only");
  const int n = walk->walker_dim();
  LcgStream rng(cfg.seed);
  const CVector psi0 = random_state(2 * n, rng);
  const CVector psit = ctqw_propagator(limit_hamiltonian_cycle(n), cfg.gamma, cfg.t) * psi0;

  const auto split0 = chiral_split(psi0, n);
  const auto splitt = chiral_split(psit, n);
  const ChiralComponents c0 = chiral_combinations(split0.first, split0.second, n);
  const ChiralComponents ct = chiral_combinations(splitt.first, splitt.second, n);

  const Graph cycle = cycle_graph(n);
  const CMatrix forward_a = ctqw_propagator(adjacency(cycle), cfg.gamma, cfg.t);
  const CMatrix backward_a = ctqw_propagator(adjacency(cycle), -cfg.gamma, cfg.t);
  const CMatrix forward_l = ctqw_propagator(laplacian(cycle), cfg.gamma, cfg.t);
  const CMatrix backward_l = ctqw_propagator(laplacian(cycle), -cfg.gamma, cfg.t);

  double psi_residual = 0.0;
  double phi_residual = 0.0;
  auto check = [&](const CVector& at0, const CVector& att, int sign) {
    const CMatrix& a = sign > 0 ? forward_a : backward_a;
    const CMatrix& l = sign > 0 ? forward_l : backward_l;
    psi_residual = std::max(psi_residual, (att - a * at0).norm());
    const CVector phi0 = phi_transform(at0, cfg.gamma, 0.0, sign);
    const CVector phit = phi_transform(att, cfg.gamma, cfg.t, sign);
    phi_residual = std::max(phi_residual, (phit - l * phi0).norm());
  };
  check(c0.plus1, ct.plus1, 1);
  check(c0.plus2, ct.plus2, 1);
  check(c0.minus1, ct.minus1, -1);
  check(c0.minus2, ct.minus2, -1);
  const double reconstruction = (chiral_reconstruct(ct) - psit).norm();

  const bool pass = psi_residual <= kChiralTol && phi_residual <= kChiralTol && reconstruction <= kReconstructionTol;
  Json report{{"psi_adjacency_residual", psi_residual},
              {"phi_laplacian_residual", phi_residual},
              {"reconstruction_residual", reconstruction},
              {"pass", pass}};
  return {render(report, cfg.format), pass};
}

CommandOutput cmd_closure(const RunConfig& cfg) {
  const auto walk = resolve_walk(cfg.walk_spec);
  const LieBasis basis = lie_closure(generators(*walk), cfg.tol);
  Json report{{"ambient_dim", basis.ambient_dim()},
              {"dimension", basis.dimension()},
              {"tolerance", basis.tolerance()},
              {"generator_count", basis.generator_count()},
              {"passes", basis.passes()}};
  if (cfg.format == OutputFormat::Json) {
    if (cfg.dump_basis) {
      Json elements = Json::array();
      for (const auto& b : basis.elements()) elements.push_back(matrix_to_json(b));
      report["basis"] = elements;
    }
    return {dump_json(report), true};
  }
  std::string out = key_value_csv(report);
  if (cfg.dump_basis) {
    for (std::size_t k = 0; k < basis.elements().size(); ++k) {
      const CMatrix& b = basis.elements()[k];
      for (Eigen::Index r = 0; r < b.rows(); ++r) {
        for (Eigen::Index c = 0; c < b.cols(); ++c) {
          out += "basis," + std::to_string(k) + "," + std::to_string(r) + "," + std::to_string(c) + "," +
                 format_double(b(r, c).real()) + "," + format_double(b(r, c).imag()) + "\n";
        }
      }
    }
  }
  return {out, true};
}

CommandOutput cmd_simulable(const RunConfig& cfg) {
  if (cfg.hamiltonian_path.empty()) throw Error(ErrorKind::InvalidArgument, "simulable needs --hamiltonian PATH");
  const auto walk = resolve_walk(cfg.walk_spec);
  const CMatrix h = matrix_from_json(read_json_file(cfg.hamiltonian_path));
  if (h.rows() != walk->dim() || h.cols() != walk->dim()) {
    throw Error(ErrorKind::DimMismatch, "Hamiltonian is " + std::to_string(h.rows()) + "x" +
                                            std::to_string(h.cols()) + ", walk dimension is " +
                                            std::to_string(walk->dim()));
  }
  if (!is_hermitian(h, kHermitianTol * std::max(1.0, h.norm()))) {
    throw Error(ErrorKind::NonHermitian, "Hamiltonian is not Hermitian");
  }
  const LieBasis basis = lie_closure(generators(*walk), cfg.tol);
  const double residual = member_residual(basis, Complex(0.0, -1.0) * h);
  Json report{{"closure_dimension", basis.dimension()},
              {"membership_residual", residual},
              {"tolerance", cfg.tol},
              {"simulable", is_simulable(basis, h, cfg.tol)}};
  return {render(report, cfg.format), true};
}

CommandOutput cmd_example(const RunConfig& cfg) {
  const CoinedWalk walk = example_walk();
  Json items = Json::array();
  bool all = true;
  auto item = [&](const std::string& name, bool pass, Json value) {
    items.push_back(Json{{"name", name}, {"pass", pass}, {"value", std::move(value)}});
    all = all && pass;
  };

  const auto order = shift_order(walk);
  item("shift_order", order == 2, order);

  const auto spectrum = spectrum_multiset(adjacency(walk.graph()));
  item("adjacency_spectrum", spectrum == std::vector<SpectrumEntry>{{3.0, 1}, {-1.0, 3}}, spectrum_json(spectrum));

  const LieBasis basis = lie_closure(generators(walk), cfg.tol);
  item("closure_dimension", basis.dimension() == 33, basis.dimension());

  CMatrix diag = CMatrix::Zero(3, 3);
  diag.diagonal() << Complex(0, -3), Complex(0, 1), Complex(0, 2);
  const double diag_residual = member_residual(basis, kron(diag, identity(4)));
  item("diagonal_membership", diag_residual <= kExampleMemberTol, diag_residual);

  const CMatrix element = example_subspace_element();
  const auto element_spectrum = spectrum_multiset(element);
  const double element_residual = member_residual(basis, element);
  const std::vector<SpectrumEntry> expected{{3.0, 1}, {1.0, 3}, {0.0, 4}, {-1.0, 3}, {-3.0, 1}};
  item("subspace_element", element_spectrum == expected && element_residual <= kExampleMemberTol,
       Json{{"spectrum_imaginary_parts", spectrum_json(element_spectrum)}, {"membership_residual", element_residual}});

  if (cfg.format == OutputFormat::Json) {
    return {dump_json(Json{{"tolerance", cfg.tol}, {"items", items}, {"all_pass", all}}), all};
  }
  std::string out = "item,pass\n";
  for (const auto& i : items) out += i["name"].get<std::string>() + "," + (i["pass"].get<bool>() ? "true" : "false") + "\n";
  out += std::string("all_pass,") + (all ? "true" : "false") + "\n";
  return {out, all};
}

}  // namespace

CommandOutput run_command(const RunConfig& cfg) {
  static const std::map<std::string, std::function<CommandOutput(const RunConfig&)>> table{
      {"info", cmd_info},       {"converge", cmd_converge},   {"evolve", cmd_evolve}, {"project", cmd_project},
      {"closure", cmd_closure}, {"simulable", cmd_simulable}, {"example", cmd_example},
  };
  const auto it = table.find(cfg.command);
  if (it == table.end()) throw Error(ErrorKind::BadSpec, "unknown command '" + cfg.command + "'");
  return it->second(cfg);
}

}  // namespace qwl
