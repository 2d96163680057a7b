#include "spinvqe/workflow.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "spinvqe/jordan_wigner.hpp"

namespace spinvqe {

namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

const char* spin_label(int s) {
  switch (s) {
    case 0: return "singlet";
    case 1: return "triplet";
    case 2: return "quintet";
    default: return "unknown";
  }
}

ojson matrix_rows(const Eigen::MatrixXd& m) {
  ojson rows = ojson::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ojson row = ojson::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
}

std::vector<double> initial_theta(const RunConfig& cfg, std::size_t n) {
  std::vector<double> theta(n, 0.0);
  if (cfg.theta_init == "random") {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> dist(-1e-2, 1e-2);
    for (double& t : theta) t = dist(rng);
  }
  return theta;
}

RunOutcome fail(int code, std::string message) {
  RunOutcome o;
  o.exit_code = code;
  o.message = std::move(message);
  return o;
}

}  // namespace

ojson relative_energies(const std::vector<int>& spins, const std::vector<double>& energies) {
  ojson out = ojson::object();
  std::ptrdiff_t quintet = -1;
  for (std::size_t i = 0; i < spins.size(); ++i)
    if (spins[i] == 2) quintet = static_cast<std::ptrdiff_t>(i);
  if (quintet < 0) return out;
  for (std::size_t i = 0; i < spins.size(); ++i) {
    if (spins[i] == 2) continue;
    const char* key = spins[i] == 0 ? "E_Q-S" : "E_Q-T";
    out[key] = (energies[i] - energies[static_cast<std::size_t>(quintet)]) * kHartreeToKcalPerMol;
  }
  return out;
}

ojson diagnostics_json(const DiagnosticsReport& r) {
  ojson j;
  if (!r.label.empty()) j["label"] = r.label;
  j["z_s1"] = r.z_s1;
  j["regime"] = r.regime;
  j["s1"] = r.s1;
  std::vector<double> flat;
  for (Eigen::Index i = 0; i < r.mutual_information.rows(); ++i)
    for (Eigen::Index k = 0; k < r.mutual_information.cols(); ++k) flat.push_back(r.mutual_information(i, k));
  j["mutual_information"] = flat;
  j["mutual_information_dim"] = r.mutual_information.rows();
  j["caveat"] = kZs1Caveat;
  return j;
}

RunOutcome run_workflow(const RunConfig& cfg, bool write_files) {
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    return fail(kExitIoError, std::string("invalid configuration: ") + e.what());
  }

  ActiveSpaceIntegrals ints;
  try {
    ints = read_fcidump(cfg.fcidump);
  } catch (const std::exception& e) {
    return fail(kExitIoError, e.what());
  }

  const std::vector<double> weights = cfg.effective_weights();
  std::vector<TargetState> states;
  try {
    for (std::size_t i = 0; i < cfg.spins.size(); ++i)
      states.push_back({build_reference(cfg.initial_state, ints.n_orb, ints.n_electrons(), cfg.spins[i]), weights[i]});
  } catch (const InfeasibleSpin& e) {
    return fail(kExitInfeasibleSpin, e.what());
  }

  AnsatzSpec spec = cfg.ansatz;
  spec.reference_spin = cfg.spins.front();
  OoProblem problem;
  problem.integrals = ints;
  problem.states = states;
  problem.program = compile_ansatz(spec, ints.n_orb, ints.n_alpha, ints.n_beta);
  problem.vqe_tolerance = cfg.vqe_tolerance;
  problem.vqe_window = cfg.vqe_window;
  problem.vqe_max_steps = cfg.vqe_max_steps;

  VqeOptions vopt;
  vopt.schedule = cfg.schedule;
  vopt.adam = cfg.adam;
  vopt.precision = cfg.precision;
  vopt.reduction = cfg.deterministic ? Reduction::deterministic : Reduction::parallel;
  vopt.theta0 = initial_theta(cfg, problem.program.n_parameters);
  vopt.monitor = cfg.monitor;

  const fs::path dir(cfg.output_dir);
  if (write_files) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) return fail(kExitIoError, "cannot create output directory '" + dir.string() + "': " + ec.message());
  }

  RunOutcome outcome;
  ojson& rep = outcome.report;
  rep["program"] = "spinvqe";
  rep["config"] = cfg.to_json();
  rep["system"] = {{"n_orb", ints.n_orb},
                   {"n_alpha", ints.n_alpha},
                   {"n_beta", ints.n_beta},
                   {"n_qubits", ints.n_qubits()},
                   {"core_energy_hartree", ints.core_energy}};
  rep["ansatz"] = {{"flavor", to_string(spec.flavor)},
                   {"k", spec.k},
                   {"tying", to_string(spec.tying)},
                   {"spin_adapted_singles", spec.spin_adapted_singles},
                   {"generators", problem.program.size()},
                   {"parameters", problem.program.n_parameters}};

  OoResult res;
  try {
    res = run_oo_vqe(problem, cfg.oo, vopt);
  } catch (const NonFiniteEnergy& e) {
    rep["status"] = "non_finite";
    rep["message"] = e.what();
    if (write_files) {
      std::ofstream trace(dir / "trace.csv");
      write_trace_csv(trace, e.trace(), cfg.spins);
      write_text(dir / "report.json", rep.dump(2) + "\n");
    }
    outcome.exit_code = kExitNonFinite;
    outcome.message = e.what();
    return outcome;
  }

  const bool converged = res.converged;
  rep["status"] = converged ? "converged" : "not_converged";
  rep["converged"] = converged;
  rep["steps"] = res.trace.size();
  rep["e_avg_hartree"] = res.vqe.e_avg;

  SaVqeProblem final_problem;
  final_problem.hamiltonian = build_qubit_hamiltonian(res.integrals);
  final_problem.states = states;
  final_problem.program = problem.program;
  const SaVqeEvaluator eval(final_problem);
  const SpinObservables obs = build_spin_observables(ints.n_orb);

  ojson jstates = ojson::array();
  for (std::size_t i = 0; i < states.size(); ++i) {
    const StateVector psi = eval.evolved_state(i, res.vqe.theta);
    const int s = cfg.spins[i];
    ojson js;
    js["spin"] = s;
    js["label"] = spin_label(s);
    js["weight"] = weights[i];
    js["initial_state"] = to_string(cfg.initial_state);
    js["energy_hartree"] = res.vqe.energies[i];
    js["s2"] = expectation(psi, obs.s2);
    js["sz"] = expectation(psi, obs.sz);
    js["n"] = expectation(psi, obs.number);
    const DiagnosticsReport diag = diagnose(psi, spin_label(s));
    js["diagnostics"] = diagnostics_json(diag);
    jstates.push_back(js);

    if (write_files) {
      std::ostringstream mi;
      mi << std::setprecision(17);
      for (Eigen::Index r = 0; r < diag.mutual_information.rows(); ++r) {
        for (Eigen::Index c = 0; c < diag.mutual_information.cols(); ++c)
          mi << (c ? "," : "") << diag.mutual_information(r, c);
        mi << "\n";
      }
      write_text(dir / ("mutual_information_S" + std::to_string(s) + ".csv"), mi.str());
      if (cfg.snapshots) {
        std::ofstream snap(dir / ("state_S" + std::to_string(s) + ".svqe"), std::ios::binary);
        write_snapshot(snap, psi);
      }
    }
  }
  rep["states"] = jstates;
  rep["relative_energies_kcal_mol"] = relative_energies(cfg.spins, res.vqe.energies);
  rep["theta"] = res.vqe.theta;

  ojson oo;
  oo["enabled"] = cfg.oo.enabled;
  oo["macros"] = res.macros.size();
  oo["line_search_failed"] = res.line_search_failed;
  if (!res.macros.empty()) oo["grad_max_final"] = res.macros.back().grad_max;
  oo["kappa_total"] = matrix_rows(res.kappa_total.matrix());
  rep["orbital_optimization"] = oo;

  if (write_files) {
    try {
      std::ofstream trace(dir / "trace.csv");
      write_trace_csv(trace, res.trace, cfg.spins);
      if (cfg.oo.enabled) {
        std::ofstream macro(dir / "macro_trace.csv");
        write_macro_csv(macro, res.macros);
      }
      write_text(dir / "report.json", rep.dump(2) + "\n");
    } catch (const std::exception& e) {
      return fail(kExitIoError, e.what());
    }
  }
  outcome.exit_code = converged ? kExitConverged : kExitNotConverged;
  outcome.message = converged ? "converged" : "not converged; best-so-far results reported";
  return outcome;
}

ojson exact_report(const ActiveSpaceIntegrals& ints, const std::vector<int>& spins, std::size_t n_levels,
                   const OracleLimits& limits) {
  const PauliSum h = build_qubit_hamiltonian(ints);
  ojson out;
  out["n_orb"] = ints.n_orb;
  out["n_electrons"] = ints.n_electrons();
  ojson jstates = ojson::array();
  for (int s : spins) {
    ojson js;
    js["spin"] = s;
    js["label"] = spin_label(s);
    const SectorSpectrum spec = sector_spectrum(h, ints.n_electrons(), 2 * s, limits);
    const double target = s * (s + 1.0);
    ojson levels = ojson::array();
    bool found = false;
    for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
      if (k < n_levels) levels.push_back({{"energy_hartree", spec.eigenvalues[k]}, {"s2", spec.s2[k]}});
      if (!found && std::abs(spec.s2[k] - target) <= 1e-6) {
        js["energy_hartree"] = spec.eigenvalues[k];
        found = true;
      }
    }
    if (!found) js["energy_hartree"] = nullptr;
    js["sector_dimension"] = spec.basis.size();
    js["sector_levels"] = levels;
    jstates.push_back(js);
  }
  out["states"] = jstates;
  std::vector<double> energies;
  bool complete = true;
  for (const auto& js : jstates) {
    if (js["energy_hartree"].is_null()) complete = false;
    else energies.push_back(js["energy_hartree"].get<double>());
  }
  out["relative_energies_kcal_mol"] = complete ? relative_energies(spins, energies) : ojson::object();
  return out;
}

AnsatzCounts count_ansatz(const AnsatzSpec& spec, std::size_t n_orb, int n_alpha, int n_beta) {
  const AnsatzProgram prog = compile_ansatz(spec, n_orb, n_alpha, n_beta);
  return {prog.size(), prog.n_parameters};
}

void convert_traces(std::istream& in, std::ostream& out, const std::string& format) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("convert-traces: empty input");
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream is(s);
    while (std::getline(is, cell, ',')) cells.push_back(cell);
    if (!s.empty() && s.back() == ',') cells.emplace_back();
    return cells;
  };
  const std::vector<std::string> header = split(line);
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != header.size()) throw std::runtime_error("convert-traces: ragged row");
    rows.push_back(std::move(cells));
  }
  auto column = [&](const std::string& name) -> std::ptrdiff_t {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<std::ptrdiff_t>(i);
    return -1;
  };

  if (format == "json") {
    ojson cols;
    for (std::size_t c = 0; c < header.size(); ++c) {
      ojson values = ojson::array();
      for (const auto& r : rows) {
        if (r[c].empty()) values.push_back(nullptr);
        else values.push_back(std::stod(r[c]));
      }
      cols[header[c]] = values;
    }
    out << cols.dump(2) << "\n";
  } else if (format == "relative") {
    const auto step = column("step"), q = column("E_S2"), s = column("E_S0"), t = column("E_S1");
    if (step < 0 || q < 0) throw std::runtime_error("convert-traces: trace lacks step or E_S2 columns");
    out << "step,E_Q-S,E_Q-T\n" << std::setprecision(17);
    for (const auto& r : rows) {
      const std::string& eq = r[static_cast<std::size_t>(q)];
      out << r[static_cast<std::size_t>(step)];
      for (auto idx : {s, t}) {
        out << ',';
        if (idx >= 0 && !eq.empty() && !r[static_cast<std::size_t>(idx)].empty())
          out << (std::stod(r[static_cast<std::size_t>(idx)]) - std::stod(eq)) * kHartreeToKcalPerMol;
      }
      out << '\n';
    }
  } else {
    throw std::invalid_argument("convert-traces: unknown format '" + format + "' (json|relative)");
  }
}

}  // namespace spinvqe
