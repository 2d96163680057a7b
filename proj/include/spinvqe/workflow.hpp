#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "spinvqe/config.hpp"
#include "spinvqe/diagnostics.hpp"
#include "spinvqe/oracle.hpp"

namespace spinvqe {

inline constexpr double kHartreeToKcalPerMol = 627.5094740631;

enum ExitCode : int {
  kExitConverged = 0,
  kExitIoError = 1,
  kExitNotConverged = 2,
  kExitInfeasibleSpin = 3,
  kExitNonFinite = 4,
};

struct RunOutcome {
  int exit_code = kExitConverged;
  std::string message;
  nlohmann::ordered_json report;
};

/// Reads the FCIDUMP, runs (OO-)SA-VQE and, unless `write_files` is false,
/// writes report.json, trace.csv, macro_trace.csv, per-state mutual
/// information CSVs and state snapshots into config.output_dir.
RunOutcome run_workflow(const RunConfig& config, bool write_files = true);

/// E_{Q-X} = E_X - E_quintet in kcal/mol for every non-quintet state X.
/// Empty when no quintet was computed.
nlohmann::ordered_json relative_energies(const std::vector<int>& spins, const std::vector<double>& energies);

nlohmann::ordered_json diagnostics_json(const DiagnosticsReport& report);

/// Spin-filtered exact energies and the low sector spectrum for each spin.
nlohmann::ordered_json exact_report(const ActiveSpaceIntegrals& ints, const std::vector<int>& spins,
                                    std::size_t n_levels = 8, const OracleLimits& limits = {});

struct AnsatzCounts {
  std::size_t generators = 0;
  std::size_t parameters = 0;
};
AnsatzCounts count_ansatz(const AnsatzSpec& spec, std::size_t n_orb, int n_alpha, int n_beta);

/// Trace CSV (step, lr, E_avg, E_S0..S2_S2) to either a columnar JSON
/// document ("json") or a CSV of per-step relative energies in kcal/mol
/// ("relative": step, E_Q-S, E_Q-T).
void convert_traces(std::istream& in, std::ostream& out, const std::string& format);

}  // namespace spinvqe
