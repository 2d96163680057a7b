// Command-line front end: run | exact | diagnostics | count | convert-traces.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "spinvqe/config.hpp"
#include "spinvqe/workflow.hpp"

namespace {

using namespace spinvqe;

/// Writes to `path`, or stdout when it is empty or "-".
int emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return kExitConverged;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return kExitIoError;
  }
  return kExitConverged;
}

std::vector<int> parse_spins(const std::string& text) {
  RunConfig tmp;
  tmp.set("spins", text);
  return tmp.spins;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"State-averaged, orbital-optimized VQE statevector engine for spin-state energetics"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Optimize the requested spin states and write a report");
  std::string config_path, fcidump, output_dir;
  std::vector<std::string> overrides;
  run->add_option("-c,--config", config_path, "key = value configuration file");
  run->add_option("-f,--fcidump", fcidump, "FCIDUMP file (overrides the config)");
  run->add_option("-o,--output-dir", output_dir, "output directory (overrides the config)");
  run->add_option("-s,--set", overrides, "override a config key: key=value (repeatable)");

  // exact
  auto* exact = app.add_subcommand("exact", "Exact spin-filtered energies of an FCIDUMP");
  std::string exact_fcidump, exact_out, exact_spins = "0,1,2";
  std::size_t levels = 8;
  exact->add_option("fcidump", exact_fcidump, "FCIDUMP file")->required();
  exact->add_option("--spins", exact_spins, "comma-separated spins");
  exact->add_option("--levels", levels, "sector levels to list per spin");
  exact->add_option("-o,--output", exact_out, "JSON output file (default stdout)");

  // diagnostics
  auto* diag = app.add_subcommand("diagnostics", "Entropy diagnostics of a state snapshot");
  std::string snapshot, diag_label, diag_out;
  diag->add_option("snapshot", snapshot, "state snapshot (.svqe)")->required();
  diag->add_option("--label", diag_label, "label stored in the report");
  diag->add_option("-o,--output", diag_out, "JSON output file (default stdout)");

  // count
  auto* count = app.add_subcommand("count", "Generator and parameter counts of an ansatz");
  std::string flavor = "kUpCCGSD", tying = "independent";
  std::size_t k = 1, n_orb = 2;
  int n_alpha = 1, n_beta = 1;
  bool spin_adapted = false, count_json = false;
  count->add_option("--ansatz", flavor, "UCCSD | UCCGSD | kUpCCGSD");
  count->add_option("-k", k, "layers (kUpCCGSD)");
  count->add_option("--norb", n_orb, "active orbitals")->required();
  count->add_option("--nalpha", n_alpha, "alpha electrons (UCCSD partition)");
  count->add_option("--nbeta", n_beta, "beta electrons (UCCSD partition)");
  count->add_option("--tying", tying, "independent | paper-count");
  count->add_flag("--spin-adapted-singles", spin_adapted, "share alpha/beta single parameters");
  count->add_flag("--json", count_json, "print JSON");

  // convert-traces
  auto* conv = app.add_subcommand("convert-traces", "Convert a trace CSV to JSON or relative energies");
  std::string trace_in, conv_out, format = "json";
  conv->add_option("trace", trace_in, "trace.csv")->required();
  conv->add_option("--format", format, "json | relative");
  conv->add_option("-o,--output", conv_out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      RunConfig cfg = config_path.empty() ? RunConfig{} : RunConfig::load(config_path);
      if (!fcidump.empty()) cfg.fcidump = fcidump;
      if (!output_dir.empty()) cfg.output_dir = output_dir;
      for (const std::string& kv : overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
      }
      const RunOutcome out = run_workflow(cfg);
      if (out.exit_code == kExitConverged || out.exit_code == kExitNotConverged) {
        std::cout << out.message << "\n";
        if (out.report.contains("e_avg_hartree"))
          std::cout << "E_avg = " << format_double(out.report["e_avg_hartree"].get<double>()) << " Hartree\n";
        std::cout << "report: " << cfg.output_dir << "/report.json\n";
      } else {
        std::cerr << "error: " << out.message << "\n";
      }
      return out.exit_code;
    }
    if (*exact) {
      const ActiveSpaceIntegrals ints = read_fcidump(exact_fcidump);
      return emit(exact_out, exact_report(ints, parse_spins(exact_spins), levels).dump(2) + "\n");
    }
    if (*diag) {
      std::ifstream in(snapshot, std::ios::binary);
      if (!in) throw std::runtime_error("cannot open snapshot '" + snapshot + "'");
      const StateVector psi = read_snapshot(in);
      return emit(diag_out, diagnostics_json(diagnose(psi, diag_label)).dump(2) + "\n");
    }
    if (*count) {
      AnsatzSpec spec;
      spec.flavor = parse_flavor(flavor);
      spec.k = k;
      spec.tying = parse_tying(tying);
      spec.spin_adapted_singles = spin_adapted;
      const AnsatzCounts c = count_ansatz(spec, n_orb, n_alpha, n_beta);
      if (count_json) {
        nlohmann::ordered_json j{{"ansatz", flavor}, {"k", k}, {"n_orb", n_orb}, {"tying", tying},
                                 {"generators", c.generators}, {"parameters", c.parameters}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "generators " << c.generators << "\nparameters " << c.parameters << "\n";
      }
      return kExitConverged;
    }
    if (*conv) {
      std::ifstream in(trace_in);
      if (!in) throw std::runtime_error("cannot open trace '" + trace_in + "'");
      std::ostringstream out;
      convert_traces(in, out, format);
      return emit(conv_out, out.str());
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIoError;
  }
  return kExitConverged;
}
