#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "spinvqe/ansatz.hpp"
#include "spinvqe/scf.hpp"
#include "spinvqe/vqe.hpp"

namespace spinvqe {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Settings of one batch run. Read from a flat "key = value" file ('#'
/// starts a comment); every key can be overridden on the command line.
///
///   fcidump, output_dir
///   ansatz (UCCSD|UCCGSD|kUpCCGSD), k, tying (independent|paper-count),
///   spin_adapted_singles, initial_state (T0|T1)
///   spins (comma list of 0,1,2), weights (comma list; empty = uniform)
///   schedule.{initial,end,boundary,transition,power}
///   adam.{beta1,beta2,eps}
///   vqe.{tolerance,window,max_steps}, monitor
///   oo.{enabled,max_macros,step_size,grad_tolerance,energy_tolerance,max_halvings}
///   precision (f64|f32), deterministic, seed, theta_init (zeros|random)
///   snapshots (write converged states)
struct RunConfig {
  std::string fcidump;
  std::string output_dir = "spinvqe_out";

  AnsatzSpec ansatz;
  InitialState initial_state = InitialState::T0;
  std::vector<int> spins{0, 1, 2};
  std::vector<double> weights;

  ScheduleParams schedule;
  AdamParams adam;
  double vqe_tolerance = 1e-7;
  std::size_t vqe_window = 50;
  std::size_t vqe_max_steps = 50000;
  bool monitor = true;

  OoOptions oo;

  Precision precision = Precision::f64;
  bool deterministic = true;
  std::uint64_t seed = 0;
  std::string theta_init = "zeros";
  bool snapshots = true;

  /// Applies one setting; throws ConfigError on an unknown key or bad value.
  void set(std::string_view key, std::string_view value);

  /// Parses a config stream on top of the defaults.
  static RunConfig parse(std::istream& in);
  static RunConfig load(const std::string& path);

  /// Weights as used by the run (uniform when none were given).
  std::vector<double> effective_weights() const;

  void validate() const;

  /// Every key with its current value, in a fixed order; parse(echo()) round-trips.
  std::string echo() const;
  nlohmann::ordered_json to_json() const;
};

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

}  // namespace spinvqe
