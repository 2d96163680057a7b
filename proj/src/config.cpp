#include "spinvqe/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace spinvqe {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

double to_double(std::string_view key, std::string_view v) {
  const std::string s = trim(v);
  std::size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (s.empty() || pos != s.size()) throw ConfigError(std::string(key) + ": expected a number, got '" + s + "'");
  return out;
}

std::uint64_t to_uint(std::string_view key, std::string_view v) {
  const std::string s = trim(v);
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ConfigError(std::string(key) + ": expected a non-negative integer, got '" + s + "'");
  return out;
}

bool to_bool(std::string_view key, std::string_view v) {
  const std::string s = trim(v);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError(std::string(key) + ": expected true or false, got '" + s + "'");
}

std::vector<std::string> split_list(std::string_view v) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is{std::string(v)};
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T>
std::string join(const std::vector<T>& xs, const std::function<std::string(const T&)>& f) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + f(xs[i]);
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void RunConfig::set(std::string_view key_in, std::string_view value) {
  const std::string key = trim(key_in);
  const std::string v = trim(value);
  try {
    if (key == "fcidump") fcidump = v;
    else if (key == "output_dir") output_dir = v;
    else if (key == "ansatz") ansatz.flavor = parse_flavor(v);
    else if (key == "k") ansatz.k = to_uint(key, v);
    else if (key == "tying") ansatz.tying = parse_tying(v);
    else if (key == "spin_adapted_singles") ansatz.spin_adapted_singles = to_bool(key, v);
    else if (key == "initial_state") initial_state = parse_initial_state(v);
    else if (key == "spins") {
      spins.clear();
      for (const auto& s : split_list(v)) spins.push_back(static_cast<int>(to_uint(key, s)));
    } else if (key == "weights") {
      weights.clear();
      for (const auto& s : split_list(v)) weights.push_back(to_double(key, s));
    } else if (key == "schedule.initial") schedule.initial = to_double(key, v);
    else if (key == "schedule.end") schedule.end = to_double(key, v);
    else if (key == "schedule.boundary") schedule.boundary = to_double(key, v);
    else if (key == "schedule.transition") schedule.transition = to_double(key, v);
    else if (key == "schedule.power") schedule.power = to_double(key, v);
    else if (key == "adam.beta1") adam.beta1 = to_double(key, v);
    else if (key == "adam.beta2") adam.beta2 = to_double(key, v);
    else if (key == "adam.eps") adam.eps = to_double(key, v);
    else if (key == "vqe.tolerance") vqe_tolerance = to_double(key, v);
    else if (key == "vqe.window") vqe_window = to_uint(key, v);
    else if (key == "vqe.max_steps") vqe_max_steps = to_uint(key, v);
    else if (key == "monitor") monitor = to_bool(key, v);
    else if (key == "oo.enabled") oo.enabled = to_bool(key, v);
    else if (key == "oo.max_macros") oo.max_macros = to_uint(key, v);
    else if (key == "oo.step_size") oo.step_size = to_double(key, v);
    else if (key == "oo.grad_tolerance") oo.grad_tolerance = to_double(key, v);
    else if (key == "oo.energy_tolerance") oo.energy_tolerance = to_double(key, v);
    else if (key == "oo.max_halvings") oo.max_halvings = to_uint(key, v);
    else if (key == "precision") {
      if (v == "f64") precision = Precision::f64;
      else if (v == "f32") precision = Precision::f32;
      else throw ConfigError("precision: expected f64 or f32");
    } else if (key == "deterministic") deterministic = to_bool(key, v);
    else if (key == "seed") seed = to_uint(key, v);
    else if (key == "theta_init") {
      if (v != "zeros" && v != "random") throw ConfigError("theta_init: expected zeros or random");
      theta_init = v;
    } else if (key == "snapshots") snapshots = to_bool(key, v);
    else throw ConfigError("unknown config key '" + key + "'");
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

RunConfig RunConfig::parse(std::istream& in) {
  RunConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    try {
      cfg.set(std::string_view(line).substr(0, eq), std::string_view(line).substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  return parse(in);
}

std::vector<double> RunConfig::effective_weights() const {
  if (!weights.empty()) return weights;
  return std::vector<double>(spins.size(), 1.0 / static_cast<double>(spins.size()));
}

void RunConfig::validate() const {
  if (spins.empty()) throw ConfigError("spins: at least one spin state is required");
  std::vector<int> sorted = spins;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw ConfigError("spins: duplicates");
  for (int s : spins)
    if (s < 0 || s > 2) throw ConfigError("spins: only 0, 1 and 2 are supported");
  if (!weights.empty()) {
    if (weights.size() != spins.size()) throw ConfigError("weights: one weight per spin state is required");
    double total = 0.0;
    for (double w : weights) {
      if (!(w >= 0.0 && w <= 1.0)) throw ConfigError("weights: each weight must lie in [0, 1]");
      total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) throw ConfigError("weights: must sum to 1");
  }
  if (!(vqe_tolerance > 0.0) || !(oo.grad_tolerance > 0.0) || !(oo.energy_tolerance > 0.0))
    throw ConfigError("tolerances must be positive");
  if (vqe_window == 0 || vqe_max_steps == 0 || oo.max_macros == 0)
    throw ConfigError("vqe.window, vqe.max_steps and oo.max_macros must be positive");
  if (!(oo.step_size > 0.0)) throw ConfigError("oo.step_size must be positive");
  if (ansatz.k == 0) throw ConfigError("k must be at least 1");
  try {
    schedule.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::string RunConfig::echo() const {
  std::ostringstream os;
  const nlohmann::ordered_json j = to_json();
  for (const auto& [key, value] : j.items()) os << key << " = " << value.get<std::string>() << "\n";
  return os.str();
}

nlohmann::ordered_json RunConfig::to_json() const {
  const auto b = [](bool x) { return std::string(x ? "true" : "false"); };
  nlohmann::ordered_json j;
  j["fcidump"] = fcidump;
  j["output_dir"] = output_dir;
  j["ansatz"] = to_string(ansatz.flavor);
  j["k"] = std::to_string(ansatz.k);
  j["tying"] = to_string(ansatz.tying);
  j["spin_adapted_singles"] = b(ansatz.spin_adapted_singles);
  j["initial_state"] = to_string(initial_state);
  j["spins"] = join<int>(spins, [](const int& s) { return std::to_string(s); });
  j["weights"] = join<double>(weights, [](const double& w) { return format_double(w); });
  j["schedule.initial"] = format_double(schedule.initial);
  j["schedule.end"] = format_double(schedule.end);
  j["schedule.boundary"] = format_double(schedule.boundary);
  j["schedule.transition"] = format_double(schedule.transition);
  j["schedule.power"] = format_double(schedule.power);
  j["adam.beta1"] = format_double(adam.beta1);
  j["adam.beta2"] = format_double(adam.beta2);
  j["adam.eps"] = format_double(adam.eps);
  j["vqe.tolerance"] = format_double(vqe_tolerance);
  j["vqe.window"] = std::to_string(vqe_window);
  j["vqe.max_steps"] = std::to_string(vqe_max_steps);
  j["monitor"] = b(monitor);
  j["oo.enabled"] = b(oo.enabled);
  j["oo.max_macros"] = std::to_string(oo.max_macros);
  j["oo.step_size"] = format_double(oo.step_size);
  j["oo.grad_tolerance"] = format_double(oo.grad_tolerance);
  j["oo.energy_tolerance"] = format_double(oo.energy_tolerance);
  j["oo.max_halvings"] = std::to_string(oo.max_halvings);
  j["precision"] = precision == Precision::f64 ? "f64" : "f32";
  j["deterministic"] = b(deterministic);
  j["seed"] = std::to_string(seed);
  j["theta_init"] = theta_init;
  j["snapshots"] = b(snapshots);
  return j;
}

}  // namespace spinvqe
