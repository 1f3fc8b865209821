#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "adjnet/aspl.hpp"
#include "adjnet/growth.hpp"

namespace adjnet {

inline constexpr const char* kVersion = "0.1.0";

enum class Command { Tokenize, Build, Curve, Simulate, Surrogate, Fit };

std::string to_string(Command c);
Command parse_command(const std::string& name);

/// Everything that determines a run's output. Every field round-trips through
/// the "# key=value" header written at the top of each output file.
struct RunSpec {
  Command command = Command::Simulate;
  ModelKind model = ModelKind::Dm;

  // Model parameters (n0 = 0 selects the model default: 7 for dm/hybrid, 1 for sh).
  std::size_t m = 2;
  double c0 = 0.05;
  double alpha = 1.0;
  std::size_t n0 = 0;
  double rewire_r0 = 0.0;
  double rewire_rho = 0.0;
  double p0 = 1.0;
  double mu = 0.075;
  double c1 = 12.0;
  double eta = 0.25;

  // Growth length: `steps` when nonzero, otherwise grow to `target_n` nodes.
  std::size_t steps = 0;
  std::size_t target_n = 10'000;

  std::uint64_t seed = 1;
  std::size_t realizations = 1;
  std::size_t pieces = 25;
  std::size_t opening_tokens = 0;  // 0: whole text
  std::size_t prefix_n = 0;        // build: stop at this many distinct words
  std::string schedule = "default";

  std::size_t exact_threshold = 2000;
  std::size_t sources = 512;
  bool strict_components = false;

  // fit
  std::size_t tau_min = 0;
  std::size_t tau_max = 0;
  std::size_t kmin = 1;
  std::size_t n_min = 1000;
  double er_alpha = 0.0;  // 0: fit alpha with amplitude fixed at 1
  double fit_delta = 0.0;
  double fit_gamma = 0.0;

  // I/O
  std::string input;
  std::string curve_input;
  std::string edges_input;
  std::string output;
  std::string surrogate_output;
  std::string edges;
  std::string vocab;
  std::string tokens;
  std::string events;

  friend bool operator==(const RunSpec&, const RunSpec&) = default;

  std::size_t effective_n0() const;
  AsplPolicy aspl_policy() const;
  DmParams dm_params() const;
  ShParams sh_params() const;
  HybridParams hybrid_params() const;
  /// Checks every parameter invariant of the selected command/model.
  void validate() const;
};

std::vector<std::pair<std::string, std::string>> spec_fields(const RunSpec& spec);
/// Unknown keys are ignored; malformed values throw InvalidArgument.
RunSpec spec_from_fields(const std::map<std::string, std::string>& fields);

/// "# adjnet <version>" followed by one "# key=value" line per field.
void write_header(std::ostream& os, const RunSpec& spec);
/// Reads the leading '#' lines of a file back into a spec.
RunSpec read_header(std::istream& is);

std::unique_ptr<GrowthModel> make_model(const RunSpec& spec, std::uint64_t seed);

struct SimulationResult {
  AsplCurve curve;
  GrowthDiagnostics diagnostics;  // summed over realizations
  std::vector<double> final_edges;
  std::vector<double> final_nodes;
  Graph first_graph;  // final graph of realization 0
};

/// Runs spec.realizations independent growths (seeds seed+r), tracking
/// ASPL on the schedule. Output is independent of the OpenMP thread count.
SimulationResult simulate(const RunSpec& spec, std::ostream* events_out = nullptr);

/// Executes a command end to end, writing every requested file. Throws the
/// library exceptions; the CLI maps them to exit codes.
void execute(const RunSpec& spec, std::ostream& out);

}  // namespace adjnet
