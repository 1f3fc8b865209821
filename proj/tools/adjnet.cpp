// Command-line front end: tokenize, build, curve, simulate, surrogate, fit.
#include <omp.h>

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <string_view>

#include "CLI11.hpp"
#include "adjnet/error.hpp"
#include "adjnet/run.hpp"

namespace {

enum ExitCode { kOk = 0, kInvalid = 2, kIo = 3, kInsufficient = 4, kInternal = 70 };

// Flat "key=value" lines; a leading '#' is allowed so that the header of a
// previous output file works as a config. Hyphens in keys read as underscores.
adjnet::RunSpec load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw adjnet::IoError("cannot read config '" + path + "'");
  std::map<std::string, std::string> fields;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view v = line;
    while (!v.empty() && (v.front() == '#' || v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
    while (!v.empty() && (v.back() == '\r' || v.back() == ' ')) v.remove_suffix(1);
    const auto eq = v.find('=');
    if (v.empty() || eq == std::string_view::npos) continue;
    std::string key(v.substr(0, eq));
    while (!key.empty() && key.back() == ' ') key.pop_back();
    for (auto& c : key) c = c == '-' ? '_' : c;
    std::string_view value = v.substr(eq + 1);
    while (!value.empty() && value.front() == ' ') value.remove_prefix(1);
    fields[key] = std::string(value);
  }
  return adjnet::spec_from_fields(fields);
}

std::string config_path(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string_view arg = argv[i];
    if (arg == "--config" && i + 1 < argc) return argv[i + 1];
    if (arg.rfind("--config=", 0) == 0) return std::string(arg.substr(9));
  }
  return {};
}

int report(const std::exception& e, int code, const char* what) {
  std::cerr << "adjnet: " << what << ": " << e.what() << '\n';
  return code;
}

void add_text_input(CLI::App* cmd, adjnet::RunSpec& s) {
  cmd->add_option("input,-i,--input", s.input, "UTF-8 text file");
  cmd->add_option("--opening-tokens", s.opening_tokens, "Use only the first T tokens (0: all)");
}

void add_aspl_options(CLI::App* cmd, adjnet::RunSpec& s) {
  cmd->add_option("--schedule", s.schedule,
                  "Checkpoint sizes: 'default' or a comma list of increasing N");
  cmd->add_option("--exact-threshold", s.exact_threshold,
                  "Largest component size measured with all-source BFS");
  cmd->add_option("--sources", s.sources, "BFS roots per sampled measurement")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--strict-components", s.strict_components,
                "Fail on disconnected graphs instead of measuring the largest component");
}

void add_model_options(CLI::App* cmd, adjnet::RunSpec& s, std::string& model) {
  cmd->add_option("--model", model, "dm | sh | sh-nonlinear | hybrid")
      ->check(CLI::IsMember({"dm", "sh", "sh-nonlinear", "hybrid"}));
  cmd->add_option("-m,--m", s.m, "Edges attached by each new node (dm, hybrid)");
  cmd->add_option("--c0", s.c0, "Intra-edge prefactor");
  cmd->add_option("--alpha", s.alpha, "Acceleration exponent");
  cmd->add_option("--n0", s.n0, "Seed chain size (0: model default)");
  cmd->add_option("--rewire-r0", s.rewire_r0, "Rewiring prefactor");
  cmd->add_option("--rewire-rho", s.rewire_rho, "Rewiring exponent");
  cmd->add_option("--p0", s.p0, "Node-step probability prefactor (sh, hybrid)");
  cmd->add_option("--mu", s.mu, "Node-step probability decay exponent");
  cmd->add_option("--c1", s.c1, "Preference exponent prefactor (sh-nonlinear)");
  cmd->add_option("--eta", s.eta, "Preference exponent decay (sh-nonlinear)");
  cmd->add_option("--steps", s.steps, "Growth steps (0: grow to --target-n nodes)");
  cmd->add_option("--target-n", s.target_n, "Final node count when --steps is 0");
}

}  // namespace

int main(int argc, char** argv) {
  adjnet::RunSpec spec;
  std::string config;
  try {
    config = config_path(argc, argv);
    if (!config.empty()) spec = load_config(config);
  } catch (const adjnet::IoError& e) {
    return report(e, kIo, "i/o error");
  } catch (const adjnet::InvalidArgument& e) {
    return report(e, kInvalid, "invalid config");
  }
  std::string model = adjnet::to_string(spec.model);
  // the whole text is compared with whole-text shuffles unless a surrogate config says otherwise
  std::size_t surrogate_pieces = spec.command == adjnet::Command::Surrogate ? spec.pieces : 1;
  int jobs = 0;

  CLI::App app{"Word-adjacency and accelerated-growth network toolkit"};
  app.set_version_flag("--version", std::string("adjnet ") + adjnet::kVersion);
  app.add_option("--config", config, "key=value defaults, overridden by flags");
  app.add_option("-j,--jobs", jobs, "OpenMP threads (0: runtime default)")
      ->check(CLI::NonNegativeNumber);
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  auto* tok = app.add_subcommand("tokenize", "Tokenize a text into ids and a vocabulary");
  add_text_input(tok, spec);
  tok->add_option("--tokens", spec.tokens, "Token id file (default: stdout)");
  tok->add_option("--vocab", spec.vocab, "Vocabulary TSV");

  auto* build = app.add_subcommand("build", "Build the word-adjacency network");
  add_text_input(build, spec);
  build->add_option("--prefix-n", spec.prefix_n, "Stop at this many distinct words (0: all)");
  build->add_option("--edges", spec.edges, "Edge list (default: stdout)");
  build->add_option("--vocab", spec.vocab, "Node id to word TSV");
  build->add_option("--events", spec.events, "Growth event log");

  auto* curve = app.add_subcommand("curve", "ASPL against vocabulary size for a text");
  add_text_input(curve, spec);
  curve->add_option("--pieces", spec.pieces, "Split into this many pieces and average")
      ->check(CLI::PositiveNumber);
  add_aspl_options(curve, spec);
  curve->add_option("-o,--output", spec.output, "Curve CSV (default: stdout)");

  auto* sim = app.add_subcommand("simulate", "Grow model networks and track ASPL");
  add_model_options(sim, spec, model);
  sim->add_option("--seed", spec.seed, "Base seed; realization r uses seed + r");
  sim->add_option("--realizations", spec.realizations, "Independent realizations to average")
      ->check(CLI::PositiveNumber);
  add_aspl_options(sim, spec);
  sim->add_option("-o,--output", spec.output, "Curve CSV (default: stdout)");
  sim->add_option("--edges", spec.edges, "Final edge list of realization 0");
  sim->add_option("--events", spec.events, "Event log of realization 0");

  auto* sur = app.add_subcommand("surrogate", "Compare a text with shuffled surrogates");
  add_text_input(sur, spec);
  sur->add_option("--realizations", spec.realizations, "Number of shuffles")
      ->check(CLI::Range(2, 1 << 20));
  sur->add_option("--seed", spec.seed, "Base shuffle seed");
  sur->add_option("--pieces", surrogate_pieces, "Pieces for the original curve")
      ->check(CLI::PositiveNumber);
  add_aspl_options(sur, spec);
  sur->add_option("-o,--output", spec.output, "Original curve CSV (default: stdout)");
  sur->add_option("--surrogate-output", spec.surrogate_output, "Surrogate curve CSV (default: stdout)");

  auto* fit = app.add_subcommand("fit", "Heaps, degree-exponent and ASPL fits");
  fit->add_option("input,-i,--input", spec.input, "Text for the Heaps fit");
  fit->add_option("--opening-tokens", spec.opening_tokens, "Use only the first T tokens");
  fit->add_option("--tau-min", spec.tau_min, "Heaps fit range start");
  fit->add_option("--tau-max", spec.tau_max, "Heaps fit range end");
  fit->add_option("--curve", spec.curve_input, "Curve CSV for the closed-form ASPL fit");
  fit->add_option("--n-min", spec.n_min, "Smallest N included in the ASPL fit");
  fit->add_option("--er-alpha", spec.er_alpha, "Hold alpha fixed and fit the amplitude");
  fit->add_option("--edges-input", spec.edges_input, "Edge list for the degree exponent");
  fit->add_option("--kmin", spec.kmin, "Degree tail cutoff")->check(CLI::PositiveNumber);
  fit->add_option("--delta", spec.fit_delta, "Convert a Heaps exponent to alpha");
  fit->add_option("--gamma", spec.fit_gamma, "Saturation ASPL for a degree exponent");
  fit->add_option("-o,--output", spec.output, "Report file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  if (jobs > 0) omp_set_num_threads(jobs);

  try {
    spec.command = adjnet::parse_command(app.get_subcommands().front()->get_name());
    spec.model = adjnet::parse_model_kind(model);
    if (spec.command == adjnet::Command::Surrogate) spec.pieces = surrogate_pieces;
    adjnet::execute(spec, std::cout);
    std::cout.flush();
    if (!std::cout) throw adjnet::IoError("write to stdout failed");
  } catch (const adjnet::InvalidArgument& e) {
    return report(e, kInvalid, "invalid argument");
  } catch (const adjnet::CorruptStream& e) {
    return report(e, kInvalid, "corrupt input");
  } catch (const adjnet::IoError& e) {
    return report(e, kIo, "i/o error");
  } catch (const adjnet::InsufficientData& e) {
    return report(e, kInsufficient, "insufficient data");
  } catch (const std::exception& e) {
    return report(e, kInternal, "internal error");
  }
  return kOk;
}
