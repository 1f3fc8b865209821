#include "adjnet/run.hpp"

#include <charconv>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>

#include "adjnet/error.hpp"
#include "adjnet/fits.hpp"
#include "adjnet/pipeline.hpp"
#include "adjnet/tokenizer.hpp"

namespace adjnet {
namespace {

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw InvalidArgument("header field " + key + "='" + text + "' is not a number");
  }
  return value;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  return os;
}

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

TokenStream load_text(const RunSpec& spec) {
  if (spec.input.empty()) throw InvalidArgument("--input is required for " + to_string(spec.command));
  auto ts = tokenize(read_file(spec.input));
  if (spec.opening_tokens > 0) ts = prefix(ts, spec.opening_tokens);
  return ts;
}

// Writes to `path` when given, otherwise to `fallback`.
template <class Body>
void emit_file(const std::string& path, std::ostream& fallback, const RunSpec& spec,
               const std::vector<std::string>& extra, Body&& body) {
  auto write = [&](std::ostream& os) {
    write_header(os, spec);
    for (const auto& line : extra) os << "# " << line << '\n';
    body(os);
  };
  if (path.empty()) {
    write(fallback);
  } else {
    auto os = open_output(path);
    write(os);
    if (!os) throw IoError("write to '" + path + "' failed");
  }
}

std::vector<std::string> diagnostic_lines(const GrowthDiagnostics& d) {
  return {"diag.intra_attempted=" + std::to_string(d.intra_attempted),
          "diag.intra_skipped=" + std::to_string(d.intra_skipped),
          "diag.rewire_attempted=" + std::to_string(d.rewire_attempted),
          "diag.rewire_skipped=" + std::to_string(d.rewire_skipped),
          "diag.sh_edge_redraws=" + std::to_string(d.sh_edge_redraws),
          "diag.sh_edge_fallbacks=" + std::to_string(d.sh_edge_fallbacks),
          "diag.sh_edge_skipped=" + std::to_string(d.sh_edge_skipped)};
}

Graph read_edge_list(const std::string& path) {
  std::istringstream is(read_file(path));
  Graph g;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    long long i = -1, j = -1;
    if (!(row >> i >> j) || i < 0 || j < 0) throw InvalidArgument("malformed edge line: " + line);
    const auto top = static_cast<std::size_t>(std::max(i, j));
    while (g.node_count() <= top) g.add_node();
    if (i != j) g.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(j));
  }
  return g;
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::Tokenize:
      return "tokenize";
    case Command::Build:
      return "build";
    case Command::Curve:
      return "curve";
    case Command::Simulate:
      return "simulate";
    case Command::Surrogate:
      return "surrogate";
    case Command::Fit:
      return "fit";
  }
  return "unknown";
}

Command parse_command(const std::string& name) {
  for (auto c : {Command::Tokenize, Command::Build, Command::Curve, Command::Simulate,
                 Command::Surrogate, Command::Fit}) {
    if (to_string(c) == name) return c;
  }
  throw InvalidArgument("unknown command '" + name + "'");
}

std::size_t RunSpec::effective_n0() const {
  if (n0 != 0) return n0;
  return (model == ModelKind::Sh || model == ModelKind::ShNonlinear) ? 1 : 7;
}

AsplPolicy RunSpec::aspl_policy() const {
  AsplPolicy p;
  p.exact_threshold = exact_threshold;
  p.sampled_sources = sources;
  p.seed = seed;
  p.components = strict_components ? ComponentPolicy::Strict : ComponentPolicy::LargestComponent;
  return p;
}

DmParams RunSpec::dm_params() const {
  DmParams p;
  p.m = m;
  p.c0 = c0;
  p.alpha = alpha;
  p.n0 = effective_n0();
  p.rewire_r0 = rewire_r0;
  p.rewire_rho = rewire_rho;
  return p;
}

ShParams RunSpec::sh_params() const {
  ShParams p;
  p.p0 = p0;
  p.mu = mu;
  p.n0 = effective_n0();
  if (model == ModelKind::ShNonlinear) p.nonlinear = NonlinearPreference{c1, eta};
  return p;
}

HybridParams RunSpec::hybrid_params() const {
  HybridParams p;
  p.dm = dm_params();
  p.p0 = p0;
  p.mu = mu;
  return p;
}

void RunSpec::validate() const {
  if (sources == 0) throw InvalidArgument("sources must be >= 1");
  switch (command) {
    case Command::Simulate:
      if (realizations == 0) throw InvalidArgument("realizations must be >= 1");
      if (steps == 0 && target_n < 2) throw InvalidArgument("target_n must be >= 2");
      switch (model) {
        case ModelKind::Dm:
          dm_params().validate();
          break;
        case ModelKind::Sh:
        case ModelKind::ShNonlinear:
          sh_params().validate();
          break;
        case ModelKind::Hybrid:
          hybrid_params().validate();
          break;
      }
      break;
    case Command::Surrogate:
      if (realizations < 2) throw InvalidArgument("surrogate needs realizations >= 2");
      [[fallthrough]];
    case Command::Curve:
      if (pieces == 0) throw InvalidArgument("pieces must be >= 1");
      break;
    case Command::Fit:
      if (!input.empty() && (tau_min == 0 || tau_max == 0)) {
        throw InvalidArgument("Heaps fit needs an explicit range: --tau-min and --tau-max");
      }
      if (input.empty() && curve_input.empty() && edges_input.empty() && fit_delta == 0.0 &&
          fit_gamma == 0.0) {
        throw InvalidArgument("fit needs --input, --curve, --edges-input, --delta or --gamma");
      }
      break;
    default:
      break;
  }
}

std::vector<std::pair<std::string, std::string>> spec_fields(const RunSpec& s) {
  auto u = [](std::size_t v) { return std::to_string(v); };
  return {
      {"command", to_string(s.command)},
      {"model", to_string(s.model)},
      {"m", u(s.m)},
      {"c0", format_double(s.c0)},
      {"alpha", format_double(s.alpha)},
      {"n0", u(s.n0)},
      {"rewire_r0", format_double(s.rewire_r0)},
      {"rewire_rho", format_double(s.rewire_rho)},
      {"p0", format_double(s.p0)},
      {"mu", format_double(s.mu)},
      {"c1", format_double(s.c1)},
      {"eta", format_double(s.eta)},
      {"steps", u(s.steps)},
      {"target_n", u(s.target_n)},
      {"seed", std::to_string(s.seed)},
      {"realizations", u(s.realizations)},
      {"pieces", u(s.pieces)},
      {"opening_tokens", u(s.opening_tokens)},
      {"prefix_n", u(s.prefix_n)},
      {"schedule", s.schedule},
      {"exact_threshold", u(s.exact_threshold)},
      {"sources", u(s.sources)},
      {"strict_components", s.strict_components ? "true" : "false"},
      {"tau_min", u(s.tau_min)},
      {"tau_max", u(s.tau_max)},
      {"kmin", u(s.kmin)},
      {"n_min", u(s.n_min)},
      {"er_alpha", format_double(s.er_alpha)},
      {"fit_delta", format_double(s.fit_delta)},
      {"fit_gamma", format_double(s.fit_gamma)},
      {"input", s.input},
      {"curve_input", s.curve_input},
      {"edges_input", s.edges_input},
      {"output", s.output},
      {"surrogate_output", s.surrogate_output},
      {"edges", s.edges},
      {"vocab", s.vocab},
      {"tokens", s.tokens},
      {"events", s.events},
  };
}

RunSpec spec_from_fields(const std::map<std::string, std::string>& f) {
  RunSpec s;
  auto get = [&](const char* key, auto& target) {
    auto it = f.find(key);
    if (it == f.end()) return;
    using T = std::decay_t<decltype(target)>;
    if constexpr (std::is_same_v<T, std::string>) {
      target = it->second;
    } else if constexpr (std::is_same_v<T, bool>) {
      if (it->second != "true" && it->second != "false") {
        throw InvalidArgument(std::string("header field ") + key + " must be true/false");
      }
      target = it->second == "true";
    } else {
      target = parse_number<T>(key, it->second);
    }
  };
  if (auto it = f.find("command"); it != f.end()) s.command = parse_command(it->second);
  if (auto it = f.find("model"); it != f.end()) s.model = parse_model_kind(it->second);
  get("m", s.m);
  get("c0", s.c0);
  get("alpha", s.alpha);
  get("n0", s.n0);
  get("rewire_r0", s.rewire_r0);
  get("rewire_rho", s.rewire_rho);
  get("p0", s.p0);
  get("mu", s.mu);
  get("c1", s.c1);
  get("eta", s.eta);
  get("steps", s.steps);
  get("target_n", s.target_n);
  get("seed", s.seed);
  get("realizations", s.realizations);
  get("pieces", s.pieces);
  get("opening_tokens", s.opening_tokens);
  get("prefix_n", s.prefix_n);
  get("schedule", s.schedule);
  get("exact_threshold", s.exact_threshold);
  get("sources", s.sources);
  get("strict_components", s.strict_components);
  get("tau_min", s.tau_min);
  get("tau_max", s.tau_max);
  get("kmin", s.kmin);
  get("n_min", s.n_min);
  get("er_alpha", s.er_alpha);
  get("fit_delta", s.fit_delta);
  get("fit_gamma", s.fit_gamma);
  get("input", s.input);
  get("curve_input", s.curve_input);
  get("edges_input", s.edges_input);
  get("output", s.output);
  get("surrogate_output", s.surrogate_output);
  get("edges", s.edges);
  get("vocab", s.vocab);
  get("tokens", s.tokens);
  get("events", s.events);
  return s;
}

void write_header(std::ostream& os, const RunSpec& spec) {
  os << "# adjnet " << kVersion << '\n';
  for (const auto& [key, value] : spec_fields(spec)) os << "# " << key << '=' << value << '\n';
}

RunSpec read_header(std::istream& is) {
  std::map<std::string, std::string> fields;
  std::string line;
  while (is.peek() == '#' && std::getline(is, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos || line.size() < 2) continue;
    fields[line.substr(2, eq - 2)] = line.substr(eq + 1);
  }
  return spec_from_fields(fields);
}

std::unique_ptr<GrowthModel> make_model(const RunSpec& spec, std::uint64_t seed) {
  switch (spec.model) {
    case ModelKind::Dm:
      return std::make_unique<DmModel>(spec.dm_params(), seed);
    case ModelKind::Sh:
    case ModelKind::ShNonlinear:
      return std::make_unique<ShModel>(spec.sh_params(), seed);
    case ModelKind::Hybrid:
      return std::make_unique<HybridModel>(spec.hybrid_params(), seed);
  }
  throw InvalidArgument("unknown model");
}

SimulationResult simulate(const RunSpec& spec, std::ostream* events_out) {
  spec.validate();
  GrowthLimits limits;
  std::size_t max_n = spec.target_n;
  if (spec.steps > 0) {
    limits.steps = spec.steps;
    max_n = spec.steps + spec.effective_n0();
  } else {
    limits.max_nodes = spec.target_n;
  }
  const auto schedule = parse_schedule(spec.schedule, max_n);

  const std::size_t count = spec.realizations;
  std::vector<AsplCurve> curves(count);
  std::vector<GrowthDiagnostics> diags(count);
  SimulationResult result;
  result.final_edges.resize(count);
  result.final_nodes.resize(count);
  std::exception_ptr failure;

  const auto signed_count = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t rr = 0; rr < signed_count; ++rr) {
    const auto r = static_cast<std::size_t>(rr);
    try {
      const std::uint64_t seed = spec.seed + r;
      auto model = make_model(spec, seed);
      AsplPolicy policy = spec.aspl_policy();
      policy.seed = seed;
      CurveTracker tracker(schedule, policy);
      EventSink sink = tracker.sink();
      if (r == 0 && events_out != nullptr) {
        sink = [&tracker, events_out](const GrowthEvent& ev, const Graph& g) {
          write_event(*events_out, ev);
          tracker.observe(ev, g);
        };
      }
      run_growth(*model, limits, sink);
      tracker.finish(model->graph());
      curves[r] = tracker.take();
      diags[r] = model->diagnostics();
      result.final_edges[r] = static_cast<double>(model->graph().edge_count());
      result.final_nodes[r] = static_cast<double>(model->graph().node_count());
      if (r == 0) result.first_graph = model->graph();
    } catch (...) {
#pragma omp critical(adjnet_simulate_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  result.curve = count == 1 ? std::move(curves[0]) : average_curves(curves);
  for (const auto& d : diags) {
    result.diagnostics.intra_attempted += d.intra_attempted;
    result.diagnostics.intra_skipped += d.intra_skipped;
    result.diagnostics.rewire_attempted += d.rewire_attempted;
    result.diagnostics.rewire_skipped += d.rewire_skipped;
    result.diagnostics.sh_edge_redraws += d.sh_edge_redraws;
    result.diagnostics.sh_edge_fallbacks += d.sh_edge_fallbacks;
    result.diagnostics.sh_edge_skipped += d.sh_edge_skipped;
  }
  return result;
}

void execute(const RunSpec& spec, std::ostream& out) {
  spec.validate();
  const auto policy = spec.aspl_policy();
  const std::vector<std::string> aspl_meta = {"aspl_mode=" + policy.describe()};

  switch (spec.command) {
    case Command::Tokenize: {
      const auto ts = load_text(spec);
      const std::vector<std::string> meta = {"tokens=" + std::to_string(ts.length()),
                                             "vocabulary=" + std::to_string(ts.vocabulary_size())};
      if (!spec.tokens.empty() || spec.vocab.empty()) {
        emit_file(spec.tokens, out, spec, meta, [&](std::ostream& os) { write_tokens(os, ts); });
      }
      if (!spec.vocab.empty()) {
        emit_file(spec.vocab, out, spec, meta, [&](std::ostream& os) { write_vocab_tsv(os, ts); });
      }
      break;
    }
    case Command::Build: {
      const auto ts = load_text(spec);
      std::optional<std::size_t> limit;
      if (spec.prefix_n > 0) limit = spec.prefix_n;
      const Graph g = adjacency_network(ts, limit);
      const std::vector<std::string> meta = {"nodes=" + std::to_string(g.node_count()),
                                             "edges=" + std::to_string(g.edge_count())};
      emit_file(spec.edges, out, spec, meta, [&](std::ostream& os) { write_edge_list(os, g); });
      if (!spec.vocab.empty()) {
        emit_file(spec.vocab, out, spec, meta, [&](std::ostream& os) {
          for (std::size_t i = 0; i < g.node_count(); ++i) {
            os << i << '\t' << ts.word(static_cast<TokenId>(i)) << '\n';
          }
        });
      }
      if (!spec.events.empty()) {
        emit_file(spec.events, out, spec, meta, [&](std::ostream& os) {
          AdjacencyBuilder builder;
          for (TokenId id : ts.ids()) {
            if (limit && id == builder.graph().node_count() &&
                builder.graph().node_count() >= *limit) {
              break;
            }
            builder.push(id, [&](const GrowthEvent& ev, const Graph&) { write_event(os, ev); });
          }
        });
      }
      break;
    }
    case Command::Curve: {
      const auto ts = load_text(spec);
      const auto schedule = parse_schedule(spec.schedule, ts.vocabulary_size());
      const AsplCurve curve = spec.pieces > 1 ? piece_ensemble(ts, spec.pieces, schedule, policy).mean
                                              : curve_for_text(ts, schedule, policy);
      if (curve.empty()) throw InsufficientData("no checkpoint was reached by any piece");
      emit_file(spec.output, out, spec, aspl_meta,
                [&](std::ostream& os) { write_curve_csv(os, curve); });
      break;
    }
    case Command::Simulate: {
      std::unique_ptr<std::ofstream> events;
      if (!spec.events.empty()) {
        events = std::make_unique<std::ofstream>(open_output(spec.events));
        write_header(*events, spec);
      }
      const auto result = simulate(spec, events.get());
      auto meta = aspl_meta;
      for (auto& line : diagnostic_lines(result.diagnostics)) meta.push_back(std::move(line));
      if (!spec.output.empty() || spec.edges.empty()) {
        emit_file(spec.output, out, spec, meta,
                  [&](std::ostream& os) { write_curve_csv(os, result.curve); });
      }
      if (!spec.edges.empty()) {
        emit_file(spec.edges, out, spec, meta,
                  [&](std::ostream& os) { write_edge_list(os, result.first_graph); });
      }
      break;
    }
    case Command::Surrogate: {
      const auto ts = load_text(spec);
      const auto schedule = parse_schedule(spec.schedule, ts.vocabulary_size());
      const auto cmp =
          surrogate_comparison(ts, spec.realizations, spec.seed, schedule, policy, spec.pieces);
      auto meta = aspl_meta;
      meta.push_back("curve=original");
      emit_file(spec.output, out, spec, meta,
                [&](std::ostream& os) { write_curve_csv(os, cmp.original); });
      meta.back() = "curve=surrogate";
      emit_file(spec.surrogate_output, out, spec, meta,
                [&](std::ostream& os) { write_curve_csv(os, cmp.surrogate); });
      break;
    }
    case Command::Fit: {
      std::ostringstream report;
      if (!spec.input.empty()) write_report(report, fit_heaps(load_text(spec), spec.tau_min, spec.tau_max));
      if (!spec.curve_input.empty()) {
        std::istringstream is(read_file(spec.curve_input));
        ErFitOptions options;
        options.n_min = spec.n_min;
        if (spec.er_alpha > 0.0) options.fixed_alpha = spec.er_alpha;
        write_report(report, fit_er_approx(read_curve_csv(is), options));
      }
      if (!spec.edges_input.empty()) {
        write_report(report, degree_exponent(read_edge_list(spec.edges_input), spec.kmin));
      }
      if (spec.fit_delta != 0.0) {
        report << "relation.delta=" << spec.fit_delta << '\n'
               << "relation.alpha=" << alpha_from_delta(spec.fit_delta) << '\n';
      }
      if (spec.fit_gamma != 0.0) {
        report << "saturation.gamma=" << spec.fit_gamma << '\n'
               << "saturation.l_infinity=" << scale_free_aspl_limit(spec.fit_gamma) << '\n';
      }
      emit_file(spec.output, out, spec, {}, [&](std::ostream& os) { os << report.str(); });
      break;
    }
  }
}

}  // namespace adjnet
