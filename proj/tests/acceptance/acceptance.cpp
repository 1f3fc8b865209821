// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any FAIL.
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "adjnet/aspl.hpp"
#include "adjnet/error.hpp"
#include "adjnet/fits.hpp"
#include "adjnet/growth.hpp"
#include "adjnet/pipeline.hpp"
#include "adjnet/run.hpp"

using namespace adjnet;

namespace {

enum class Verdict { Pass, Fail, Skip };

struct Outcome {
  Verdict verdict;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

std::string join_schedule(std::vector<std::size_t> s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  std::string out;
  for (auto n : s) out += (out.empty() ? "" : ",") + std::to_string(n);
  return out;
}

std::vector<std::size_t> coarse_schedule(std::size_t max_n, double ratio) {
  std::vector<std::size_t> s;
  for (std::size_t n = 2; n <= 100; ++n) s.push_back(n);
  for (double n = 100 * ratio; n < static_cast<double>(max_n); n *= ratio) {
    s.push_back(static_cast<std::size_t>(std::ceil(n)));
  }
  s.push_back(max_n);
  return s;
}

double combined_sem(const CurvePoint& a, const CurvePoint& b) {
  return std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
}

// 1. Closed-form ASPL of chains, stars and complete graphs.
Outcome analytic_aspl() {
  const auto start = Clock::now();
  double worst = 0.0;
  for (std::size_t n = 2; n <= 200; ++n) {
    worst = std::max(worst, std::abs(aspl_exact(Graph::chain(n)).mean - oracle::chain_aspl(n)));
    worst = std::max(worst, std::abs(aspl_exact(oracle::star(n)).mean - oracle::star_aspl(n)));
    worst = std::max(worst, std::abs(aspl_exact(oracle::complete(n)).mean - 1.0));
  }
  const double elapsed = seconds_since(start);
  const bool ok = worst <= 1e-12 && elapsed < 1.0;
  return {ok ? Verdict::Pass : Verdict::Fail,
          fmt("max |error| %.3g (tol 1e-12), %.3f s (limit 1 s)", worst, elapsed)};
}

// 2. Pairwise agreement with Floyd-Warshall on random connected graphs.
Outcome floyd_warshall_equivalence() {
  const auto start = Clock::now();
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> size(2, 50);
  std::size_t mismatched_pairs = 0, pairs = 0;
  double worst_mean = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const double density = 0.5 * (trial % 20) / 19.0;
    const auto g = oracle::random_connected(size(rng), density, rng);
    const auto fw = oracle::floyd_warshall(g);
    const auto csr = measurable_component(g, ComponentPolicy::Strict);
    for (std::uint32_t s = 0; s < g.node_count(); ++s) {
      const auto row = bfs_distances(csr, s);
      for (std::size_t t = 0; t < row.size(); ++t) {
        ++pairs;
        if (static_cast<std::int64_t>(row[t]) != fw[s][t]) ++mismatched_pairs;
      }
    }
    worst_mean = std::max(worst_mean, std::abs(aspl_exact(g).mean - oracle::fw_aspl(g)));
  }
  const double elapsed = seconds_since(start);
  const bool ok = mismatched_pairs == 0 && worst_mean <= 1e-12 && elapsed < 10.0;
  return {ok ? Verdict::Pass : Verdict::Fail,
          fmt("%zu/%zu pair distances differ, max |mean error| %.3g, %.2f s (limit 10 s)",
              mismatched_pairs, pairs, worst_mean, elapsed)};
}

// 3. Linear preferential limit: degree exponent near 3 and a growing L(N).
Outcome ba_limit() {
  const auto start = Clock::now();
  RunSpec spec;
  spec.model = ModelKind::Dm;
  spec.m = 2;
  spec.c0 = 0.0;
  spec.target_n = 10000;
  spec.realizations = 10;
  spec.seed = 11;
  const auto result = simulate(spec);

  std::size_t drops = 0, checked = 0;
  const CurvePoint* previous = nullptr;
  for (const auto& p : result.curve.points) {
    if (p.n < 100) continue;
    if (previous != nullptr) {
      ++checked;
      if (!(p.l > previous->l)) ++drops;
    }
    previous = &p;
  }

  // Tail cutoff 4m. At kmin = m the small-k curvature of the degree
  // distribution pulls the estimate down to about 2.5.
  const std::size_t kmin = 4 * spec.m;
  std::vector<double> gammas(spec.realizations), gammas_k2(spec.realizations);
  const auto dm = spec.dm_params();
  const auto count = static_cast<std::int64_t>(spec.realizations);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t r = 0; r < count; ++r) {
    const auto g = replay(dm_grow(dm, spec.target_n - dm.n0, spec.seed + static_cast<std::uint64_t>(r)));
    gammas[static_cast<std::size_t>(r)] = degree_exponent(g, kmin).gamma;
    gammas_k2[static_cast<std::size_t>(r)] = degree_exponent(g, spec.m).gamma;
  }
  double gamma = 0.0, gamma_k2 = 0.0;
  for (std::size_t r = 0; r < gammas.size(); ++r) {
    gamma += gammas[r] / static_cast<double>(gammas.size());
    gamma_k2 += gammas_k2[r] / static_cast<double>(gammas.size());
  }
  const bool ok = gamma >= 2.7 && gamma <= 3.3 && drops == 0 && checked > 0;
  return {ok ? Verdict::Pass : Verdict::Fail,
          fmt("mean gamma %.3f at kmin=%zu (range [2.7, 3.3]; kmin=%zu gives %.3f), "
              "%zu/%zu non-increasing steps for N>=100, %.0f s",
              gamma, kmin, spec.m, gamma_k2, drops, checked, seconds_since(start))};
}

// 4. Accelerated growth edge count against the summed rate.
Outcome edge_count_law() {
  const auto start = Clock::now();
  DmParams p;
  p.m = 2;
  p.c0 = 0.05;
  p.alpha = 1.0;
  p.n0 = 7;
  const std::size_t steps = 10000;
  const int runs = 50;
  std::vector<double> edges(runs);
  std::vector<std::size_t> attempted(runs), skipped(runs);
#pragma omp parallel for schedule(dynamic, 1)
  for (int r = 0; r < runs; ++r) {
    DmModel model(p, 1000 + static_cast<std::uint64_t>(r));
    run_growth(model, GrowthLimits{steps}, {});
    edges[r] = static_cast<double>(model.graph().edge_count());
    attempted[r] = model.diagnostics().intra_attempted;
    skipped[r] = model.diagnostics().intra_skipped;
  }
  double mean = 0.0;
  std::size_t total_attempted = 0, total_skipped = 0;
  for (int r = 0; r < runs; ++r) {
    mean += edges[r] / runs;
    total_attempted += attempted[r];
    total_skipped += skipped[r];
  }
  const double expected = oracle::dm_edges(p.n0, p.m, p.c0, p.alpha, steps);
  const double rel = std::abs(mean - expected) / expected;
  const double skip_rate =
      total_attempted ? static_cast<double>(total_skipped) / static_cast<double>(total_attempted) : 0.0;
  const bool ok = rel < 0.02 && skip_rate < 0.001;
  return {ok ? Verdict::Pass : Verdict::Fail,
          fmt("mean E %.1f vs oracle %.1f (rel %.2e, tol 2%%), skipped %zu/%zu intra edges "
              "(%.2e, tol 1e-3), %.0f s",
              mean, expected, rel, total_skipped, total_attempted, skip_rate, seconds_since(start))};
}

struct SweepPoint {
  double value;
  CurvePoint at_n;
};

std::vector<SweepPoint> sweep(const std::vector<double>& values,
                              const std::function<void(RunSpec&, double)>& set) {
  std::vector<SweepPoint> out;
  for (double v : values) {
    RunSpec spec;
    spec.m = 2;
    spec.target_n = 10000;
    spec.realizations = 10;
    spec.seed = 500;
    spec.schedule = "10000";
    set(spec, v);
    const auto curve = simulate(spec).curve;
    out.push_back({v, *curve.at(10000)});
  }
  return out;
}

bool strictly_decreasing_3sem(const std::vector<SweepPoint>& s, std::string& text) {
  bool ok = true;
  for (std::size_t i = 0; i < s.size(); ++i) {
    text += fmt("%s%g:%.3f+-%.3f", i ? " " : "", s[i].value, s[i].at_n.l, s[i].at_n.std_error);
    if (i > 0 && !(s[i - 1].at_n.l - s[i].at_n.l > 3.0 * combined_sem(s[i - 1].at_n, s[i].at_n))) ok = false;
  }
  return ok;
}

// 5. L(10^4) decreases with alpha and with c0.
Outcome sweep_orderings() {
  const auto start = Clock::now();
  const auto by_alpha = sweep({0.5, 0.6, 0.7, 0.8, 0.9, 1.0}, [](RunSpec& s, double a) {
    s.c0 = 0.01;
    s.alpha = a;
  });
  const auto by_c0 = sweep({0.0005, 0.001, 0.005, 0.01, 0.05, 0.1}, [](RunSpec& s, double c) {
    s.c0 = c;
    s.alpha = 0.8;
  });
  std::string a_text, c_text;
  const bool a_ok = strictly_decreasing_3sem(by_alpha, a_text);
  const bool c_ok = strictly_decreasing_3sem(by_c0, c_text);
  return {a_ok && c_ok ? Verdict::Pass : Verdict::Fail,
          "alpha (c0=0.01) [" + a_text + "] " + (a_ok ? "ordered" : "NOT ordered") +
              "; c0 (alpha=0.8) [" + c_text + "] " + (c_ok ? "ordered" : "NOT ordered") +
              fmt("; 3 SEM, %.0f s", seconds_since(start))};
}

// 6. Simon-Heaps growth rises and then saturates.
Outcome sh_saturation() {
  const auto start = Clock::now();
  RunSpec spec;
  spec.model = ModelKind::Sh;
  spec.p0 = 1.0;
  spec.mu = 0.075;
  spec.target_n = 10000;
  spec.realizations = 20;
  spec.seed = 600;
  auto schedule = default_schedule(10000);
  schedule.push_back(5000);
  spec.schedule = join_schedule(schedule);
  const auto curve = simulate(spec).curve;

  // Non-decreasing up to N = 1000: no earlier checkpoint exceeds a later one
  // by more than 3 combined SEM.
  std::size_t violations = 0;
  double worst = 0.0;
  const auto& pts = curve.points;
  for (std::size_t j = 0; j < pts.size() && pts[j].n <= 1000; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const double sem = combined_sem(pts[i], pts[j]);
      const double drop = pts[i].l - pts[j].l;
      if (drop > 3.0 * sem) ++violations;
      if (sem > 0) worst = std::max(worst, drop / sem);
    }
  }
  const auto half = curve.at(5000);
  const auto full = curve.at(10000);
  const double change = std::abs(full->l - half->l) / half->l;
  const bool ok = violations == 0 && change < 0.05;
  return {ok ? Verdict::Pass : Verdict::Fail,
          fmt("%zu significant decreases up to N=1000 (largest drop %.2f SEM, limit 3); "
              "L(5000)=%.3f L(10000)=%.3f change %.2f%% (limit 5%%), %.0f s",
              violations, worst, half->l, full->l, 100.0 * change, seconds_since(start))};
}

// 7. Hybrid growth peaks early and declines.
Outcome hybrid_shape() {
  const auto start = Clock::now();
  RunSpec spec;
  spec.model = ModelKind::Hybrid;
  spec.m = 2;
  spec.c0 = 0.05;
  spec.alpha = 1.0;
  spec.p0 = 1.0;
  spec.mu = 0.075;
  spec.steps = 10000;
  spec.realizations = 20;
  spec.seed = 7;
  spec.sources = 128;
  auto schedule = coarse_schedule(10000 + spec.effective_n0(), 1.1);
  schedule.push_back(10000);
  spec.schedule = join_schedule(schedule);
  const auto curve = simulate(spec).curve;
  const auto peak = std::max_element(curve.points.begin(), curve.points.end(),
                                     [](const auto& a, const auto& b) { return a.l < b.l; });
  const auto end = curve.at(10000);
  const bool ok = peak->n < 1000 && end->l < 0.6 * peak->l;
  return {ok ? Verdict::Pass : Verdict::Fail,
          fmt("peak L=%.3f at N=%zu (must be < 1000); L(10000)=%.3f = %.1f%% of peak (limit 60%%), %.0f s",
              peak->l, peak->n, end->l, 100.0 * end->l / peak->l, seconds_since(start))};
}

// 8. Word-adjacency network of a real novel and its reshuffled surrogates.
Outcome empirical_text() {
  const char* path = std::getenv("ADJNET_CORPUS");
  if (path == nullptr || *path == '\0') {
    return {Verdict::Skip, "no corpus supplied; set ADJNET_CORPUS to a public-domain novel (>= 3e5 tokens)"};
  }
  const auto start = Clock::now();
  std::ifstream in(path, std::ios::binary);
  if (!in) return {Verdict::Fail, std::string("cannot read ") + path};
  std::ostringstream text;
  text << in.rdbuf();
  const auto ts = tokenize(text.str());
  if (ts.length() < 300000) {
    return {Verdict::Skip, fmt("corpus has %zu tokens, fewer than 3e5", ts.length())};
  }
  if (ts.vocabulary_size() < 10000) {
    return {Verdict::Fail, fmt("corpus has only %zu distinct words; N=10^4 is never reached",
                               ts.vocabulary_size())};
  }
  const auto original = curve_for_text(ts, default_schedule(10000));
  const double l_end = original.at(10000)->l;

  std::vector<std::size_t> window;
  for (auto n : default_schedule(1000))
    if (n >= 100) window.push_back(n);
  const auto cmp = surrogate_comparison(ts, 20, 800, window);
  std::size_t below = 0;
  for (const auto& sp : cmp.surrogate.points) {
    const double orig = cmp.original.at(sp.n)->l;
    if (orig - sp.l > 3.0 * sp.std_error) ++below;
  }
  const bool ok = l_end > 2.5 && l_end < 4.0 && below == 0;
  return {ok ? Verdict::Pass : Verdict::Fail,
          fmt("L(10000)=%.3f (range (2.5, 4.0)); surrogate significantly below original at "
              "%zu/%zu checkpoints in [100, 1000]; %zu tokens, %.0f s",
              l_end, below, cmp.surrogate.points.size(), ts.length(), seconds_since(start))};
}

// 9. Heaps exponent recovery and its conversion to alpha.
Outcome heaps_recovery() {
  std::string text;
  bool ok = alpha_from_delta(0.5) == 1.0;
  double worst = 0.0;
  for (double delta : {0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
    // vocabulary after tau tokens is exactly floor(tau^delta)
    const auto ts = TokenStream::from_words(
        oracle::heaps_stream(delta, 300000, 900 + static_cast<std::uint64_t>(delta * 10)));
    const auto fit = fit_heaps(ts, 100, ts.length());
    worst = std::max(worst, std::abs(fit.delta - delta));
    text += fmt(" %.1f->%.3f", delta, fit.delta);
  }
  ok = ok && worst <= 0.05;
  return {ok ? Verdict::Pass : Verdict::Fail,
          fmt("alpha_from_delta(0.5)=%.17g;", alpha_from_delta(0.5)) + text +
              fmt(" (max |error| %.3f, tol 0.05)", worst)};
}

std::string csv_body(const std::string& text) {
  std::istringstream is(text);
  std::string line, out;
  while (std::getline(is, line))
    if (line.empty() || line[0] != '#') out += line + '\n';
  return out;
}

std::string read_all(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 10. Same run configuration and seed, same bytes, whatever the thread count.
Outcome determinism() {
  const int saved_threads = omp_get_max_threads();
  std::size_t compared = 0, differing = 0;

  auto run_twice = [&](const RunSpec& spec, const std::vector<std::string>& files) {
    std::vector<std::string> bodies[2];
    const int threads[2] = {1, 4};
    for (int k = 0; k < 2; ++k) {
      omp_set_num_threads(threads[k]);
      std::ostringstream out;
      execute(spec, out);
      bodies[k].push_back(csv_body(out.str()));
      for (const auto& f : files) bodies[k].push_back(csv_body(read_all(f)));
    }
    for (std::size_t i = 0; i < bodies[0].size(); ++i) {
      ++compared;
      if (bodies[0][i] != bodies[1][i] || bodies[0][i].empty()) ++differing;
    }
  };

  for (auto kind : {ModelKind::Dm, ModelKind::Sh, ModelKind::ShNonlinear, ModelKind::Hybrid}) {
    RunSpec spec;
    spec.model = kind;
    spec.c0 = 0.05;
    spec.target_n = 2500;
    spec.realizations = 4;
    spec.seed = 77;
    spec.exact_threshold = 500;
    spec.sources = 64;
    run_twice(spec, {});
  }

  const auto dir = std::filesystem::temp_directory_path() / "adjnet_acceptance";
  std::filesystem::create_directories(dir);
  const auto text_path = dir / "text.txt";
  {
    std::ofstream out(text_path);
    std::mt19937_64 rng(5);
    std::geometric_distribution<int> rank(0.01);
    for (int i = 0; i < 40000; ++i) out << "w" << rank(rng) << (i % 17 == 16 ? ".\n" : " ");
  }
  RunSpec sur;
  sur.command = Command::Surrogate;
  sur.input = text_path.string();
  sur.realizations = 6;
  sur.pieces = 1;
  sur.seed = 3;
  sur.surrogate_output = (dir / "surrogate.csv").string();
  run_twice(sur, {sur.surrogate_output});
  omp_set_num_threads(saved_threads);
  std::filesystem::remove_all(dir);

  return {differing == 0 ? Verdict::Pass : Verdict::Fail,
          fmt("%zu/%zu CSV bodies differ between reruns at 1 and 4 threads", differing, compared)};
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const std::vector<Criterion> criteria = {
      {1, "analytic-aspl", analytic_aspl},
      {2, "floyd-warshall-equivalence", floyd_warshall_equivalence},
      {3, "preferential-limit", ba_limit},
      {4, "edge-count-law", edge_count_law},
      {5, "acceleration-orderings", sweep_orderings},
      {6, "simon-heaps-saturation", sh_saturation},
      {7, "hybrid-rise-and-decline", hybrid_shape},
      {8, "empirical-text", empirical_text},
      {9, "heaps-recovery", heaps_recovery},
      {10, "determinism", determinism},
  };

  // Optional arguments select criteria by number.
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {Verdict::Fail, std::string("exception: ") + e.what()};
    }
    const char* tag = o.verdict == Verdict::Pass ? "PASS" : o.verdict == Verdict::Fail ? "FAIL" : "SKIP";
    if (o.verdict == Verdict::Fail) ++failures;
    if (o.verdict == Verdict::Skip) std::cerr << "warning: criterion " << c.id << " skipped\n";
    std::cout << tag << "  AC" << c.id << "  " << c.name << ": " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
