#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adjnet/aspl.hpp"
#include "adjnet/graph.hpp"
#include "adjnet/tokenizer.hpp"

namespace adjnet {

/// Vocabulary growth N(tau) ~ prefactor * tau^delta over a declared range.
struct HeapsFit {
  double delta = 0.0;
  double prefactor = 0.0;
  std::size_t tau_min = 0;
  std::size_t tau_max = 0;
  std::size_t points = 0;
  double residual = 0.0;  // RMS of the log-log fit
};

/// Number of distinct words after each prefix length 1..tau.
std::vector<std::size_t> vocabulary_growth(const TokenStream& ts);

/// Least-squares slope of log N(tau) against log tau, sampled at `samples`
/// log-spaced prefix lengths in [tau_min, tau_max]. Needs at least 20
/// distinct sample points.
HeapsFit fit_heaps(const TokenStream& ts, std::size_t tau_min, std::size_t tau_max,
                   std::size_t samples = 50);
HeapsFit fit_heaps(const std::vector<std::size_t>& vocab_growth, std::size_t tau_min,
                   std::size_t tau_max, std::size_t samples = 50);

/// Acceleration exponent matching a Heaps exponent: alpha = 1/delta - 1.
double alpha_from_delta(double delta);
double delta_from_alpha(double alpha);

/// Asymptotic ASPL of scale-free networks with 2 < gamma < 3:
/// 1/2 + 2/(3 - gamma). Returns +inf within 1e-12 of the pole.
double scale_free_aspl_limit(double gamma);

/// L(N) ~ A ln N / (ln(c0/(alpha+1)) + alpha ln N) over the declining phase.
///
/// Only two combinations of (A, c0, alpha) are identifiable from a curve, so
/// one of A or alpha must be held fixed (A = 1 by default).
struct ErFit {
  double amplitude = 1.0;
  double c0 = 0.0;
  double alpha = 0.0;
  double residual = 0.0;  // RMS in L
  std::size_t points = 0;
  bool poor_fit = false;
  std::string note;
};

struct ErFitOptions {
  std::size_t n_min = 1000;
  std::optional<double> fixed_alpha;  // when set, A is fitted instead
  double fixed_amplitude = 1.0;
};

/// Throws InsufficientData with fewer than 10 points at N >= n_min.
ErFit fit_er_approx(const AsplCurve& curve, const ErFitOptions& options = {});

/// The closed form itself, for synthesizing curves.
double er_approx(double n, double amplitude, double c0, double alpha);

void write_report(std::ostream& os, const HeapsFit& fit);
void write_report(std::ostream& os, const ErFit& fit);
void write_report(std::ostream& os, const DegreeFit& fit);

}  // namespace adjnet
