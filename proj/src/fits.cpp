#include "adjnet/fits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "adjnet/error.hpp"

namespace adjnet {
namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit fit;
  fit.slope = sxx > 0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += r * r;
  }
  fit.rms = std::sqrt(ss / n);
  return fit;
}

}  // namespace

std::vector<std::size_t> vocabulary_growth(const TokenStream& ts) {
  std::vector<std::size_t> out(ts.length());
  std::size_t distinct = 0;
  const auto ids = ts.ids();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] == distinct) ++distinct;  // ids are first-appearance ordered
    out[i] = distinct;
  }
  return out;
}

HeapsFit fit_heaps(const std::vector<std::size_t>& growth, std::size_t tau_min,
                   std::size_t tau_max, std::size_t samples) {
  if (tau_min < 1 || tau_min >= tau_max || tau_max > growth.size()) {
    throw InvalidArgument("Heaps fit range [" + std::to_string(tau_min) + ", " +
                          std::to_string(tau_max) + "] is not inside [1, " +
                          std::to_string(growth.size()) + "]");
  }
  std::vector<double> log_tau;
  std::vector<double> log_n;
  const double lo = std::log(static_cast<double>(tau_min));
  const double hi = std::log(static_cast<double>(tau_max));
  std::size_t previous = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double frac = samples > 1 ? static_cast<double>(k) / static_cast<double>(samples - 1) : 0.0;
    auto tau = static_cast<std::size_t>(std::llround(std::exp(lo + frac * (hi - lo))));
    tau = std::clamp(tau, tau_min, tau_max);
    if (tau == previous) continue;
    previous = tau;
    log_tau.push_back(std::log(static_cast<double>(tau)));
    log_n.push_back(std::log(static_cast<double>(growth[tau - 1])));
  }
  if (log_tau.size() < 20) {
    throw InsufficientData("Heaps fit has " + std::to_string(log_tau.size()) +
                           " distinct sample points in range, need 20");
  }
  const auto line = least_squares(log_tau, log_n);
  HeapsFit fit;
  fit.delta = line.slope;
  fit.prefactor = std::exp(line.intercept);
  fit.tau_min = tau_min;
  fit.tau_max = tau_max;
  fit.points = log_tau.size();
  fit.residual = line.rms;
  return fit;
}

HeapsFit fit_heaps(const TokenStream& ts, std::size_t tau_min, std::size_t tau_max,
                   std::size_t samples) {
  return fit_heaps(vocabulary_growth(ts), tau_min, tau_max, samples);
}

double alpha_from_delta(double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) throw InvalidArgument("delta must satisfy 0 < delta <= 1");
  return 1.0 / delta - 1.0;
}

double delta_from_alpha(double alpha) {
  if (!(alpha >= 0.0)) throw InvalidArgument("alpha must be >= 0");
  return 1.0 / (alpha + 1.0);
}

double scale_free_aspl_limit(double gamma) {
  if (!(gamma > 2.0 && gamma < 3.0)) {
    throw InvalidArgument("saturation limit defined only for 2 < gamma < 3");
  }
  const double gap = 3.0 - gamma;
  if (gap < 1e-12) return std::numeric_limits<double>::infinity();
  return 0.5 + 2.0 / gap;
}

double er_approx(double n, double amplitude, double c0, double alpha) {
  const double x = std::log(n);
  return amplitude * x / (std::log(c0 / (alpha + 1.0)) + alpha * x);
}

ErFit fit_er_approx(const AsplCurve& curve, const ErFitOptions& options) {
  std::vector<double> x, l;
  for (const auto& p : curve.points) {
    if (p.n >= options.n_min && p.n >= 2) {
      x.push_back(std::log(static_cast<double>(p.n)));
      l.push_back(p.l);
    }
  }
  if (x.size() < 10) {
    throw InsufficientData("ER fit needs >= 10 points with N >= " + std::to_string(options.n_min) +
                           ", got " + std::to_string(x.size()));
  }

  ErFit fit;
  fit.points = x.size();
  auto finish_poor = [&](const std::string& why) {
    fit.poor_fit = true;
    fit.note = why;
    double mean = 0;
    for (double v : l) mean += v;
    mean /= static_cast<double>(l.size());
    double ss = 0;
    for (double v : l) ss += (v - mean) * (v - mean);
    fit.residual = std::sqrt(ss / static_cast<double>(l.size()));
    return fit;
  };

  const auto trend = least_squares(x, l);
  double scale = 0;
  for (double v : l) scale = std::max(scale, std::abs(v));
  if (!(trend.slope < -1e-9 * std::max(scale, 1.0))) {
    return finish_poor("curve is not declining over N >= n_min");
  }

  // 1/L = a/ln N + b with a = ln(c0/(alpha+1))/A and b = alpha/A.
  std::vector<double> u(x.size()), y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    u[i] = 1.0 / x[i];
    y[i] = 1.0 / l[i];
  }
  const auto lin = least_squares(u, y);
  double a = lin.slope;
  double b = lin.intercept;

  auto rms_of = [&](double aa, double bb) {
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double denom = aa * u[i] + bb;
      if (!(denom > 0)) return std::numeric_limits<double>::infinity();
      const double r = l[i] - 1.0 / denom;
      ss += r * r;
    }
    return std::sqrt(ss / static_cast<double>(x.size()));
  };

  // Gauss-Newton on the residuals in L with step halving.
  double current = rms_of(a, b);
  for (int iter = 0; iter < 50 && std::isfinite(current); ++iter) {
    double jaa = 0, jab = 0, jbb = 0, ga = 0, gb = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double model = 1.0 / (a * u[i] + b);
      const double r = l[i] - model;
      const double da = -u[i] * model * model;
      const double db = -model * model;
      jaa += da * da;
      jab += da * db;
      jbb += db * db;
      ga += da * r;
      gb += db * r;
    }
    const double det = jaa * jbb - jab * jab;
    if (std::abs(det) < 1e-300) break;
    double step_a = (jbb * ga - jab * gb) / det;
    double step_b = (jaa * gb - jab * ga) / det;
    double trial = rms_of(a + step_a, b + step_b);
    int halvings = 0;
    while (!(trial < current) && halvings < 30) {
      step_a *= 0.5;
      step_b *= 0.5;
      trial = rms_of(a + step_a, b + step_b);
      ++halvings;
    }
    if (!(trial < current)) break;
    a += step_a;
    b += step_b;
    const double gain = current - trial;
    current = trial;
    if (gain < 1e-15) break;
  }
  if (!std::isfinite(current)) return finish_poor("fitted denominator is not positive");

  if (options.fixed_alpha) {
    fit.alpha = *options.fixed_alpha;
    if (!(b > 0)) return finish_poor("fitted slope term is not positive");
    fit.amplitude = fit.alpha / b;
  } else {
    fit.amplitude = options.fixed_amplitude;
    fit.alpha = fit.amplitude * b;
  }
  const double log_ratio = a * fit.amplitude;
  fit.c0 = (fit.alpha + 1.0) * std::exp(log_ratio);
  fit.residual = current;
  if (!(fit.alpha > 0)) {
    fit.poor_fit = true;
    fit.note = "fitted alpha is not positive";
  }
  return fit;
}

void write_report(std::ostream& os, const HeapsFit& fit) {
  os << "heaps.delta=" << fit.delta << '\n'
     << "heaps.prefactor=" << fit.prefactor << '\n'
     << "heaps.tau_min=" << fit.tau_min << '\n'
     << "heaps.tau_max=" << fit.tau_max << '\n'
     << "heaps.points=" << fit.points << '\n'
     << "heaps.residual=" << fit.residual << '\n'
     << "heaps.alpha_equivalent=" << (fit.delta > 0 && fit.delta <= 1 ? alpha_from_delta(fit.delta)
                                                                      : std::nan(""))
     << '\n';
}

void write_report(std::ostream& os, const ErFit& fit) {
  os << "er.amplitude=" << fit.amplitude << '\n'
     << "er.c0=" << fit.c0 << '\n'
     << "er.alpha=" << fit.alpha << '\n'
     << "er.residual=" << fit.residual << '\n'
     << "er.points=" << fit.points << '\n'
     << "er.poor_fit=" << (fit.poor_fit ? "true" : "false") << '\n';
  if (!fit.note.empty()) os << "er.note=" << fit.note << '\n';
}

void write_report(std::ostream& os, const DegreeFit& fit) {
  os << "degree.gamma=" << fit.gamma << '\n'
     << "degree.kmin=" << fit.kmin << '\n'
     << "degree.tail_nodes=" << fit.tail_nodes << '\n'
     << "degree.log_likelihood=" << fit.log_likelihood << '\n'
     << "degree.poor_fit=" << (fit.poor_fit ? "true" : "false") << '\n';
  if (fit.gamma > 2.0 && fit.gamma < 3.0) {
    os << "degree.aspl_saturation=" << scale_free_aspl_limit(fit.gamma) << '\n';
  }
}

}  // namespace adjnet
