#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "adjnet/aspl.hpp"
#include "adjnet/error.hpp"

namespace adjnet {

AsplEstimate AsplPolicy::measure(const Graph& g) const {
  if (g.node_count() <= exact_threshold) return aspl_exact(g, components);
  // Per-size seed so a checkpoint's estimate does not depend on which other
  // checkpoints were measured before it.
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(g.node_count())};
  std::uint64_t derived = 0;
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  derived = (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
  return aspl_sampled(g, sampled_sources, derived, components);
}

std::string AsplPolicy::describe() const {
  std::ostringstream os;
  os << "exact<=" << exact_threshold << ",sampled(" << sampled_sources << ")"
     << (components == ComponentPolicy::Strict ? ",strict" : ",lcc");
  return os.str();
}

std::optional<CurvePoint> AsplCurve::at(std::size_t n) const {
  auto it = std::lower_bound(points.begin(), points.end(), n,
                             [](const CurvePoint& p, std::size_t v) { return p.n < v; });
  if (it == points.end() || it->n != n) return std::nullopt;
  return *it;
}

std::vector<std::size_t> default_schedule(std::size_t max_n) {
  std::vector<std::size_t> out;
  for (std::size_t n = 2; n <= std::min<std::size_t>(100, max_n); ++n) out.push_back(n);
  if (max_n <= 100) return out;
  std::size_t n = 100;
  while (true) {
    const auto grown = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * 1.05));
    n = std::max(grown, n + 1);
    if (n >= max_n) break;
    out.push_back(n);
  }
  out.push_back(max_n);
  return out;
}

std::vector<std::size_t> parse_schedule(const std::string& spec, std::size_t max_n) {
  if (spec.empty() || spec == "default") return default_schedule(max_n);
  std::vector<std::size_t> out;
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &pos);
    } catch (const std::exception&) {
      throw InvalidArgument("schedule entry '" + item + "' is not a node count");
    }
    if (pos != item.size()) throw InvalidArgument("schedule entry '" + item + "' is not a node count");
    if (!out.empty() && v <= out.back()) {
      throw InvalidArgument("schedule must be strictly increasing");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

CurveTracker::CurveTracker(std::vector<std::size_t> schedule, AsplPolicy policy)
    : schedule_(std::move(schedule)), policy_(policy) {
  if (!std::is_sorted(schedule_.begin(), schedule_.end()) ||
      std::adjacent_find(schedule_.begin(), schedule_.end()) != schedule_.end()) {
    throw InvalidArgument("checkpoint schedule must be strictly increasing");
  }
  curve_.mode = policy_.describe();
}

void CurveTracker::maybe_measure(const Graph& g) {
  const std::size_t n = g.node_count();
  while (next_ < schedule_.size() && schedule_[next_] < n) ++next_;
  if (next_ < schedule_.size() && schedule_[next_] == n && n >= 2) {
    const auto est = policy_.measure(g);
    curve_.points.push_back({n, est.mean, est.std_error, 1});
    ++next_;
  }
}

void CurveTracker::observe(const GrowthEvent& ev, const Graph& before) {
  if (std::holds_alternative<NodeAdded>(ev)) maybe_measure(before);
}

void CurveTracker::finish(const Graph& g) { maybe_measure(g); }

AsplCurve track_growth(std::span<const GrowthEvent> events, std::vector<std::size_t> schedule,
                       const AsplPolicy& policy, Graph start) {
  CurveTracker tracker(std::move(schedule), policy);
  for (const auto& ev : events) {
    tracker.observe(ev, start);
    apply_event(start, ev);
  }
  tracker.finish(start);
  return tracker.take();
}

AsplCurve average_curves(std::span<const AsplCurve> curves) {
  if (curves.empty()) throw InvalidArgument("average_curves needs at least one curve");
  std::map<std::size_t, std::vector<double>> by_n;
  for (const auto& c : curves) {
    for (const auto& p : c.points) by_n[p.n].push_back(p.l);
  }
  AsplCurve out;
  out.mode = curves.front().mode;
  for (const auto& [n, values] : by_n) {
    const double count = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / count;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double sem = values.size() > 1 ? std::sqrt(ss / (count - 1.0)) / std::sqrt(count) : 0.0;
    out.points.push_back({n, mean, sem, values.size()});
  }
  return out;
}

void write_curve_csv(std::ostream& os, const AsplCurve& curve) {
  os << "N,L,stderr,realizations\n";
  const auto flags = os.flags();
  const auto precision = os.precision();
  os << std::fixed << std::setprecision(6);
  for (const auto& p : curve.points) {
    os << p.n << ',' << p.l << ',' << p.std_error << ',' << p.realizations << '\n';
  }
  os.flags(flags);
  os.precision(precision);
}

AsplCurve read_curve_csv(std::istream& is) {
  AsplCurve curve;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line.rfind("N,L,stderr,realizations", 0) != 0) {
        throw InvalidArgument("curve CSV header must be N,L,stderr,realizations");
      }
      header_seen = true;
      continue;
    }
    std::istringstream row(line);
    CurvePoint p;
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(row >> p.n >> c1 >> p.l >> c2 >> p.std_error >> c3 >> p.realizations) || c1 != ',' ||
        c2 != ',' || c3 != ',') {
      throw InvalidArgument("malformed curve row: " + line);
    }
    curve.points.push_back(p);
  }
  return curve;
}

}  // namespace adjnet
