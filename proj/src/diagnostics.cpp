#include "edgex/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include <boost/math/distributions/chi_squared.hpp>

#include "edgex/error.hpp"

namespace edgex {

GrowthTrace growth_trace(const StepAugmentedGraph& g) {
  GrowthTrace t;
  t.rows.reserve(g.num_steps());
  std::unordered_set<std::uint64_t> nodes;
  std::unordered_set<Edge, EdgeHash> distinct;
  Count mult = 0;
  auto ev = g.events().begin();
  for (Step n = 1; n <= g.num_steps(); ++n) {
    for (; ev != g.events().end() && ev->step == n; ++ev) {
      nodes.insert(ev->edge.u().value);
      nodes.insert(ev->edge.v().value);
      distinct.insert(ev->edge);
      mult += ev->multiplicity;
    }
    t.rows.push_back({n, nodes.size(), mult, distinct.size()});
  }
  return t;
}

void write_growth_csv(std::ostream& os, const GrowthTrace& t) {
  os << "step,active_nodes,edges_mult,edges_distinct\n";
  for (const auto& r : t.rows) {
    os << r.step << ',' << r.active_nodes << ',' << r.edges_mult << ',' << r.edges_distinct
       << '\n';
  }
}

ExponentEstimate fit_exponent(const GrowthTrace& t, EdgeCount count, Count min_nodes) {
  std::vector<double> xs;
  std::vector<double> ys;
  ExponentEstimate est;
  for (const auto& r : t.rows) {
    const Count e = count == EdgeCount::Multiplicity ? r.edges_mult : r.edges_distinct;
    if (r.active_nodes < min_nodes || e == 0) continue;
    if (xs.empty()) est.fit_range.first = r.step;
    est.fit_range.second = r.step;
    xs.push_back(std::log(static_cast<double>(r.active_nodes)));
    ys.push_back(std::log(static_cast<double>(e)));
  }
  const std::size_t n = xs.size();
  if (n < kMinFitRows) {
    throw CapacityError("growth exponent fit needs at least " + std::to_string(kMinFitRows) +
                        " rows with >= " + std::to_string(min_nodes) + " active nodes, got " +
                        std::to_string(n));
  }
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw CapacityError("growth exponent fit: active node count never changes");
  est.slope = sxy / sxx;
  est.intercept = my - est.slope * mx;
  const double sse = std::max(0.0, syy - est.slope * sxy);
  est.stderr_slope = n > 2 ? std::sqrt(sse / static_cast<double>(n - 2) / sxx) : 0.0;
  est.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  est.rows_used = n;
  return est;
}

DegreeSummary degree_summary(const StepAugmentedGraph& g) {
  DegreeSummary s;
  std::map<Edge, Count> edge_mult;
  for (const auto& ev : g.events()) {
    s.degree[ev.edge.u()] += ev.multiplicity;
    s.degree[ev.edge.v()] += ev.multiplicity;
    edge_mult[ev.edge] += ev.multiplicity;
  }
  for (const auto& [node, d] : s.degree) {
    ++s.degree_histogram[d];
    s.max_degree = std::max(s.max_degree, d);
  }
  for (const auto& [edge, m] : edge_mult) ++s.multiplicity_histogram[m];
  return s;
}

double chi_square_sf(double statistic, double dof) {
  if (dof <= 0.0) return 1.0;
  boost::math::chi_squared_distribution<double> dist(dof);
  return boost::math::cdf(boost::math::complement(dist, std::max(0.0, statistic)));
}

ExchangeabilityReport exchangeability_test(const CollectionSampler& sampler, Step num_steps,
                                           std::size_t num_samples, const StepPermutation& pi,
                                           const CollectionLaw& exact_law,
                                           double significance) {
  if (num_steps > kMaxExchangeabilitySteps) {
    throw CapacityError("exchangeability test limited to " +
                        std::to_string(kMaxExchangeabilitySteps) + " steps");
  }
  if (pi.size() != num_steps) throw ValidationError("permutation size does not match steps");

  std::map<StepCollection, std::size_t> counts;
  for (std::size_t r = 0; r < num_samples; ++r) ++counts[sampler(r)];

  ExchangeabilityReport report;
  report.num_samples = num_samples;
  report.distinct_collections = counts.size();

  std::map<StepCollection, bool> visited;
  double stat = 0.0;
  std::size_t dof = 0;
  for (const auto& [c, _] : counts) {
    if (visited.count(c)) continue;
    std::vector<StepCollection> orbit{c};
    for (auto next = permute_steps(c, pi); next != c; next = permute_steps(next, pi)) {
      orbit.push_back(next);
    }
    double total = 0.0;
    for (const auto& member : orbit) {
      visited[member] = true;
      auto it = counts.find(member);
      total += it == counts.end() ? 0.0 : static_cast<double>(it->second);
    }
    const double expected = total / static_cast<double>(orbit.size());
    if (orbit.size() < 2 || expected < 5.0) continue;
    for (const auto& member : orbit) {
      auto it = counts.find(member);
      const double observed = it == counts.end() ? 0.0 : static_cast<double>(it->second);
      stat += (observed - expected) * (observed - expected) / expected;
    }
    dof += orbit.size() - 1;
  }
  report.statistic = stat;
  report.dof = dof;
  report.p_value = chi_square_sf(stat, static_cast<double>(dof));

  if (exact_law) {
    double worst = 0.0;
    for (const auto& [c, _] : counts) {
      worst = std::max(worst, std::abs(exact_law(c) - exact_law(permute_steps(c, pi))));
    }
    report.exact_max_discrepancy = worst;
  }
  report.passed = report.p_value >= significance &&
                  (!report.exact_max_discrepancy || *report.exact_max_discrepancy <= kExactTolerance);
  return report;
}

ExchangeabilityReport exchangeability_test(const ModelSpec& spec, const WeightMeasure& w,
                                           std::size_t num_samples, const StepPermutation& pi,
                                           double significance) {
  spec.validate();
  if (spec.family != ModelFamily::DenseBaseline && w.size() > kMaxEgpfAtoms) {
    throw CapacityError("exchangeability test limited to " + std::to_string(kMaxEgpfAtoms) +
                        " atoms");
  }
  auto sampler = [&](std::uint64_t r) {
    ModelSpec replicate = spec;
    replicate.seed = derive_seed(spec.seed, StreamTag::Replicate, r);
    return step_collection(sample(replicate, w));
  };
  CollectionLaw law;
  if (spec.family != ModelFamily::DenseBaseline) {
    law = [&](const StepCollection& c) { return egpf_value(c, spec, w); };
  }
  return exchangeability_test(sampler, spec.num_steps, num_samples, pi, law, significance);
}

ProjectivityReport projectivity_test(const ModelSpec& spec, const WeightMeasure& w) {
  ProjectivityReport report;
  const auto full = sample(spec, w);
  for (Step m = 0; m <= spec.num_steps; ++m) {
    ModelSpec prefix = spec;
    prefix.num_steps = m;
    if (restrict_to(full, m) != sample(prefix, w)) report.mismatches.push_back(m);
  }
  return report;
}

}  // namespace edgex
