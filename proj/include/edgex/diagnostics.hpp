#ifndef EDGEX_DIAGNOSTICS_HPP
#define EDGEX_DIAGNOSTICS_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "edgex/combinatorics.hpp"
#include "edgex/graph_core.hpp"
#include "edgex/models.hpp"

namespace edgex {

struct GrowthRow {
  Step step = 0;
  Count active_nodes = 0;
  Count edges_mult = 0;
  Count edges_distinct = 0;

  friend bool operator==(const GrowthRow&, const GrowthRow&) = default;
};

// Cumulative counts over restrict_to(g, n) for n = 1..num_steps.
struct GrowthTrace {
  std::vector<GrowthRow> rows;
};

GrowthTrace growth_trace(const StepAugmentedGraph& g);

// CSV with columns step, active_nodes, edges_mult, edges_distinct.
void write_growth_csv(std::ostream& os, const GrowthTrace& t);

// Which edge count enters the log-log fit: copies with multiplicity or
// distinct (simple-graph) edges.
enum class EdgeCount { Multiplicity, Distinct };

struct ExponentEstimate {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  double r_squared = 0.0;
  // Steps of the first and last rows used.
  std::pair<Step, Step> fit_range{0, 0};
  std::size_t rows_used = 0;
};

inline constexpr Count kMinFitNodes = 10;
inline constexpr std::size_t kMinFitRows = 5;

// OLS of log e(n) on log v(n) over rows with v(n) >= min_nodes. Throws
// CapacityError with fewer than kMinFitRows usable rows.
ExponentEstimate fit_exponent(const GrowthTrace& t, EdgeCount count = EdgeCount::Multiplicity,
                              Count min_nodes = kMinFitNodes);

struct DegreeSummary {
  // Per-node degree; a self-loop adds 2 per copy.
  std::map<NodeId, Count> degree;
  // degree -> number of nodes with that degree.
  std::map<Count, Count> degree_histogram;
  // total multiplicity of a distinct edge -> number of such edges.
  std::map<Count, Count> multiplicity_histogram;
  Count max_degree = 0;
};

DegreeSummary degree_summary(const StepAugmentedGraph& g);

struct ExchangeabilityReport {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
  // Largest |P(c) - P(pi(c))| over the observed collections, when an exact
  // law is available.
  std::optional<double> exact_max_discrepancy;
  std::size_t num_samples = 0;
  std::size_t distinct_collections = 0;
  bool passed = false;
};

inline constexpr double kSignificance = 0.01;
inline constexpr double kExactTolerance = 1e-9;
inline constexpr Step kMaxExchangeabilitySteps = 4;

// One step collection per replicate index.
using CollectionSampler = std::function<StepCollection(std::uint64_t replicate)>;
// Exact probability of a step collection.
using CollectionLaw = std::function<double(const StepCollection&)>;

// Draws `num_samples` collections and tests whether the orbit of each
// collection under pi carries equal frequencies: a chi-square goodness of fit
// to the uniform law within every orbit whose expected count per member is at
// least 5. Passes when p >= significance and, with an exact law, every
// discrepancy is within kExactTolerance.
ExchangeabilityReport exchangeability_test(const CollectionSampler& sampler, Step num_steps,
                                           std::size_t num_samples, const StepPermutation& pi,
                                           const CollectionLaw& exact_law = {},
                                           double significance = kSignificance);

// Model form: replicate r is sampled with seed derive_seed(spec.seed,
// StreamTag::Replicate, r); egpf_value supplies the exact law. Requires
// num_steps <= 4 and at most 3 atoms (CapacityError otherwise).
ExchangeabilityReport exchangeability_test(const ModelSpec& spec, const WeightMeasure& w,
                                           std::size_t num_samples, const StepPermutation& pi,
                                           double significance = kSignificance);

struct ProjectivityReport {
  // Prefix lengths m where restrict_to(sample(N), m) != sample(m).
  std::vector<Step> mismatches;
  bool passed() const { return mismatches.empty(); }
};

ProjectivityReport projectivity_test(const ModelSpec& spec, const WeightMeasure& w);

// Upper tail probability of a chi-square variate.
double chi_square_sf(double statistic, double dof);

}  // namespace edgex

#endif  // EDGEX_DIAGNOSTICS_HPP
