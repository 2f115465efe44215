#ifndef EDGEX_MODELS_HPP
#define EDGEX_MODELS_HPP

#include <cstdint>
#include <functional>
#include <string_view>

#include "edgex/graph_core.hpp"
#include "edgex/weights.hpp"

namespace edgex {

enum class ModelFamily {
  SingleEdgePerStep,
  BernoulliFrequency,
  PoissonTrait,
  EGPFConstruction,
  DenseBaseline,
};

std::string_view to_string(ModelFamily family);
// Accepts the CLI names: single-edge, bernoulli, poisson-trait, egpf, dense.
ModelFamily parse_model_family(std::string_view name);

struct ModelSpec {
  ModelFamily family = ModelFamily::SingleEdgePerStep;
  GGPParams ggp;
  Step num_steps = 0;
  // Rate of never-repeating edges per step (EGPFConstruction only).
  double dust_rate = 0.0;
  // Pair inclusion probability (DenseBaseline only).
  double baseline_edge_prob = 0.5;
  std::uint64_t seed = 0;
  // Atom truncation threshold; 0 selects default_truncation(ggp).
  double trunc_eps = 0.0;
  // Pairs with inclusion probability below this are skipped by the
  // Bernoulli sampler.
  double q_floor = 1e-12;
  // Cap inclusion probabilities above 1 at 1 - 1e-12 instead of rejecting.
  bool clip_q = false;

  // Throws ParameterError on out-of-domain fields for the chosen family.
  void validate() const;
  double resolved_trunc_eps() const;
};

// Pair rates theta{i,j} = 2 w_i w_j (i != j), w_i^2 (i == j). Rates are
// computed on demand from the weights.
class TraitRateTable {
 public:
  explicit TraitRateTable(const WeightMeasure& w) : weights_(w.weights()) {}

  double rate(std::size_t i, std::size_t j) const;
  // Sum over unordered pairs, equal to (sum w)^2.
  double total() const;
  std::size_t num_atoms() const { return weights_.size(); }

 private:
  std::vector<double> weights_;
};

// Node label of atom index k (zero-based).
constexpr NodeId atom_node(std::size_t k) { return NodeId(k + 1); }

// GGP atoms for `spec`, drawn from the weights substream of spec.seed.
WeightMeasure sample_weights(const ModelSpec& spec);

// Exactly one edge per step: the unordered pair of two iid draws from
// normalize(w). Throws DegenerateMeasureError on empty weights.
StepAugmentedGraph sample_single_edge_model(const ModelSpec& spec, const WeightMeasure& w);

// Each pair {i,j} enters each step independently with probability q{i,j}.
// Throws ParameterError when some q exceeds 1 and clip_q is off.
StepAugmentedGraph sample_bernoulli_frequency_model(const ModelSpec& spec,
                                                    const WeightMeasure& w);

// Expected number of edges per step lost to the q_floor cutoff.
double bernoulli_missed_edge_rate(const ModelSpec& spec, const WeightMeasure& w);

// Draws a pair multiplicity given its rate.
using TraitCountSampler = std::function<Count(Rng&, double theta)>;

// Each pair {i,j} gets a Poisson(theta{i,j}) multiplicity at each step.
StepAugmentedGraph sample_poisson_trait_model(const ModelSpec& spec, const WeightMeasure& w);

// Same construction with a caller-supplied count law h(. | theta).
StepAugmentedGraph sample_trait_model(const ModelSpec& spec, const WeightMeasure& w,
                                      const TraitCountSampler& counts);

// Bernoulli frequency model plus Poisson(dust_rate) fresh self-loops per
// step on node labels above every atom label.
StepAugmentedGraph sample_egpf_construction(const ModelSpec& spec, const WeightMeasure& w);

// Node n arrives at step n and links to each i <= n with probability
// baseline_edge_prob.
StepAugmentedGraph sample_dense_baseline(const ModelSpec& spec);

// Dispatches on spec.family; `w` is ignored for DenseBaseline.
StepAugmentedGraph sample(const ModelSpec& spec, const WeightMeasure& w);

// Step count drawn from Poisson(rate) on its own substream of `seed`.
Step sample_poisson_steps(double rate, std::uint64_t seed);

// Exact probability that `spec` over `w` produces a graph whose step
// collection is `c`, by exhaustive enumeration over atom pairs. Limited to
// num_steps <= 4 and at most 3 atoms (CapacityError otherwise). Throws
// ParameterError for DenseBaseline.
inline constexpr Step kMaxEgpfSteps = 4;
inline constexpr std::size_t kMaxEgpfAtoms = 3;

double egpf_value(const StepCollection& c, const ModelSpec& spec, const WeightMeasure& w);

}  // namespace edgex

#endif  // EDGEX_MODELS_HPP
