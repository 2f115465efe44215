#include "edgex/models.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "edgex/combinatorics.hpp"
#include "edgex/error.hpp"

namespace edgex {

std::string_view to_string(ModelFamily family) {
  switch (family) {
    case ModelFamily::SingleEdgePerStep:
      return "single-edge";
    case ModelFamily::BernoulliFrequency:
      return "bernoulli";
    case ModelFamily::PoissonTrait:
      return "poisson-trait";
    case ModelFamily::EGPFConstruction:
      return "egpf";
    case ModelFamily::DenseBaseline:
      return "dense";
  }
  return "unknown";
}

ModelFamily parse_model_family(std::string_view name) {
  for (auto f : {ModelFamily::SingleEdgePerStep, ModelFamily::BernoulliFrequency,
                 ModelFamily::PoissonTrait, ModelFamily::EGPFConstruction,
                 ModelFamily::DenseBaseline}) {
    if (to_string(f) == name) return f;
  }
  throw ValidationError("unknown model family '" + std::string(name) + "'");
}

void ModelSpec::validate() const {
  if (family != ModelFamily::DenseBaseline) ggp.validate();
  if (family == ModelFamily::EGPFConstruction &&
      !(dust_rate >= 0.0 && std::isfinite(dust_rate))) {
    throw ParameterError("dust rate must be a finite value >= 0");
  }
  if (family == ModelFamily::DenseBaseline &&
      !(baseline_edge_prob >= 0.0 && baseline_edge_prob <= 1.0)) {
    throw ParameterError("baseline edge probability must lie in [0, 1]");
  }
  if (!(trunc_eps >= 0.0)) throw ParameterError("trunc_eps must be >= 0");
  if (!(q_floor >= 0.0 && q_floor < 1.0)) throw ParameterError("q_floor must lie in [0, 1)");
}

double ModelSpec::resolved_trunc_eps() const {
  return trunc_eps > 0.0 ? trunc_eps : default_truncation(ggp);
}

double TraitRateTable::rate(std::size_t i, std::size_t j) const {
  if (i >= weights_.size() || j >= weights_.size()) throw RangeError("atom index out of range");
  return i == j ? weights_[i] * weights_[i] : 2.0 * weights_[i] * weights_[j];
}

double TraitRateTable::total() const {
  double s = 0.0;
  for (double w : weights_) s += w;
  return s * s;
}

WeightMeasure sample_weights(const ModelSpec& spec) {
  spec.ggp.validate();
  auto rng = make_rng(spec.seed, StreamTag::Weights, 0);
  return sample_ggp(spec.ggp, spec.resolved_trunc_eps(), rng);
}

namespace {

using StepDelta = std::vector<std::pair<Edge, Count>>;

Rng step_rng(const ModelSpec& spec, Step n) {
  return make_rng(spec.seed, StreamTag::Steps, n);
}

void require_family(const ModelSpec& spec, std::initializer_list<ModelFamily> allowed) {
  if (std::find(allowed.begin(), allowed.end(), spec.family) == allowed.end()) {
    throw ParameterError("sampler does not match model family '" +
                         std::string(to_string(spec.family)) + "'");
  }
}

struct FrequencyPair {
  Edge edge;
  double q;
};

constexpr double kClipCeiling = 1.0 - 1e-12;

double checked_q(double q, const ModelSpec& spec) {
  if (q > 1.0) {
    if (!spec.clip_q) {
      throw ParameterError("edge inclusion probability " + std::to_string(q) +
                           " exceeds 1; rescale weights or enable clip_q");
    }
    return kClipCeiling;
  }
  return q;
}

// Pairs with q >= q_floor, in edge order. Weights are sorted decreasingly,
// so 2 w_i w_j falls with j and the scan can stop early.
std::vector<FrequencyPair> frequency_pairs(const ModelSpec& spec, const WeightMeasure& w,
                                           double* kept_rate = nullptr) {
  const auto& ws = w.weights();
  std::vector<FrequencyPair> pairs;
  double kept = 0.0;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    const double diag = ws[i] * ws[i];
    const double first_off = i + 1 < ws.size() ? 2.0 * ws[i] * ws[i + 1] : 0.0;
    if (diag < spec.q_floor && first_off < spec.q_floor) break;
    if (diag >= spec.q_floor && diag > 0.0) {
      pairs.push_back({Edge(atom_node(i), atom_node(i)), checked_q(diag, spec)});
      kept += diag;
    }
    for (std::size_t j = i + 1; j < ws.size(); ++j) {
      const double q = 2.0 * ws[i] * ws[j];
      if (q < spec.q_floor || q == 0.0) break;
      pairs.push_back({Edge(atom_node(i), atom_node(j)), checked_q(q, spec)});
      kept += q;
    }
  }
  if (kept_rate) *kept_rate = kept;
  return pairs;
}

void bernoulli_step(const std::vector<FrequencyPair>& pairs, Rng& rng, StepDelta& delta) {
  for (const auto& p : pairs) {
    if (uniform01(rng) < p.q) delta.emplace_back(p.edge, 1);
  }
}

}  // namespace

StepAugmentedGraph sample_single_edge_model(const ModelSpec& spec, const WeightMeasure& w) {
  require_family(spec, {ModelFamily::SingleEdgePerStep});
  spec.validate();
  const auto pd = normalize(w);
  StepAugmentedGraph g;
  StepDelta delta(1);
  for (Step n = 1; n <= spec.num_steps; ++n) {
    auto rng = step_rng(spec, n);
    const auto i = pd.sample_atom(rng);
    const auto j = pd.sample_atom(rng);
    delta[0] = {Edge(atom_node(i), atom_node(j)), 1};
    g.append_sorted_step(delta);
  }
  return g;
}

StepAugmentedGraph sample_bernoulli_frequency_model(const ModelSpec& spec,
                                                    const WeightMeasure& w) {
  require_family(spec, {ModelFamily::BernoulliFrequency, ModelFamily::EGPFConstruction});
  spec.validate();
  const auto pairs = frequency_pairs(spec, w);
  StepAugmentedGraph g;
  StepDelta delta;
  for (Step n = 1; n <= spec.num_steps; ++n) {
    auto rng = step_rng(spec, n);
    delta.clear();
    bernoulli_step(pairs, rng, delta);
    g.append_sorted_step(delta);
  }
  return g;
}

double bernoulli_missed_edge_rate(const ModelSpec& spec, const WeightMeasure& w) {
  ModelSpec unclipped = spec;
  unclipped.clip_q = true;
  double kept = 0.0;
  frequency_pairs(unclipped, w, &kept);
  return std::max(0.0, TraitRateTable(w).total() - kept);
}

StepAugmentedGraph sample_poisson_trait_model(const ModelSpec& spec, const WeightMeasure& w) {
  require_family(spec, {ModelFamily::PoissonTrait});
  spec.validate();
  StepAugmentedGraph g(0);
  if (w.empty()) {
    for (Step n = 1; n <= spec.num_steps; ++n) g.append_sorted_step({});
    return g;
  }
  // Independent Poisson(theta{i,j}) counts are equivalent to a
  // Poisson((sum w)^2) total split by iid unordered-pair draws.
  const auto pd = normalize(w);
  const double total_rate = TraitRateTable(w).total();
  std::map<Edge, Count> counts;
  StepDelta delta;
  for (Step n = 1; n <= spec.num_steps; ++n) {
    auto rng = step_rng(spec, n);
    const Count total = std::poisson_distribution<Count>(total_rate)(rng);
    counts.clear();
    for (Count k = 0; k < total; ++k) {
      const auto i = pd.sample_atom(rng);
      const auto j = pd.sample_atom(rng);
      ++counts[Edge(atom_node(i), atom_node(j))];
    }
    delta.assign(counts.begin(), counts.end());
    g.append_sorted_step(delta);
  }
  return g;
}

StepAugmentedGraph sample_trait_model(const ModelSpec& spec, const WeightMeasure& w,
                                      const TraitCountSampler& counts) {
  require_family(spec, {ModelFamily::PoissonTrait});
  spec.validate();
  const TraitRateTable rates(w);
  StepAugmentedGraph g;
  StepDelta delta;
  for (Step n = 1; n <= spec.num_steps; ++n) {
    auto rng = step_rng(spec, n);
    delta.clear();
    for (std::size_t i = 0; i < rates.num_atoms(); ++i) {
      for (std::size_t j = i; j < rates.num_atoms(); ++j) {
        const Count m = counts(rng, rates.rate(i, j));
        if (m > 0) delta.emplace_back(Edge(atom_node(i), atom_node(j)), m);
      }
    }
    g.append_sorted_step(delta);
  }
  return g;
}

StepAugmentedGraph sample_egpf_construction(const ModelSpec& spec, const WeightMeasure& w) {
  require_family(spec, {ModelFamily::EGPFConstruction});
  spec.validate();
  const auto pairs = frequency_pairs(spec, w);
  StepAugmentedGraph g;
  StepDelta delta;
  std::uint64_t next_dust = atom_node(w.size()).value;
  for (Step n = 1; n <= spec.num_steps; ++n) {
    auto rng = step_rng(spec, n);
    delta.clear();
    bernoulli_step(pairs, rng, delta);
    if (spec.dust_rate > 0.0) {
      const Count dust = std::poisson_distribution<Count>(spec.dust_rate)(rng);
      for (Count k = 0; k < dust; ++k, ++next_dust) {
        delta.emplace_back(Edge(next_dust, next_dust), 1);
      }
    }
    g.append_sorted_step(delta);
  }
  return g;
}

StepAugmentedGraph sample_dense_baseline(const ModelSpec& spec) {
  require_family(spec, {ModelFamily::DenseBaseline});
  spec.validate();
  const double p = spec.baseline_edge_prob;
  StepAugmentedGraph g;
  StepDelta delta;
  for (Step n = 1; n <= spec.num_steps; ++n) {
    delta.clear();
    if (p >= 1.0) {
      for (Step i = 1; i <= n; ++i) delta.emplace_back(Edge(i, n), 1);
    } else if (p > 0.0) {
      // Geometric gaps between successes reproduce independent Bernoulli(p)
      // trials over i = 1..n.
      auto rng = step_rng(spec, n);
      std::geometric_distribution<Step> gap(p);
      for (Step i = 1 + gap(rng); i <= n; i += 1 + gap(rng)) {
        delta.emplace_back(Edge(i, n), 1);
      }
    }
    g.append_sorted_step(delta);
  }
  return g;
}

StepAugmentedGraph sample(const ModelSpec& spec, const WeightMeasure& w) {
  switch (spec.family) {
    case ModelFamily::SingleEdgePerStep:
      return sample_single_edge_model(spec, w);
    case ModelFamily::BernoulliFrequency:
      return sample_bernoulli_frequency_model(spec, w);
    case ModelFamily::PoissonTrait:
      return sample_poisson_trait_model(spec, w);
    case ModelFamily::EGPFConstruction:
      return sample_egpf_construction(spec, w);
    case ModelFamily::DenseBaseline:
      return sample_dense_baseline(spec);
  }
  throw ParameterError("unknown model family");
}

Step sample_poisson_steps(double rate, std::uint64_t seed) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) throw ParameterError("Poisson step rate must be >= 0");
  if (rate == 0.0) return 0;
  auto rng = make_rng(seed, StreamTag::PoissonSteps, 0);
  return std::poisson_distribution<Step>(rate)(rng);
}

namespace {

double poisson_pmf(Count k, double mean) {
  if (mean == 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(static_cast<double>(k) * std::log(mean) - mean -
                  std::lgamma(static_cast<double>(k) + 1.0));
}

// Probability that one atom pair shows exactly the step pattern `block`
// (nullptr: never occurs) over `steps` steps.
class PairPatternLaw {
 public:
  PairPatternLaw(ModelFamily family, double rate, Step steps)
      : family_(family), rate_(rate), steps_(steps) {}

  double operator()(const Block* block) const {
    switch (family_) {
      case ModelFamily::SingleEdgePerStep:
        return block ? std::pow(rate_, static_cast<double>(block->size())) : 1.0;
      case ModelFamily::BernoulliFrequency:
      case ModelFamily::EGPFConstruction: {
        if (!block) return std::pow(1.0 - rate_, static_cast<double>(steps_));
        if (std::adjacent_find(block->begin(), block->end()) != block->end()) return 0.0;
        const auto k = static_cast<double>(block->size());
        return std::pow(rate_, k) * std::pow(1.0 - rate_, static_cast<double>(steps_) - k);
      }
      case ModelFamily::PoissonTrait: {
        std::vector<Count> per_step(steps_ + 1, 0);
        if (block) {
          for (Step s : *block) ++per_step[s];
        }
        double p = 1.0;
        for (Step s = 1; s <= steps_; ++s) p *= poisson_pmf(per_step[s], rate_);
        return p;
      }
      case ModelFamily::DenseBaseline:
        break;
    }
    return 0.0;
  }

 private:
  ModelFamily family_;
  double rate_;
  Step steps_;
};

}  // namespace

double egpf_value(const StepCollection& c, const ModelSpec& spec, const WeightMeasure& w) {
  spec.validate();
  if (spec.family == ModelFamily::DenseBaseline) {
    throw ParameterError("the dense baseline has no edge-exchangeable probability function");
  }
  if (c.num_steps() != spec.num_steps) {
    throw ValidationError("collection has " + std::to_string(c.num_steps()) +
                          " steps but model has " + std::to_string(spec.num_steps));
  }
  const Step steps = c.num_steps();
  if (steps > kMaxEgpfSteps || w.size() > kMaxEgpfAtoms) {
    throw CapacityError("egpf_value enumeration limited to " + std::to_string(kMaxEgpfSteps) +
                        " steps and " + std::to_string(kMaxEgpfAtoms) + " atoms");
  }
  if (spec.family == ModelFamily::SingleEdgePerStep) {
    if (w.empty()) throw DegenerateMeasureError("single-edge model needs at least one atom");
    if (classify(c) != StructureKind::Partition) return 0.0;
  }

  // Per-pair laws, in pair order.
  std::vector<PairPatternLaw> laws;
  if (!w.empty()) {
    const auto pd = normalize(w);
    const TraitRateTable rates(w);
    for (std::size_t i = 0; i < w.size(); ++i) {
      for (std::size_t j = i; j < w.size(); ++j) {
        double rate = 0.0;
        switch (spec.family) {
          case ModelFamily::SingleEdgePerStep:
            rate = pd.pair_probability(i, j);
            break;
          case ModelFamily::BernoulliFrequency:
          case ModelFamily::EGPFConstruction:
            rate = rates.rate(i, j);
            rate = rate < spec.q_floor ? 0.0 : checked_q(rate, spec);
            break;
          default:
            rate = rates.rate(i, j);
        }
        laws.emplace_back(spec.family, rate, steps);
      }
    }
  }

  // Distinct block types of c with their multiplicities.
  std::vector<Block> types;
  std::vector<Count> remaining;
  for (const auto& b : c.blocks()) {
    auto it = std::find(types.begin(), types.end(), b);
    if (it == types.end()) {
      types.push_back(b);
      remaining.push_back(1);
    } else {
      ++remaining[static_cast<std::size_t>(it - types.begin())];
    }
  }

  const bool has_dust = spec.family == ModelFamily::EGPFConstruction;
  // Blocks not claimed by an atom pair must be dust: single-step blocks
  // whose count per step is Poisson(dust_rate).
  auto leftover_probability = [&]() -> double {
    std::vector<Count> dust(steps + 1, 0);
    for (std::size_t t = 0; t < types.size(); ++t) {
      if (remaining[t] == 0) continue;
      if (!has_dust || types[t].size() != 1) return 0.0;
      dust[types[t].front()] += remaining[t];
    }
    if (!has_dust) return 1.0;
    double p = 1.0;
    for (Step s = 1; s <= steps; ++s) p *= poisson_pmf(dust[s], spec.dust_rate);
    return p;
  };

  // Sum over maps from atom pairs to (no block | a block of c).
  std::function<double(std::size_t)> rec = [&](std::size_t pair) -> double {
    if (pair == laws.size()) return leftover_probability();
    double total = laws[pair](nullptr) * rec(pair + 1);
    for (std::size_t t = 0; t < types.size(); ++t) {
      if (remaining[t] == 0) continue;
      const double p = laws[pair](&types[t]);
      if (p == 0.0) continue;
      --remaining[t];
      total += p * rec(pair + 1);
      ++remaining[t];
    }
    return total;
  };
  return rec(0);
}

}  // namespace edgex
