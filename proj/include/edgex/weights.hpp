#ifndef EDGEX_WEIGHTS_HPP
#define EDGEX_WEIGHTS_HPP

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "edgex/combinatorics.hpp"
#include "edgex/rng.hpp"

namespace edgex {

// Generalized gamma process with Levy density
//   nu(dw) = alpha / Gamma(1 - sigma) * w^(-1 - sigma) * exp(-tau * w) dw.
// sigma == 0 is the gamma process.
struct GGPParams {
  double alpha = 1.0;
  double sigma = 0.0;
  double tau = 1.0;

  // Throws ParameterError unless alpha > 0, tau > 0 and 0 <= sigma < 1.
  void validate() const;
};

// Atoms of a completely random measure above a truncation threshold. Atom
// locations are not represented; atom k is identified by its index.
class WeightMeasure {
 public:
  WeightMeasure() = default;

  // Sorts `weights` in decreasing order. Throws ValidationError on a
  // nonpositive weight or one below `truncation_threshold`.
  WeightMeasure(std::vector<double> weights, double truncation_threshold,
                double estimated_truncated_mass);

  // A fixed atom list with no truncation accounting (test fixtures, CLI).
  static WeightMeasure fixed(std::vector<double> weights);

  const std::vector<double>& weights() const { return weights_; }
  double truncation_threshold() const { return threshold_; }
  double estimated_truncated_mass() const { return truncated_mass_; }
  std::size_t size() const { return weights_.size(); }
  bool empty() const { return weights_.empty(); }
  double total_mass() const;

  friend bool operator==(const WeightMeasure&, const WeightMeasure&) = default;

 private:
  std::vector<double> weights_;
  double threshold_ = 0.0;
  double truncated_mass_ = 0.0;
};

// nu((eps, inf)): expected number of atoms above eps. Closed form through the
// upper incomplete gamma function; quadrature for 0 < sigma < 1e-4 where the
// recurrence loses precision.
double levy_tail_mass(const GGPParams& params, double eps);

// Integral of w nu(dw) over (0, eps]: expected mass of the discarded atoms.
double levy_truncated_mass(const GGPParams& params, double eps);

// E[W(total)] = alpha * tau^(sigma - 1).
double expected_total_mass(const GGPParams& params);

// Threshold whose expected discarded mass is below `relative_error` of the
// expected total mass.
double default_truncation(const GGPParams& params, double relative_error = 1e-4);

// Upper bound on the number of atoms sample_ggp accepts to draw.
inline constexpr double kMaxExpectedAtoms = 5e7;

// Poisson process on (eps, inf) with intensity nu. Throws ParameterError for
// invalid params or eps <= 0 and CapacityError when nu((eps, inf)) exceeds
// kMaxExpectedAtoms.
WeightMeasure sample_ggp(const GGPParams& params, double eps, Rng& rng);

// Normalized atom weights and the induced law on unordered atom pairs:
// p{i,j} = 2 p_i p_j for i != j and p_i^2 for i == j.
class PairDistribution {
 public:
  const std::vector<double>& normalized_weights() const { return probs_; }
  std::size_t size() const { return probs_.size(); }

  // Indices are zero-based atom indices.
  double pair_probability(std::size_t i, std::size_t j) const;

  // Categorical draw of one atom index.
  std::size_t sample_atom(Rng& rng) const;

  // The pair law as a Kingman paintbox over edges, pairs ordered (0,0),
  // (0,1), ..., (1,1), ...
  Paintbox edge_paintbox() const;

 private:
  friend PairDistribution normalize(const WeightMeasure& w);
  std::vector<double> probs_;
  std::vector<double> cumulative_;
};

// Throws DegenerateMeasureError on an empty measure.
PairDistribution normalize(const WeightMeasure& w);

// CSV with columns k, weight, normalized_weight (k is 1-based).
void write_weights_csv(std::ostream& os, const WeightMeasure& w);

}  // namespace edgex

#endif  // EDGEX_WEIGHTS_HPP
