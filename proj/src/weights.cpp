#include "edgex/weights.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "edgex/error.hpp"

namespace edgex {

void GGPParams::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ParameterError("alpha must be > 0");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ParameterError("tau must be > 0");
  if (!(sigma >= 0.0 && sigma < 1.0)) throw ParameterError("sigma must lie in [0, 1)");
}

WeightMeasure::WeightMeasure(std::vector<double> weights, double truncation_threshold,
                             double estimated_truncated_mass)
    : weights_(std::move(weights)),
      threshold_(truncation_threshold),
      truncated_mass_(estimated_truncated_mass) {
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw ValidationError("atom weights must be positive");
    if (w < threshold_) throw ValidationError("atom weight below truncation threshold");
  }
  std::sort(weights_.begin(), weights_.end(), std::greater<>());
}

WeightMeasure WeightMeasure::fixed(std::vector<double> weights) {
  return WeightMeasure(std::move(weights), 0.0, 0.0);
}

double WeightMeasure::total_mass() const {
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

namespace {

// Gamma(-sigma, x) for 0 < sigma < 1, x > 0.
double upper_gamma_negative(double sigma, double x) {
  if (sigma >= 1e-4) {
    return (std::pow(x, -sigma) * std::exp(-x) - boost::math::tgamma(1.0 - sigma, x)) /
           sigma;
  }
  // t = x e^u maps (x, inf) onto (0, inf) with a smooth integrand.
  boost::math::quadrature::exp_sinh<double> integrator;
  const double scale = std::pow(x, -sigma);
  auto f = [&](double u) {
    const double t = x * std::exp(u);
    if (t > 745.0) return 0.0;
    return scale * std::exp(-sigma * u - t);
  };
  return integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity());
}

void check_eps(double eps) {
  if (!(eps > 0.0)) throw ParameterError("truncation threshold must be > 0");
}

}  // namespace

double levy_tail_mass(const GGPParams& params, double eps) {
  params.validate();
  check_eps(eps);
  if (std::isinf(eps)) return 0.0;
  const double x = params.tau * eps;
  if (params.sigma == 0.0) return params.alpha * boost::math::expint(1, x);
  return params.alpha / std::tgamma(1.0 - params.sigma) *
         std::pow(params.tau, params.sigma) * upper_gamma_negative(params.sigma, x);
}

double levy_truncated_mass(const GGPParams& params, double eps) {
  params.validate();
  check_eps(eps);
  if (std::isinf(eps)) return expected_total_mass(params);
  return expected_total_mass(params) *
         boost::math::gamma_p(1.0 - params.sigma, params.tau * eps);
}

double expected_total_mass(const GGPParams& params) {
  params.validate();
  return params.alpha * std::pow(params.tau, params.sigma - 1.0);
}

double default_truncation(const GGPParams& params, double relative_error) {
  params.validate();
  if (!(relative_error > 0.0 && relative_error < 1.0)) {
    throw ParameterError("relative truncation error must lie in (0, 1)");
  }
  // The discarded fraction is the regularized lower incomplete gamma
  // P(1 - sigma, tau * eps); back off slightly so the bound is strict.
  return 0.99 * boost::math::gamma_p_inv(1.0 - params.sigma, relative_error) / params.tau;
}

namespace {

Count poisson_draw(double mean, Rng& rng) {
  if (!(mean > 0.0)) return 0;
  return std::poisson_distribution<Count>(mean)(rng);
}

}  // namespace

WeightMeasure sample_ggp(const GGPParams& params, double eps, Rng& rng) {
  params.validate();
  check_eps(eps);
  const double total_rate = levy_tail_mass(params, eps);
  if (total_rate > kMaxExpectedAtoms) {
    throw CapacityError("truncation threshold " + std::to_string(eps) + " implies " +
                        std::to_string(total_rate) + " expected atoms");
  }
  const double sigma = params.sigma;
  const double tau = params.tau;

  // Two independent Poisson processes: a power-law body on (eps, split] and
  // an exponential tail on (split, inf), each thinned by rejection to nu.
  const double split = std::max(eps, 1.0 / tau);
  const double tail_rate = split > eps ? levy_tail_mass(params, split) : total_rate;
  const double body_rate = std::max(0.0, total_rate - tail_rate);

  std::vector<double> weights;
  const Count body_count = poisson_draw(body_rate, rng);
  const Count tail_count = poisson_draw(tail_rate, rng);
  weights.reserve(body_count + tail_count);

  if (body_count > 0) {
    // Proposal density proportional to w^(-1-sigma) on (eps, split];
    // acceptance exp(-tau (w - eps)) >= exp(-1).
    const double lo = sigma > 0.0 ? std::pow(eps, -sigma) : std::log(eps);
    const double hi = sigma > 0.0 ? std::pow(split, -sigma) : std::log(split);
    for (Count k = 0; k < body_count;) {
      const double u = uniform01(rng);
      const double w = sigma > 0.0 ? std::pow(lo - u * (lo - hi), -1.0 / sigma)
                                   : std::exp(lo + u * (hi - lo));
      if (uniform01(rng) < std::exp(-tau * (w - eps))) {
        weights.push_back(std::clamp(w, eps, split));
        ++k;
      }
    }
  }
  if (tail_count > 0) {
    std::exponential_distribution<double> excess(tau);
    for (Count k = 0; k < tail_count;) {
      const double w = split + excess(rng);
      if (uniform01(rng) < std::pow(w / split, -1.0 - sigma)) {
        weights.push_back(w);
        ++k;
      }
    }
  }
  return WeightMeasure(std::move(weights), eps, levy_truncated_mass(params, eps));
}

double PairDistribution::pair_probability(std::size_t i, std::size_t j) const {
  if (i >= probs_.size() || j >= probs_.size()) throw RangeError("atom index out of range");
  return i == j ? probs_[i] * probs_[i] : 2.0 * probs_[i] * probs_[j];
}

std::size_t PairDistribution::sample_atom(Rng& rng) const {
  const double u = uniform01(rng) * cumulative_.back();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()),
                               probs_.size() - 1);
}

Paintbox PairDistribution::edge_paintbox() const {
  std::vector<double> p;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    for (std::size_t j = i; j < probs_.size(); ++j) p.push_back(pair_probability(i, j));
  }
  return Paintbox(std::move(p));
}

PairDistribution normalize(const WeightMeasure& w) {
  if (w.empty()) throw DegenerateMeasureError("cannot normalize a measure with no atoms");
  const double total = w.total_mass();
  PairDistribution out;
  out.probs_.reserve(w.size());
  out.cumulative_.reserve(w.size());
  double running = 0.0;
  for (double x : w.weights()) {
    out.probs_.push_back(x / total);
    running += x / total;
    out.cumulative_.push_back(running);
  }
  return out;
}

void write_weights_csv(std::ostream& os, const WeightMeasure& w) {
  os << "k,weight,normalized_weight\n";
  if (w.empty()) return;
  const auto pd = normalize(w);
  const auto old_precision = os.precision(17);
  for (std::size_t k = 0; k < w.size(); ++k) {
    os << (k + 1) << ',' << w.weights()[k] << ',' << pd.normalized_weights()[k] << '\n';
  }
  os.precision(old_precision);
}

}  // namespace edgex
