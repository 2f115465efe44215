#ifndef EDGEX_COMBINATORICS_HPP
#define EDGEX_COMBINATORICS_HPP

#include <string_view>
#include <vector>

#include "edgex/graph_core.hpp"

namespace edgex {

// Nested classes: every partition is a feature allocation and every feature
// allocation is a trait allocation. classify() reports the smallest class.
enum class StructureKind { Partition, FeatureAllocation, TraitAllocation };

std::string_view to_string(StructureKind kind);
StructureKind parse_structure_kind(std::string_view name);

// Bijection on [1, n].
class StepPermutation {
 public:
  // `image[i - 1]` is the image of step i. Throws ValidationError unless the
  // mapping is a bijection on [1, image.size()].
  explicit StepPermutation(std::vector<Step> image);

  static StepPermutation identity(Step n);
  // Swaps steps a and b.
  static StepPermutation transposition(Step n, Step a, Step b);
  // Every permutation of [1, n] in lexicographic order.
  static std::vector<StepPermutation> all(Step n);

  Step size() const { return image_.size(); }
  Step operator()(Step s) const { return image_[s - 1]; }
  StepPermutation inverse() const;
  const std::vector<Step>& image() const { return image_; }

  friend bool operator==(const StepPermutation&,
                         const StepPermutation&) = default;

 private:
  std::vector<Step> image_;
};

// Truncated Kingman paintbox: probabilities p_k in (0, 1] with
// tail_mass = 1 - sum p_k >= 0.
class Paintbox {
 public:
  // Throws ParameterError on entries outside (0, 1] or sum above 1.
  explicit Paintbox(std::vector<double> probabilities);

  const std::vector<double>& probabilities() const { return probs_; }
  double tail_mass() const { return tail_mass_; }
  std::size_t size() const { return probs_.size(); }

 private:
  std::vector<double> probs_;
  double tail_mass_ = 0.0;
};

StructureKind classify(const StepCollection& c);

// Replaces each step s with pi(s). Throws ValidationError on a size mismatch.
StepCollection permute_steps(const StepCollection& c, const StepPermutation& pi);

// All step collections of [n] in the class `kind`, up to block relabeling,
// with at most `max_blocks` blocks. Blocks of a trait allocation repeat a step
// at most `max_multiplicity` times. The empty collection is included for the
// feature and trait classes (and for the partition class only when n == 0).
//
// Throws CapacityError for n > 6 or when the result would exceed
// kEnumerationLimit collections.
inline constexpr Step kMaxEnumerationSteps = 6;
inline constexpr std::size_t kEnumerationLimit = 5'000'000;

std::vector<StepCollection> enumerate_step_collections(
    Step n, StructureKind kind, std::size_t max_blocks,
    Count max_multiplicity = 2);

// Probability that n iid categorical(pb) draws induce the partition c: the
// sum over injective block-to-colour maps of prod_k p_k^{|block_k|}.
// Throws KindError if c is not a partition, ParameterError if the paintbox
// carries tail mass above `tail_tolerance`.
double paintbox_partition_probability(const Paintbox& pb, const StepCollection& c,
                                      double tail_tolerance = 1e-12);

// Bell number B_n, used as an independent count check.
Count bell_number(Step n);

}  // namespace edgex

#endif  // EDGEX_COMBINATORICS_HPP
