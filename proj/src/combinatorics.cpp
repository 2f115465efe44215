#include "edgex/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "edgex/error.hpp"

namespace edgex {

std::string_view to_string(StructureKind kind) {
  switch (kind) {
    case StructureKind::Partition:
      return "partition";
    case StructureKind::FeatureAllocation:
      return "feature";
    case StructureKind::TraitAllocation:
      return "trait";
  }
  return "unknown";
}

StructureKind parse_structure_kind(std::string_view name) {
  if (name == "partition") return StructureKind::Partition;
  if (name == "feature") return StructureKind::FeatureAllocation;
  if (name == "trait") return StructureKind::TraitAllocation;
  throw ValidationError("unknown structure kind '" + std::string(name) + "'");
}

StepPermutation::StepPermutation(std::vector<Step> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size() + 1, false);
  for (Step s : image_) {
    if (s < 1 || s > image_.size() || seen[s]) {
      throw ValidationError("step permutation is not a bijection on [1, " +
                            std::to_string(image_.size()) + "]");
    }
    seen[s] = true;
  }
}

StepPermutation StepPermutation::identity(Step n) {
  std::vector<Step> image(n);
  std::iota(image.begin(), image.end(), Step{1});
  return StepPermutation(std::move(image));
}

StepPermutation StepPermutation::transposition(Step n, Step a, Step b) {
  if (a < 1 || b < 1 || a > n || b > n) {
    throw RangeError("transposition index outside [1, n]");
  }
  auto image = identity(n).image_;
  std::swap(image[a - 1], image[b - 1]);
  return StepPermutation(std::move(image));
}

std::vector<StepPermutation> StepPermutation::all(Step n) {
  std::vector<StepPermutation> out;
  auto image = identity(n).image_;
  do {
    out.emplace_back(image);
  } while (std::next_permutation(image.begin(), image.end()));
  return out;
}

StepPermutation StepPermutation::inverse() const {
  std::vector<Step> inv(image_.size());
  for (Step i = 1; i <= image_.size(); ++i) inv[image_[i - 1] - 1] = i;
  return StepPermutation(std::move(inv));
}

Paintbox::Paintbox(std::vector<double> probabilities) : probs_(std::move(probabilities)) {
  double total = 0.0;
  for (double p : probs_) {
    if (!(p > 0.0 && p <= 1.0)) {
      throw ParameterError("paintbox probabilities must lie in (0, 1]");
    }
    total += p;
  }
  if (total > 1.0 + 1e-12) throw ParameterError("paintbox probabilities sum above 1");
  tail_mass_ = std::max(0.0, 1.0 - total);
}

StructureKind classify(const StepCollection& c) {
  std::vector<Count> occurrences(c.num_steps() + 1, 0);
  bool repeated_within_block = false;
  for (const auto& block : c.blocks()) {
    for (std::size_t i = 0; i < block.size(); ++i) {
      ++occurrences[block[i]];
      if (i > 0 && block[i] == block[i - 1]) repeated_within_block = true;
    }
  }
  const bool exactly_once = std::all_of(occurrences.begin() + 1, occurrences.end(),
                                        [](Count k) { return k == 1; });
  if (exactly_once) return StructureKind::Partition;
  // With finitely many steps each step lies in finitely many blocks, so the
  // feature-allocation finiteness condition always holds here.
  return repeated_within_block ? StructureKind::TraitAllocation
                               : StructureKind::FeatureAllocation;
}

StepCollection permute_steps(const StepCollection& c, const StepPermutation& pi) {
  if (pi.size() != c.num_steps()) {
    throw ValidationError("permutation acts on [1, " + std::to_string(pi.size()) +
                          "] but collection has " + std::to_string(c.num_steps()) +
                          " steps");
  }
  std::vector<Block> blocks = c.blocks();
  for (auto& block : blocks) {
    for (Step& s : block) s = pi(s);
  }
  return StepCollection(std::move(blocks), c.num_steps());
}

namespace {

void enumerate_set_partitions(Step n, std::size_t max_blocks,
                              std::vector<StepCollection>& out) {
  // Restricted growth strings: label[i] <= 1 + max(label[0..i-1]).
  std::vector<std::size_t> label(n, 0);
  std::function<void(Step, std::size_t)> rec = [&](Step i, std::size_t used) {
    if (i == n) {
      std::vector<Block> blocks(used);
      for (Step s = 0; s < n; ++s) blocks[label[s]].push_back(s + 1);
      out.emplace_back(std::move(blocks), n);
      return;
    }
    for (std::size_t b = 0; b <= used && b < max_blocks; ++b) {
      label[i] = b;
      rec(i + 1, std::max(used, b + 1));
    }
  };
  if (n == 0) {
    out.emplace_back(std::vector<Block>{}, 0);
    return;
  }
  rec(0, 0);
}

// Nonempty blocks whose per-step count is at most `max_mult`.
std::vector<Block> block_types(Step n, Count max_mult) {
  std::vector<Block> types;
  std::vector<Count> counts(n, 0);
  std::function<void(Step)> rec = [&](Step i) {
    if (i == n) {
      Block b;
      for (Step s = 0; s < n; ++s) b.insert(b.end(), counts[s], s + 1);
      if (!b.empty()) types.push_back(std::move(b));
      return;
    }
    for (Count k = 0; k <= max_mult; ++k) {
      counts[i] = k;
      rec(i + 1);
    }
  };
  rec(0);
  return types;
}

// Number of multisets of size <= k drawn from t types.
double multiset_count(std::size_t t, std::size_t k) {
  double total = 0.0;
  double term = 1.0;  // C(t + j - 1, j)
  for (std::size_t j = 0; j <= k; ++j) {
    if (j > 0) term *= static_cast<double>(t + j - 1) / static_cast<double>(j);
    total += term;
  }
  return total;
}

}  // namespace

std::vector<StepCollection> enumerate_step_collections(Step n, StructureKind kind,
                                                       std::size_t max_blocks,
                                                       Count max_multiplicity) {
  if (n > kMaxEnumerationSteps) {
    throw CapacityError("enumeration limited to n <= " +
                        std::to_string(kMaxEnumerationSteps));
  }
  std::vector<StepCollection> out;
  if (kind == StructureKind::Partition) {
    if (bell_number(n) > kEnumerationLimit) throw CapacityError("too many partitions");
    enumerate_set_partitions(n, max_blocks, out);
    return out;
  }
  const Count max_mult = kind == StructureKind::FeatureAllocation ? 1 : max_multiplicity;
  if (max_mult == 0) throw ValidationError("max_multiplicity must be positive");
  const auto types = block_types(n, max_mult);
  if (multiset_count(types.size(), max_blocks) > static_cast<double>(kEnumerationLimit)) {
    throw CapacityError("enumeration would exceed " + std::to_string(kEnumerationLimit) +
                        " collections");
  }
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t first) {
    std::vector<Block> blocks;
    blocks.reserve(chosen.size());
    for (auto t : chosen) blocks.push_back(types[t]);
    out.emplace_back(std::move(blocks), n);
    if (chosen.size() == max_blocks) return;
    for (std::size_t t = first; t < types.size(); ++t) {
      chosen.push_back(t);
      rec(t);
      chosen.pop_back();
    }
  };
  rec(0);
  return out;
}

double paintbox_partition_probability(const Paintbox& pb, const StepCollection& c,
                                      double tail_tolerance) {
  if (classify(c) != StructureKind::Partition) {
    throw KindError("paintbox_partition_probability needs a partition");
  }
  if (pb.tail_mass() > tail_tolerance) {
    throw ParameterError("paintbox carries tail mass; exact partition law undefined");
  }
  const auto& probs = pb.probabilities();
  // The law depends on block sizes only; a fixed order keeps it bitwise
  // invariant under step permutations.
  std::vector<std::size_t> sizes;
  for (const auto& b : c.blocks()) sizes.push_back(b.size());
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  if (sizes.size() > probs.size()) return 0.0;
  std::vector<bool> used(probs.size(), false);
  std::function<double(std::size_t)> rec = [&](std::size_t b) -> double {
    if (b == sizes.size()) return 1.0;
    const double size = static_cast<double>(sizes[b]);
    double total = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
      if (used[k]) continue;
      used[k] = true;
      total += std::pow(probs[k], size) * rec(b + 1);
      used[k] = false;
    }
    return total;
  };
  return rec(0);
}

Count bell_number(Step n) {
  // Bell triangle.
  std::vector<Count> row{1};
  for (Step i = 0; i < n; ++i) {
    std::vector<Count> next{row.back()};
    for (Count v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

}  // namespace edgex
