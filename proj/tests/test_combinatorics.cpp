#include <doctest.h>

#include <random>
#include <set>

#include "edgex/combinatorics.hpp"
#include "edgex/error.hpp"
#include "oracles.hpp"

using namespace edgex;

TEST_CASE("classify") {
  SUBCASE("C_4 of the step-augmentation example is a feature allocation") {
    const StepCollection c({{1, 3}, {1}, {3}, {4}}, 4);
    // Oracle: count occurrences per step; step 2 never occurs and steps 1 and
    // 3 occur twice, so this is not a partition, and no block repeats a step.
    std::map<Step, int> occ;
    for (const auto& b : c.blocks()) {
      for (Step s : b) ++occ[s];
    }
    CHECK(occ[1] == 2);
    CHECK(occ[2] == 0);
    CHECK(classify(c) == StructureKind::FeatureAllocation);
  }
  CHECK(classify(StepCollection({{1}, {2}, {3}}, 3)) == StructureKind::Partition);
  CHECK(classify(StepCollection({{1, 1}, {2}}, 2)) == StructureKind::TraitAllocation);
  CHECK(classify(StepCollection({}, 0)) == StructureKind::Partition);
  CHECK(classify(StepCollection({}, 2)) == StructureKind::FeatureAllocation);
}

TEST_CASE("step permutations") {
  CHECK_THROWS_AS(StepPermutation({1, 1, 2}), ValidationError);
  CHECK_THROWS_AS(StepPermutation({0, 1}), ValidationError);
  CHECK(StepPermutation::all(3).size() == 6);

  const StepCollection c({{1, 3}, {1}, {3}, {4}}, 4);
  SUBCASE("identity") { CHECK(permute_steps(c, StepPermutation::identity(4)) == c); }
  SUBCASE("swap(1,4) applied elementwise") {
    // Oracle: map each element by hand, {1,3}->{4,3}, {1}->{4}, {3}->{3}, {4}->{1}.
    const StepCollection expected({{4, 3}, {4}, {3}, {1}}, 4);
    CHECK(permute_steps(c, StepPermutation::transposition(4, 1, 4)) == expected);
  }
  SUBCASE("size mismatch") {
    CHECK_THROWS_AS(permute_steps(c, StepPermutation::identity(3)), ValidationError);
  }
}

TEST_CASE("permutation invariants on enumerated collections") {
  for (Step n = 1; n <= 4; ++n) {
    const auto perms = StepPermutation::all(n);
    for (auto kind : {StructureKind::Partition, StructureKind::FeatureAllocation,
                      StructureKind::TraitAllocation}) {
      const auto all = enumerate_step_collections(n, kind, 2, 2);
      for (const auto& c : all) {
        for (const auto& pi : perms) {
          const auto pc = permute_steps(c, pi);
          REQUIRE(classify(pc) == classify(c));
          REQUIRE(permute_steps(pc, pi.inverse()) == c);
        }
      }
    }
  }
}

TEST_CASE("enumerate_step_collections") {
  SUBCASE("partitions are counted by Bell numbers") {
    for (Step n = 0; n <= 6; ++n) {
      const auto parts = enumerate_step_collections(n, StructureKind::Partition, n);
      CHECK(parts.size() == bell_number(n));
      for (const auto& c : parts) CHECK(classify(c) == StructureKind::Partition);
      CHECK(std::set<StepCollection>(parts.begin(), parts.end()).size() == parts.size());
    }
    CHECK(bell_number(3) == 5);
    CHECK(bell_number(6) == 203);
  }
  SUBCASE("n = 1 partition") {
    const auto parts = enumerate_step_collections(1, StructureKind::Partition, 1);
    REQUIRE(parts.size() == 1);
    CHECK(parts[0] == StepCollection({{1}}, 1));
  }
  SUBCASE("partitions of [3] agree with the label-sequence oracle") {
    // Every partition of [3] has positive mass under a 3-colour paintbox.
    const auto law = oracle::categorical_partition_law({0.5, 0.3, 0.2}, 3);
    const auto parts = enumerate_step_collections(3, StructureKind::Partition, 3);
    CHECK(law.size() == parts.size());
    for (const auto& c : parts) CHECK(law.count(c) == 1);
  }
  SUBCASE("feature allocations of [2] with at most two blocks") {
    // Oracle: multisets of size <= 2 over the nonempty subsets {1},{2},{1,2}.
    const std::vector<Block> types{{1}, {2}, {1, 2}};
    std::set<StepCollection> expected{StepCollection({}, 2)};
    for (std::size_t a = 0; a < types.size(); ++a) {
      expected.insert(StepCollection({types[a]}, 2));
      for (std::size_t b = a; b < types.size(); ++b) {
        expected.insert(StepCollection({types[a], types[b]}, 2));
      }
    }
    const auto got = enumerate_step_collections(2, StructureKind::FeatureAllocation, 2);
    CHECK(got.size() == 10);
    CHECK(std::set<StepCollection>(got.begin(), got.end()) == expected);
    CHECK(expected.count(StepCollection({{1}, {2}}, 2)));
    CHECK(expected.count(StepCollection({{1}, {1, 2}}, 2)));
  }
  SUBCASE("trait allocations include repeated steps") {
    const auto got = enumerate_step_collections(1, StructureKind::TraitAllocation, 1, 2);
    // {}, {{1}}, {{1,1}}
    CHECK(got.size() == 3);
  }
  SUBCASE("capacity guards") {
    CHECK_THROWS_AS(enumerate_step_collections(7, StructureKind::Partition, 7), CapacityError);
    CHECK_THROWS_AS(enumerate_step_collections(6, StructureKind::FeatureAllocation, 20),
                    CapacityError);
  }
}

TEST_CASE("paintbox partition probability") {
  const Paintbox pb({0.7, 0.3});
  SUBCASE("two-colour fixture matches label enumeration") {
    const auto law = oracle::categorical_partition_law({0.7, 0.3}, 3);
    const StepCollection c({{1, 2}, {3}}, 3);
    CHECK(law.at(c) == doctest::Approx(0.21).epsilon(1e-12));
    CHECK(paintbox_partition_probability(pb, c) == doctest::Approx(0.21).epsilon(1e-12));
    const StepCollection swapped({{1, 3}, {2}}, 3);
    CHECK(paintbox_partition_probability(pb, swapped) ==
          doctest::Approx(0.21).epsilon(1e-12));
    for (const auto& [part, p] : law) {
      CHECK(paintbox_partition_probability(pb, part) == doctest::Approx(p).epsilon(1e-12));
    }
  }
  SUBCASE("one colour forces one block") {
    const Paintbox one({1.0});
    CHECK(paintbox_partition_probability(one, StepCollection({{1, 2, 3, 4}}, 4)) == 1.0);
    CHECK(paintbox_partition_probability(one, StepCollection({{1, 2}, {3}}, 3)) == 0.0);
  }
  SUBCASE("sums to one and is permutation invariant") {
    const Paintbox three({0.5, 0.25, 0.15, 0.1});
    for (Step n = 1; n <= 5; ++n) {
      double total = 0.0;
      const auto perms = StepPermutation::all(n);
      for (const auto& c : enumerate_step_collections(n, StructureKind::Partition, n)) {
        const double p = paintbox_partition_probability(three, c);
        total += p;
        for (const auto& pi : perms) {
          REQUIRE(paintbox_partition_probability(three, permute_steps(c, pi)) ==
                  doctest::Approx(p).epsilon(1e-14));
        }
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(paintbox_partition_probability(pb, StepCollection({{1}, {1}}, 1)),
                    KindError);
    CHECK_THROWS_AS(paintbox_partition_probability(Paintbox({0.5, 0.3}),
                                                   StepCollection({{1}}, 1)),
                    ParameterError);
    CHECK_THROWS_AS(Paintbox({0.7, 0.6}), ParameterError);
    CHECK_THROWS_AS(Paintbox({0.0, 0.6}), ParameterError);
  }
  CHECK(Paintbox({0.5, 0.3}).tail_mass() == doctest::Approx(0.2));
}
