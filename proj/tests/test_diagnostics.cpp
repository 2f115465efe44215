#include <doctest.h>

#include <cmath>
#include <sstream>

#include "edgex/diagnostics.hpp"
#include "edgex/error.hpp"
#include "oracles.hpp"

using namespace edgex;

namespace {

GrowthTrace power_law_trace(double coefficient, double exponent) {
  GrowthTrace t;
  for (Count v = 10; v <= 200; v += 5) {
    const auto e = static_cast<Count>(std::llround(coefficient * std::pow(v, exponent)));
    t.rows.push_back({v, v, e, e});
  }
  return t;
}

ModelSpec spec_for(ModelFamily family, Step steps, std::uint64_t seed) {
  ModelSpec s;
  s.family = family;
  s.num_steps = steps;
  s.seed = seed;
  return s;
}

}  // namespace

TEST_CASE("growth trace") {
  SUBCASE("step-augmentation example") {
    const StepAugmentedGraph g({{Edge(2, 3), 1, 1},
                                {Edge(1, 4), 4, 1},
                                {Edge(3, 6), 1, 1},
                                {Edge(6, 6), 3, 1},
                                {Edge(3, 6), 3, 1}},
                               4);
    // Hand expansion: E_1 = E_2 = {{2,3},{3,6}}, E_3 adds {6,6},{3,6},
    // E_4 adds {1,4}.
    const std::vector<GrowthRow> expected{
        {1, 3, 2, 2}, {2, 3, 2, 2}, {3, 3, 4, 3}, {4, 5, 5, 4}};
    CHECK(growth_trace(g).rows == expected);
  }
  SUBCASE("empty graph") {
    const auto t = growth_trace(StepAugmentedGraph(3));
    REQUIRE(t.rows.size() == 3);
    for (const auto& r : t.rows) {
      CHECK(r.active_nodes == 0);
      CHECK(r.edges_mult == 0);
    }
  }
  SUBCASE("complete dense baseline") {
    auto s = spec_for(ModelFamily::DenseBaseline, 30, 1);
    s.baseline_edge_prob = 1.0;
    for (const auto& r : growth_trace(sample_dense_baseline(s)).rows) {
      CHECK(r.edges_mult == r.step * (r.step + 1) / 2);
      CHECK(r.active_nodes == r.step);
    }
  }
  SUBCASE("monotone for sampled graphs") {
    const auto w = WeightMeasure::fixed({0.6, 0.5, 0.3, 0.2, 0.1});
    for (auto family : {ModelFamily::SingleEdgePerStep, ModelFamily::BernoulliFrequency,
                        ModelFamily::PoissonTrait}) {
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto t = growth_trace(sample(spec_for(family, 40, seed), w));
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
          REQUIRE(t.rows[i].edges_distinct <= t.rows[i].edges_mult);
          if (i > 0) {
            REQUIRE(t.rows[i].active_nodes >= t.rows[i - 1].active_nodes);
            REQUIRE(t.rows[i].edges_mult >= t.rows[i - 1].edges_mult);
            REQUIRE(t.rows[i].edges_distinct >= t.rows[i - 1].edges_distinct);
          }
        }
      }
    }
  }
  SUBCASE("csv") {
    std::ostringstream os;
    GrowthTrace t;
    t.rows.push_back({1, 2, 3, 1});
    write_growth_csv(os, t);
    CHECK(os.str() == "step,active_nodes,edges_mult,edges_distinct\n1,2,3,1\n");
  }
}

TEST_CASE("fit_exponent") {
  SUBCASE("exact power laws") {
    GrowthTrace quadratic;
    GrowthTrace linear;
    for (Count v = 10; v <= 400; v += 7) {
      quadratic.rows.push_back({v, v, v * v, v * v});
      linear.rows.push_back({v, v, 3 * v, 3 * v});
    }
    const auto q = fit_exponent(quadratic);
    CHECK(std::abs(q.slope - 2.0) < 1e-9);
    CHECK(q.r_squared == doctest::Approx(1.0));
    CHECK(q.stderr_slope < 1e-9);
    CHECK(std::abs(fit_exponent(linear).slope - 1.0) < 1e-9);
    CHECK(fit_exponent(linear).intercept == doctest::Approx(std::log(3.0)));
  }
  SUBCASE("rows below ten active nodes are ignored") {
    auto t = power_law_trace(1.0, 1.5);
    t.rows.insert(t.rows.begin(), GrowthRow{0, 3, 1000, 1000});
    const auto est = fit_exponent(t);
    CHECK(est.fit_range.first == 10);
    CHECK(est.rows_used == t.rows.size() - 1);
    CHECK(est.slope == doctest::Approx(1.5).epsilon(1e-3));
  }
  SUBCASE("distinct count") {
    GrowthTrace t;
    for (Count v = 10; v <= 100; ++v) t.rows.push_back({v, v, v * v, v});
    CHECK(fit_exponent(t, EdgeCount::Distinct).slope == doctest::Approx(1.0));
    CHECK(fit_exponent(t, EdgeCount::Multiplicity).slope == doctest::Approx(2.0));
  }
  SUBCASE("insufficient rows") {
    GrowthTrace t;
    for (Count v = 5; v <= 13; ++v) t.rows.push_back({v, v, v, v});
    CHECK_THROWS_AS(fit_exponent(t), CapacityError);
  }
  SUBCASE("dense baseline p = 0.5 grows quadratically") {
    double total = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto s = spec_for(ModelFamily::DenseBaseline, 200, seed);
      s.baseline_edge_prob = 0.5;
      total += fit_exponent(growth_trace(sample_dense_baseline(s))).slope;
    }
    const double mean = total / 20.0;
    CHECK(mean >= 1.9);
    CHECK(mean <= 2.1);
  }
}

TEST_CASE("degree summary") {
  SUBCASE("multiplicity multiplies") {
    const auto d = degree_summary(StepAugmentedGraph({{Edge(1, 2), 1, 3}}, 1));
    CHECK(d.degree.at(NodeId(1)) == 3);
    CHECK(d.degree.at(NodeId(2)) == 3);
    CHECK(d.multiplicity_histogram.at(3) == 1);
    CHECK(d.max_degree == 3);
  }
  SUBCASE("four-edge fixture") {
    const StepAugmentedGraph g({{Edge(2, 3), 1, 1},
                                {Edge(1, 4), 1, 1},
                                {Edge(3, 6), 1, 1},
                                {Edge(6, 6), 1, 1},
                                {Edge(3, 6), 2, 1}},
                               2);
    const auto d = degree_summary(g);
    CHECK(d.degree.at(NodeId(3)) == 3);
    CHECK(d.degree.at(NodeId(6)) == 4);
    CHECK(d.degree_histogram.at(1) == 3);
  }
  SUBCASE("empty graph") {
    const auto d = degree_summary(StepAugmentedGraph(2));
    CHECK(d.degree.empty());
    CHECK(d.degree_histogram.empty());
    CHECK(d.multiplicity_histogram.empty());
  }
  SUBCASE("handshake identity") {
    const auto w = WeightMeasure::fixed({0.6, 0.5, 0.3, 0.2});
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const auto g = sample_poisson_trait_model(spec_for(ModelFamily::PoissonTrait, 12, seed), w);
      const auto d = degree_summary(g);
      Count sum = 0;
      for (const auto& [node, deg] : d.degree) sum += deg;
      REQUIRE(sum == 2 * g.total_multiplicity());
    }
  }
}

TEST_CASE("exchangeability test") {
  const auto w = WeightMeasure::fixed({0.7, 0.3});
  SUBCASE("single-edge fixture: exact discrepancy zero") {
    const auto spec = spec_for(ModelFamily::SingleEdgePerStep, 3, 2024);
    const auto r = exchangeability_test(spec, w, 20000, StepPermutation::transposition(3, 1, 3));
    REQUIRE(r.exact_max_discrepancy);
    CHECK(*r.exact_max_discrepancy <= 1e-15);
    CHECK(r.passed);
  }
  SUBCASE("identity permutation has zero statistic") {
    const auto spec = spec_for(ModelFamily::PoissonTrait, 3, 2025);
    const auto r = exchangeability_test(spec, w, 5000, StepPermutation::identity(3));
    CHECK(r.statistic == 0.0);
    CHECK(r.dof == 0);
    CHECK(*r.exact_max_discrepancy == 0.0);
    CHECK(r.passed);
  }
  SUBCASE("non-exchangeable control fails") {
    // Step 1 always draws edge {1,1}; later steps follow the pair law.
    const auto spec = spec_for(ModelFamily::SingleEdgePerStep, 3, 2026);
    auto control = [&](std::uint64_t r) {
      ModelSpec s = spec;
      s.seed = derive_seed(spec.seed, StreamTag::Replicate, r);
      auto g = sample_single_edge_model(s, w);
      std::vector<EdgeEvent> events = g.events();
      events.front().edge = Edge(1, 1);
      return step_collection(StepAugmentedGraph(events, g.num_steps()));
    };
    // Oracle law of the control: the first draw is forced, the rest are iid.
    const auto pair = normalize(w);
    const double probs[] = {pair.pair_probability(0, 0), pair.pair_probability(0, 1),
                            pair.pair_probability(1, 1)};
    std::map<StepCollection, double> law;
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) {
        std::map<int, Block> groups;
        groups[0].push_back(1);
        groups[b].push_back(2);
        groups[c].push_back(3);
        std::vector<Block> blocks;
        for (auto& [_, blk] : groups) blocks.push_back(blk);
        law[StepCollection(blocks, 3)] += probs[b] * probs[c];
      }
    }
    const CollectionLaw exact = [&](const StepCollection& c) {
      auto it = law.find(c);
      return it == law.end() ? 0.0 : it->second;
    };
    const auto r = exchangeability_test(control, 3, 100000, StepPermutation::transposition(3, 1, 2),
                                        exact);
    CHECK(r.p_value < 0.01);
    CHECK(*r.exact_max_discrepancy > 0.01);
    CHECK_FALSE(r.passed);
  }
  SUBCASE("capacity") {
    CHECK_THROWS_AS(exchangeability_test(spec_for(ModelFamily::SingleEdgePerStep, 5, 1), w, 10,
                                         StepPermutation::identity(5)),
                    CapacityError);
    CHECK_THROWS_AS(exchangeability_test(spec_for(ModelFamily::SingleEdgePerStep, 3, 1),
                                         WeightMeasure::fixed({0.1, 0.2, 0.3, 0.4}), 10,
                                         StepPermutation::identity(3)),
                    CapacityError);
  }
}

TEST_CASE("projectivity test") {
  ModelSpec base;
  base.ggp = GGPParams{1.0, 0.5, 4.0};
  base.trunc_eps = 1e-3;
  base.dust_rate = 0.7;
  base.baseline_edge_prob = 0.3;
  base.clip_q = true;
  for (auto family : {ModelFamily::SingleEdgePerStep, ModelFamily::BernoulliFrequency,
                      ModelFamily::PoissonTrait, ModelFamily::EGPFConstruction,
                      ModelFamily::DenseBaseline}) {
    auto s = base;
    s.family = family;
    s.num_steps = 10;
    s.seed = 31;
    const auto w = family == ModelFamily::DenseBaseline ? WeightMeasure{} : sample_weights(s);
    CAPTURE(to_string(family));
    CHECK(projectivity_test(s, w).passed());

    // Other seeds yield other graphs.
    bool differs = false;
    for (std::uint64_t seed = 32; seed < 42 && !differs; ++seed) {
      auto mutated = s;
      mutated.seed = seed;
      differs = sample(mutated, w) != sample(s, w);
    }
    CHECK(differs);
  }
}

TEST_CASE("chi-square survival function") {
  CHECK(chi_square_sf(0.0, 3.0) == 1.0);
  CHECK(chi_square_sf(3.841458820694124, 1.0) == doctest::Approx(0.05).epsilon(1e-9));
  CHECK(chi_square_sf(5.0, 0.0) == 1.0);
}
