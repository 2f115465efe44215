#ifndef EDGEX_GRAPH_CORE_HPP
#define EDGEX_GRAPH_CORE_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <set>
#include <span>
#include <utility>
#include <vector>

namespace edgex {

using Step = std::uint64_t;
using Count = std::uint64_t;

// Opaque positive node label. Labels need not be contiguous.
struct NodeId {
  std::uint64_t value = 0;

  constexpr NodeId() = default;
  constexpr explicit NodeId(std::uint64_t v) : value(v) {}

  friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

std::ostream& operator<<(std::ostream& os, NodeId id);

// Unordered pair of endpoints, stored as (min, max). Self-loops allowed.
class Edge {
 public:
  constexpr Edge() = default;
  constexpr Edge(NodeId a, NodeId b)
      : u_(a < b ? a : b), v_(a < b ? b : a) {}
  constexpr Edge(std::uint64_t a, std::uint64_t b)
      : Edge(NodeId(a), NodeId(b)) {}

  constexpr NodeId u() const { return u_; }
  constexpr NodeId v() const { return v_; }
  constexpr bool is_loop() const { return u_ == v_; }

  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;

 private:
  NodeId u_;
  NodeId v_;
};

std::ostream& operator<<(std::ostream& os, const Edge& e);

struct EdgeHash {
  std::size_t operator()(const Edge& e) const noexcept;
};

// `multiplicity` copies of `edge` added at `step`.
struct EdgeEvent {
  Edge edge;
  Step step = 0;
  Count multiplicity = 1;

  friend constexpr bool operator==(const EdgeEvent&,
                                   const EdgeEvent&) = default;
};

// Edge multiset with the step at which each copy arrived.
//
// Events are kept sorted by (step, edge) with at most one event per
// (edge, step); repeats are folded into the multiplicity. The step count is
// stored explicitly because a step may add nothing.
class StepAugmentedGraph {
 public:
  StepAugmentedGraph() = default;
  explicit StepAugmentedGraph(Step num_steps) : num_steps_(num_steps) {}

  // Validates steps and multiplicities, canonicalizes order and coalesces
  // duplicate (edge, step) events. Throws ValidationError.
  StepAugmentedGraph(std::vector<EdgeEvent> events, Step num_steps);

  const std::vector<EdgeEvent>& events() const { return events_; }
  Step num_steps() const { return num_steps_; }
  bool empty() const { return events_.empty(); }

  // Sum of multiplicities.
  Count total_multiplicity() const;

  // Appends a new step. `delta` must already be sorted by edge with unique
  // edges and positive multiplicities; used by the samplers.
  void append_sorted_step(std::span<const std::pair<Edge, Count>> delta);

  friend bool operator==(const StepAugmentedGraph&,
                         const StepAugmentedGraph&) = default;

 private:
  std::vector<EdgeEvent> events_;
  Step num_steps_ = 0;
};

// A sorted multiset of steps.
using Block = std::vector<Step>;

// For each distinct edge, the multiset of steps at which it occurs, with
// endpoint identity forgotten.
//
// Blocks are stored sorted and the block list in canonical order: by smallest
// step, then by size, then lexicographically.
class StepCollection {
 public:
  StepCollection() = default;
  explicit StepCollection(Step num_steps) : num_steps_(num_steps) {}

  // Throws ValidationError on empty blocks or steps outside [1, num_steps].
  StepCollection(std::vector<Block> blocks, Step num_steps);

  const std::vector<Block>& blocks() const { return blocks_; }
  Step num_steps() const { return num_steps_; }
  std::size_t size() const { return blocks_.size(); }

  friend bool operator==(const StepCollection&,
                         const StepCollection&) = default;
  friend auto operator<=>(const StepCollection&,
                          const StepCollection&) = default;

 private:
  std::vector<Block> blocks_;
  Step num_steps_ = 0;
};

std::ostream& operator<<(std::ostream& os, const StepCollection& c);

bool canonical_block_less(const Block& a, const Block& b);

// Union of the endpoints of all events.
std::set<NodeId> active_nodes(const StepAugmentedGraph& g);

// Events with step <= m, with num_steps = m. Throws RangeError if
// m > g.num_steps().
StepAugmentedGraph restrict_to(const StepAugmentedGraph& g, Step m);

StepCollection step_collection(const StepAugmentedGraph& g);

// Restriction of a step collection to steps <= m; emptied blocks vanish.
StepCollection restrict_to(const StepCollection& c, Step m);

// Records `new_events` at step num_steps + 1. Duplicate edges are coalesced
// by summing multiplicities; a zero multiplicity throws ValidationError.
StepAugmentedGraph merge_step(StepAugmentedGraph g,
                              std::span<const std::pair<Edge, Count>> new_events);

// Applies `relabel` to every endpoint.
StepAugmentedGraph relabel_nodes(const StepAugmentedGraph& g,
                                 const std::function<NodeId(NodeId)>& relabel);

}  // namespace edgex

#endif  // EDGEX_GRAPH_CORE_HPP
