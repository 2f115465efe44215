#include "edgex/graph_core.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <string>

#include "edgex/error.hpp"
#include "edgex/rng.hpp"

namespace edgex {

std::ostream& operator<<(std::ostream& os, NodeId id) { return os << id.value; }

std::ostream& operator<<(std::ostream& os, const Edge& e) {
  return os << '{' << e.u() << ',' << e.v() << '}';
}

std::size_t EdgeHash::operator()(const Edge& e) const noexcept {
  return static_cast<std::size_t>(mix64(e.u().value * 0x9e3779b97f4a7c15ULL ^
                                        mix64(e.v().value)));
}

namespace {

bool event_order(const EdgeEvent& a, const EdgeEvent& b) {
  return std::tie(a.step, a.edge) < std::tie(b.step, b.edge);
}

}  // namespace

StepAugmentedGraph::StepAugmentedGraph(std::vector<EdgeEvent> events,
                                       Step num_steps)
    : num_steps_(num_steps) {
  for (const auto& ev : events) {
    if (ev.step < 1 || ev.step > num_steps) {
      throw ValidationError("event step " + std::to_string(ev.step) +
                            " outside [1, " + std::to_string(num_steps) + "]");
    }
    if (ev.multiplicity == 0) {
      throw ValidationError("event multiplicity must be positive");
    }
    if (ev.edge.u().value == 0) {
      throw ValidationError("node labels must be positive");
    }
  }
  std::sort(events.begin(), events.end(), event_order);
  for (auto& ev : events) {
    if (!events_.empty() && events_.back().step == ev.step &&
        events_.back().edge == ev.edge) {
      events_.back().multiplicity += ev.multiplicity;
    } else {
      events_.push_back(ev);
    }
  }
}

Count StepAugmentedGraph::total_multiplicity() const {
  Count total = 0;
  for (const auto& ev : events_) total += ev.multiplicity;
  return total;
}

void StepAugmentedGraph::append_sorted_step(
    std::span<const std::pair<Edge, Count>> delta) {
  ++num_steps_;
  for (const auto& [edge, mult] : delta) {
    events_.push_back(EdgeEvent{edge, num_steps_, mult});
  }
}

bool canonical_block_less(const Block& a, const Block& b) {
  if (a.front() != b.front()) return a.front() < b.front();
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

StepCollection::StepCollection(std::vector<Block> blocks, Step num_steps)
    : blocks_(std::move(blocks)), num_steps_(num_steps) {
  for (auto& block : blocks_) {
    if (block.empty()) throw ValidationError("step collection blocks must be nonempty");
    std::sort(block.begin(), block.end());
    if (block.front() < 1 || block.back() > num_steps_) {
      throw ValidationError("block step outside [1, " +
                            std::to_string(num_steps_) + "]");
    }
  }
  std::sort(blocks_.begin(), blocks_.end(), canonical_block_less);
}

std::ostream& operator<<(std::ostream& os, const StepCollection& c) {
  os << '{';
  for (std::size_t i = 0; i < c.blocks().size(); ++i) {
    if (i) os << ',';
    os << '{';
    const auto& b = c.blocks()[i];
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (j) os << ',';
      os << b[j];
    }
    os << '}';
  }
  return os << "} n=" << c.num_steps();
}

std::set<NodeId> active_nodes(const StepAugmentedGraph& g) {
  std::set<NodeId> nodes;
  for (const auto& ev : g.events()) {
    nodes.insert(ev.edge.u());
    nodes.insert(ev.edge.v());
  }
  return nodes;
}

StepAugmentedGraph restrict_to(const StepAugmentedGraph& g, Step m) {
  if (m > g.num_steps()) {
    throw RangeError("restriction step " + std::to_string(m) +
                     " exceeds num_steps " + std::to_string(g.num_steps()));
  }
  // Events are sorted by step, so the prefix is contiguous.
  auto end = std::partition_point(g.events().begin(), g.events().end(),
                                  [m](const EdgeEvent& ev) { return ev.step <= m; });
  return StepAugmentedGraph(std::vector<EdgeEvent>(g.events().begin(), end), m);
}

StepCollection step_collection(const StepAugmentedGraph& g) {
  std::map<Edge, Block> by_edge;
  for (const auto& ev : g.events()) {
    auto& block = by_edge[ev.edge];
    block.insert(block.end(), ev.multiplicity, ev.step);
  }
  std::vector<Block> blocks;
  blocks.reserve(by_edge.size());
  for (auto& [edge, block] : by_edge) blocks.push_back(std::move(block));
  return StepCollection(std::move(blocks), g.num_steps());
}

StepCollection restrict_to(const StepCollection& c, Step m) {
  if (m > c.num_steps()) {
    throw RangeError("restriction step exceeds num_steps");
  }
  std::vector<Block> blocks;
  for (const auto& b : c.blocks()) {
    Block kept;
    for (Step s : b) {
      if (s <= m) kept.push_back(s);
    }
    if (!kept.empty()) blocks.push_back(std::move(kept));
  }
  return StepCollection(std::move(blocks), m);
}

StepAugmentedGraph merge_step(StepAugmentedGraph g,
                              std::span<const std::pair<Edge, Count>> new_events) {
  std::map<Edge, Count> delta;
  for (const auto& [edge, mult] : new_events) {
    if (mult == 0) throw ValidationError("merge_step: multiplicity must be positive");
    if (edge.u().value == 0) throw ValidationError("node labels must be positive");
    delta[edge] += mult;
  }
  std::vector<std::pair<Edge, Count>> sorted(delta.begin(), delta.end());
  g.append_sorted_step(sorted);
  return g;
}

StepAugmentedGraph relabel_nodes(const StepAugmentedGraph& g,
                                 const std::function<NodeId(NodeId)>& relabel) {
  std::vector<EdgeEvent> events;
  events.reserve(g.events().size());
  for (const auto& ev : g.events()) {
    events.push_back(
        EdgeEvent{Edge(relabel(ev.edge.u()), relabel(ev.edge.v())), ev.step,
                  ev.multiplicity});
  }
  return StepAugmentedGraph(std::move(events), g.num_steps());
}

}  // namespace edgex
