#ifndef EDGEX_IO_HPP
#define EDGEX_IO_HPP

#include <iosfwd>
#include <string_view>

#include "edgex/graph_core.hpp"
#include <json.hpp>

namespace edgex {

inline constexpr std::string_view kVersion = "edgex 0.1.0";

// Edge-event JSONL. The first line is a header object carrying "num_steps"
// (extra header keys such as "generator" are preserved by writers and ignored
// by readers); each further line is {"step", "u", "v", "mult"} with u <= v.
// Writers emit events in (step, u, v) order; readers accept any order and
// coalesce repeated (edge, step) lines.
void write_jsonl(std::ostream& os, const StepAugmentedGraph& g,
                 const nlohmann::json& header_extra = nlohmann::json::object());

// Throws ValidationError on a missing header, malformed line or invalid event.
StepAugmentedGraph read_jsonl(std::istream& is, nlohmann::json* header = nullptr);

// {"n": int, "blocks": [[int, ...], ...]}
nlohmann::json to_json(const StepCollection& c);
StepCollection collection_from_json(const nlohmann::json& j);

}  // namespace edgex

#endif  // EDGEX_IO_HPP
