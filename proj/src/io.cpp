#include "edgex/io.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "edgex/error.hpp"

namespace edgex {

using nlohmann::json;

void write_jsonl(std::ostream& os, const StepAugmentedGraph& g, const json& header_extra) {
  json header = header_extra;
  header["num_steps"] = g.num_steps();
  os << header.dump() << '\n';
  for (const auto& ev : g.events()) {
    json line;
    line["step"] = ev.step;
    line["u"] = ev.edge.u().value;
    line["v"] = ev.edge.v().value;
    line["mult"] = ev.multiplicity;
    os << line.dump() << '\n';
  }
}

namespace {

std::uint64_t positive_field(const json& j, const char* key, std::size_t line_no) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_number_integer()) {
    throw ValidationError("line " + std::to_string(line_no) + ": missing integer field '" +
                          key + "'");
  }
  const auto v = it->get<std::int64_t>();
  if (v < 1) {
    throw ValidationError("line " + std::to_string(line_no) + ": field '" + key +
                          "' must be positive");
  }
  return static_cast<std::uint64_t>(v);
}

}  // namespace

StepAugmentedGraph read_jsonl(std::istream& is, json* header_out) {
  std::string line;
  std::size_t line_no = 0;
  json header;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    header = json::parse(line, nullptr, false);
    break;
  }
  if (header.is_discarded() || !header.is_object() || !header.contains("num_steps") ||
      !header["num_steps"].is_number_integer() || header["num_steps"].get<std::int64_t>() < 0) {
    throw ValidationError("JSONL graph must start with a {\"num_steps\": int} header");
  }
  const auto num_steps = header["num_steps"].get<Step>();
  std::vector<EdgeEvent> events;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw ValidationError("line " + std::to_string(line_no) + ": not a JSON object");
    }
    const auto step = positive_field(j, "step", line_no);
    const auto u = positive_field(j, "u", line_no);
    const auto v = positive_field(j, "v", line_no);
    const auto mult = positive_field(j, "mult", line_no);
    events.push_back(EdgeEvent{Edge(u, v), step, mult});
  }
  if (header_out) *header_out = header;
  return StepAugmentedGraph(std::move(events), num_steps);
}

json to_json(const StepCollection& c) {
  return json{{"n", c.num_steps()}, {"blocks", c.blocks()}};
}

StepCollection collection_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("blocks")) {
    throw ValidationError("step collection JSON needs 'n' and 'blocks'");
  }
  try {
    return StepCollection(j.at("blocks").get<std::vector<Block>>(), j.at("n").get<Step>());
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed step collection: ") + e.what());
  }
}

}  // namespace edgex
