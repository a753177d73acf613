#include "kswap/trace.hpp"

#include <string>

#include <json.hpp>

#include "kswap/error.hpp"

namespace kswap {

using nlohmann::json;

std::string_view to_string(MoveType type) {
  switch (type) {
    case MoveType::type1: return "type1";
    case MoveType::type2: return "type2";
    case MoveType::unclassified: return "unclassified";
  }
  return "unclassified";
}

MoveType parse_move_type(std::string_view text) {
  if (text == "type1") return MoveType::type1;
  if (text == "type2") return MoveType::type2;
  if (text == "unclassified") return MoveType::unclassified;
  throw Error(ErrorCode::malformed_document, "unknown move_type '" + std::string(text) + "'");
}

namespace {

json exact_array(const std::vector<Exact>& values, int scale) {
  json out = json::array();
  for (const auto v : values) out.push_back(format_exact(v, scale));
  return out;
}

std::vector<Exact> parse_exact_array(const json& values, int scale) {
  std::vector<Exact> out;
  for (const auto& v : values) out.push_back(parse_exact(v.get<std::string>(), scale));
  return out;
}

}  // namespace

std::string write_trace_record(const TraceRecord& r, int scale) {
  // ordered_json keeps the documented field order in the output.
  nlohmann::ordered_json doc;
  doc["t"] = r.t;
  doc["move"] = {{"i", r.move.source}, {"ip", r.move.target}, {"A", r.move.from_source}, {"B", r.move.from_target}};
  doc["makespan"] = format_exact(r.makespan, scale);
  doc["num_critical"] = r.num_critical;
  doc["phi"] = format_exact(r.phi, scale);
  doc["delta"] = format_exact(r.delta, scale);
  doc["move_type"] = std::string(to_string(r.move_type));
  doc["gamma_l"] = r.gamma_l;
  doc["loads"] = exact_array(r.loads, scale);
  doc["loads_after"] = exact_array(r.loads_after, scale);
  return doc.dump();
}

TraceRecord parse_trace_record(std::string_view line, int scale) {
  try {
    const json doc = json::parse(line);
    TraceRecord r;
    r.t = doc.at("t").get<std::uint64_t>();
    const auto& mv = doc.at("move");
    r.move = {mv.at("i").get<MachineId>(), mv.at("ip").get<MachineId>(), mv.at("A").get<std::vector<JobId>>(),
              mv.at("B").get<std::vector<JobId>>()};
    r.makespan = parse_exact(doc.at("makespan").get<std::string>(), scale);
    r.num_critical = doc.at("num_critical").get<int>();
    r.phi = parse_exact(doc.at("phi").get<std::string>(), scale);
    r.delta = parse_exact(doc.at("delta").get<std::string>(), scale);
    r.move_type = parse_move_type(doc.at("move_type").get<std::string>());
    r.gamma_l = doc.at("gamma_l").get<std::vector<MachineId>>();
    r.loads = parse_exact_array(doc.at("loads"), scale);
    r.loads_after = parse_exact_array(doc.at("loads_after"), scale);
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::malformed_document, std::string("bad trace record: ") + e.what());
  }
}

std::vector<TraceRecord> read_trace(std::istream& in, int scale) {
  std::vector<TraceRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_trace_record(line, scale));
  }
  return out;
}

}  // namespace kswap
