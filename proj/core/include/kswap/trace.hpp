#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "kswap/neighborhood.hpp"

namespace kswap {

enum class MoveType { type1, type2, unclassified };

std::string_view to_string(MoveType type);
MoveType parse_move_type(std::string_view text);

/// One improving iteration t. Scalar fields describe the state at the start
/// of the iteration; loads_after is the state after the move, so every
/// record can be checked on its own.
struct TraceRecord {
  std::uint64_t t = 0;
  Move move;
  Exact makespan;
  int num_critical = 0;
  Exact phi;
  Exact delta;  // L_max - L_min
  MoveType move_type = MoveType::unclassified;
  std::vector<MachineId> gamma_l;  // strict split at L_max - delta_min; empty when unclassified
  std::vector<Exact> loads;        // before the move
  std::vector<Exact> loads_after;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

// One JSON object, no trailing newline. Exact values are "n/2^s" strings.
std::string write_trace_record(const TraceRecord& record, int scale_log2);
TraceRecord parse_trace_record(std::string_view line, int scale_log2);

// JSON Lines; blank lines are skipped.
std::vector<TraceRecord> read_trace(std::istream& in, int scale_log2);

}  // namespace kswap
