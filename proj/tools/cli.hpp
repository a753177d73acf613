#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace kswap::cli {

// Process exit codes.
enum Exit : int {
  ok = 0,
  not_locally_optimal = 1,  // verify found an improving move
  usage = 2,                // bad flags or malformed input documents
  budget = 3,               // a work budget was exceeded
  validation = 4,           // a trace check failed or an oracle disagreed
  zero_delta = 5,           // delta_min is exactly zero
  internal = 6,             // iteration cap reached or other unexpected error
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kswap::cli
