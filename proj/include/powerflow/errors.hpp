#pragma once

#include <stdexcept>
#include <string>

#include "powerflow/units.hpp"

namespace powerflow {

// Error taxonomy maps onto CLI exit codes:
//   ValidationError -> 3 (bad input)
//   InfeasibleError -> 2 (no schedule meets the deadline)
//   CapacityError   -> 4 (oracle label budget exhausted)
//   ModelError      -> programmer/contract misuse; surfaces as 3 from the CLI.

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ValidationError : Error {
  using Error::Error;
};

struct ModelError : Error {
  using Error::Error;
};

struct InfeasibleError : Error {
  i64 min_t_infer_ps = -1;  // best achievable latency when known, else -1
  explicit InfeasibleError(const std::string& msg, i64 min_t = -1)
      : Error(msg), min_t_infer_ps(min_t) {}
};

struct CapacityError : Error {
  using Error::Error;
};

}  // namespace powerflow
