#pragma once

#include <stdexcept>
#include <string>

namespace vsp {

// Exit-code classes used by the CLI: input errors map to 2, refusals to 3.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : InputError {
  int line;
  ParseError(int line_no, const std::string& msg)
      : InputError("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
};

struct ParamError : InputError {
  using InputError::InputError;
};

struct ContractError : InputError {
  using InputError::InputError;
};

// Exact solver would exceed its configured exponential budget.
struct BudgetRefusal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An invariant the construction guarantees failed at runtime.
struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace vsp
