#pragma once

#include <stdexcept>
#include <string>

namespace homlab {

// Mismatched or invalid (g, L) data between operands.
struct ParamError : std::invalid_argument {
  explicit ParamError(const std::string& what) : std::invalid_argument(what) {}
};

// Invalid caller input (repeated vectors, bad word syntax, ...).
struct InputError : std::invalid_argument {
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A configured size budget was exceeded; callers map this to "skipped-budget".
struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Modular computations disagreed between primes (should not survive a retry).
struct ModularInconsistency : std::runtime_error {
  explicit ModularInconsistency(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace homlab
