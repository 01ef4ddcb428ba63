#pragma once

#include <stdexcept>
#include <string>

namespace zptower {

// Working precision was insufficient for a requested computation.
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The computed mathematics contradicts a stated expectation (degree bound,
// dominance, path agreement). Never swallowed: callers surface it.
struct FalsifiedExpectation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input file or option combination.
struct SchemaError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Refusal: the requested run exceeds the configured cost budget.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace zptower
