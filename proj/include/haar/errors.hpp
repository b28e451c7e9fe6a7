#pragma once

#include <stdexcept>

namespace haar {

/// Request exceeds the enumeration budget (exact sums, table sizes).
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A numeric self-check failed (unitarity residual, z-score gate, ...).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace haar
