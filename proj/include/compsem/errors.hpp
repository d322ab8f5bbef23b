#pragma once

#include <stdexcept>

namespace compsem {

// Malformed or unusable input: files, formats, datasets.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical failure: non-convergence, degenerate statistics.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace compsem
