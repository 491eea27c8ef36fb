#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace lcembed {

using Complex = std::complex<double>;

// Malformed or out-of-contract input. CLI maps this to exit code 1.
struct InputError : std::invalid_argument {
  explicit InputError(const std::string& msg) : std::invalid_argument(msg) {}
};

// A mathematical hypothesis of the requested analysis is violated
// (e.g. measure mass sitting on the spectrum of the inner function).
// CLI maps this to exit code 2.
struct HypothesisError : std::runtime_error {
  explicit HypothesisError(const std::string& msg) : std::runtime_error(msg) {}
};

// Worker budget for parallel matrix assembly, from LCEMBED_THREADS (default 1).
int thread_budget();

}  // namespace lcembed
