#pragma once

#include <stdexcept>
#include <string>

namespace nlslab {

// Bad input or violated precondition. The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The numerics could not deliver a trustworthy answer (bracket loss,
// underresolved data, failed self-checks). The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nlslab
