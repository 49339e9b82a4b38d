#pragma once

#include <stdexcept>
#include <string>

namespace seqlearn {

// Raised when a belief update conditions on an action that has zero
// probability under the prescription, i.e. the observation cannot occur.
struct unreachable_observation : std::runtime_error {
  explicit unreachable_observation(const std::string& what)
      : std::runtime_error(what) {}
};

// Raised when an iterative solver fails to reach its tolerance.
struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace seqlearn
