#pragma once

#include <stdexcept>

namespace rowcrop {

/// Scenario/configuration problems (CLI exit code 1).
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File read/write/parse problems (CLI exit code 2).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rowcrop
