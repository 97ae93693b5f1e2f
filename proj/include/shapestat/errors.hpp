#pragma once

#include <stdexcept>
#include <string>

namespace shapestat {

// Bad user input: malformed files, out-of-range parameters, empty samples.
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A numerical procedure could not produce a valid result (degenerate data,
// non-convergence, invalid density).
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace shapestat
