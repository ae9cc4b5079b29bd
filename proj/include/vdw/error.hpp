#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vdw {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed compact coloring or dataset text. `position` is a 0-based
// character offset into the input (or a line number for dataset files).
struct parse_error : error {
  parse_error(const std::string& what, std::size_t pos)
    : error(what + " (at " + std::to_string(pos) + ")"), position(pos) {}
  std::size_t position;
};

struct invalid_instance : error {
  using error::error;
};

struct color_out_of_range : error {
  using error::error;
};

// Inputs outside the k > r >= 2 range the closed-form evaluator covers.
struct hypothesis_violated : error {
  using error::error;
};

struct range_too_large : error {
  using error::error;
};

struct malformed_family : error {
  using error::error;
};

struct budget_exhausted : error {
  using error::error;
};

}  // namespace vdw
