#pragma once

#include <stdexcept>
#include <string>

namespace tline {

/// Base class for all library errors.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid user input: bad mesh parameters, malformed config, out-of-range values.
class validation_error : public error {
 public:
  explicit validation_error(const std::string& what) : error(what) {}
};

/// A linear solve hit a zero pivot. Carries the offending pivot index.
class singular_system_error : public error {
 public:
  singular_system_error(const std::string& what, std::size_t pivot)
      : error(what), pivot_index(pivot) {}
  std::size_t pivot_index;
};

/// The conductor is fully degraded over some region; the mechanical or
/// electrical system has no stiffness left there.
class material_severed_error : public error {
 public:
  material_severed_error(const std::string& what, std::size_t element)
      : error(what), element_index(element) {}
  std::size_t element_index;
};

}  // namespace tline
