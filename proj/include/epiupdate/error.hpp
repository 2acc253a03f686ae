#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace epi {

/// Malformed structure: non-local model, unknown agent, inconsistent sizes.
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Syntax or resolution failure while reading formulas, literals or files.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}
  explicit ParseError(const std::string& message)
      : std::runtime_error(message), position_(std::string::npos) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A product would exceed the configured world cap.
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Query on a structure where it is undefined (e.g. pointed query on an empty model).
class UndefinedError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr std::size_t kNoLimit = static_cast<std::size_t>(-1);

/// Throws LimitError when `size` exceeds `limit`.
void check_size_limit(std::size_t size, std::size_t limit, const char* what);

}  // namespace epi
