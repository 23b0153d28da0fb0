#pragma once

#include <stdexcept>
#include <string>

namespace pcg {

/// Malformed input: bad exponent vectors, structural presentation
/// violations, invalid parameters.
class InputError : public std::runtime_error {
public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Requested computation exceeds a configured or hard cap.
class ResourceError : public std::runtime_error {
public:
  explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A presentation failed its consistency test words; carries the
/// offending word.
class ConsistencyError : public std::runtime_error {
public:
  ConsistencyError(const std::string& msg, std::string word)
      : std::runtime_error(msg + " [" + word + "]"), failing_word(std::move(word)) {}
  std::string failing_word;
};

/// Internal invariant broke; always a bug, never user error.
class InternalError : public std::logic_error {
public:
  explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace pcg
