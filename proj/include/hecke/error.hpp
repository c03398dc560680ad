#pragma once

#include <stdexcept>
#include <string>

namespace hecke {

// Raised when caller-supplied data violates a documented precondition.
class ParameterError : public std::runtime_error {
 public:
  explicit ParameterError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an internal cross-check fails; indicates a bug, not bad input.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ParameterError(msg);
}

inline void check_internal(bool cond, const std::string& msg) {
  if (!cond) throw InternalError(msg);
}

}  // namespace hecke
