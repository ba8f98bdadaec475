#pragma once

#include <stdexcept>
#include <string>

namespace aerogrid {

/// Recoverable failures (bad input files, invariant breaches, solver misuse)
/// surface as Error with a human-readable message.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(msg); }

}  // namespace aerogrid
