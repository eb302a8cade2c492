#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wo {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed textual input (formula or ordinal). `pos` is a 0-based byte
// offset into the input string.
struct ParseError : Error {
  size_t pos;
  ParseError(const std::string& msg, size_t position)
      : Error(msg + " (at offset " + std::to_string(position) + ")"), pos(position) {}
};

// A caller violated an operation's contract (non-sentence where a sentence
// is required, zero ordinal where a positive one is required, ...).
struct PreconditionError : Error {
  using Error::Error;
};

// A wall-clock or size budget was exceeded. Never a wrong verdict: callers
// see this instead of an answer. Carries whatever partial progress is known.
struct ResourceLimitError : Error {
  std::string phase;        // what was running when the limit hit
  size_t closure_size;      // entries discovered so far (0 if not applicable)
  size_t interned_types;    // table size at the time of the error
  ResourceLimitError(const std::string& msg, std::string where, size_t closure, size_t interned)
      : Error(msg), phase(std::move(where)), closure_size(closure), interned_types(interned) {}
};

}  // namespace wo
