#pragma once

#include <stdexcept>
#include <string>

namespace llma {

// Base for all typed failures raised by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A model response could not be turned into a structured output.
struct ParseError : Error {
  using Error::Error;
};

// A prompt template slot was missing or invalid.
struct RenderError : Error {
  using Error::Error;
};

// The language-model backend failed after exhausting its retries.
struct BackendError : Error {
  using Error::Error;
};

// A pick/place transition violated the task rules; state is unchanged.
struct IllegalMoveError : Error {
  using Error::Error;
};

// The geometric oracle could not resolve an instruction or find a path.
struct OracleError : Error {
  using Error::Error;
};

// A control sequence was rejected before any motion (e.g. wrong length).
struct SequenceError : Error {
  using Error::Error;
};

// Invalid run configuration.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace llma
