#pragma once

#include <stdexcept>
#include <string>

namespace lensgraph {

/// Base of every error raised by the engine.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document.
class ParseError : public Error {
public:
  using Error::Error;
};

/// Well-formed input that violates a data invariant (dangling endpoint,
/// duplicate id, unknown attribute, empty selection, ...).
class DataError : public Error {
public:
  using Error::Error;
};

/// Command not valid in the current session state.
class StateError : public Error {
public:
  using Error::Error;
};

}  // namespace lensgraph
