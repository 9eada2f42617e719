#pragma once

#include <stdexcept>
#include <string>

namespace gatp {

/// Base class of every error raised by the library core.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised from deadline polls inside long-running computations.
class TimeoutError : public Error {
public:
  TimeoutError() : Error("deadline exceeded") {}
};

class IoError : public Error {
public:
  using Error::Error;
};

} // namespace gatp
