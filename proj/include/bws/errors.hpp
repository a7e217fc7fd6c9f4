#pragma once

#include <stdexcept>
#include <string>

namespace bws {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input matrix failed the positive-definiteness check.
struct NotSpd : Error {
  using Error::Error;
};

struct DimMismatch : Error {
  using Error::Error;
};

// Parameter left the admissible open interval (geodesic domain, flow time).
struct OutOfDomain : Error {
  using Error::Error;
};

struct Singular : Error {
  using Error::Error;
};

// Horizontal lift requested at A with A A^T != S.
struct LiftMismatch : Error {
  using Error::Error;
};

struct IndexOutOfRange : Error {
  using Error::Error;
};

struct SingularMetric : Error {
  using Error::Error;
};

struct CallbackFailure : Error {
  using Error::Error;
};

struct NonFiniteSample : Error {
  using Error::Error;
};

}  // namespace bws
