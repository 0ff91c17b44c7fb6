#pragma once

#include <stdexcept>
#include <string>

namespace prmt {

struct NumericsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidParams : NumericsError {
  using NumericsError::NumericsError;
};
struct QuadratureNotConverged : NumericsError {
  using NumericsError::NumericsError;
};
struct ConfluentParameters : NumericsError {
  using NumericsError::NumericsError;
};
struct NotConverged : NumericsError {
  using NumericsError::NumericsError;
};
struct BvpNotConverged : NumericsError {
  using NumericsError::NumericsError;
};
struct SingularSystem : NumericsError {
  using NumericsError::NumericsError;
};
struct SingularCoefficient : NumericsError {
  using NumericsError::NumericsError;
};
struct SeriesNotConverged : NumericsError {
  using NumericsError::NumericsError;
};

}  // namespace prmt
