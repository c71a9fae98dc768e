#pragma once

#include <stdexcept>
#include <string>

namespace impa {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An argument violated a documented precondition.
struct ContractViolation : Error {
  using Error::Error;
};

// Malformed or inconsistent input file. `field_path` points at the offending
// entry, e.g. "elements[2].c_farads".
struct SchemaError : Error {
  SchemaError(const std::string& path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), field_path(path) {}
  std::string field_path;
};

// Iterative root finding failed; carries the residual at the last iterate.
struct SolverError : Error {
  SolverError(const std::string& what, double residual)
      : Error(what), last_residual(residual) {}
  double last_residual = 0.0;
};

// The stationary point is not a true minimum (curvature <= 0).
struct DegenerateMinimumError : Error {
  using Error::Error;
};

// A search over a candidate grid produced no admissible point.
struct NotFoundError : Error {
  using Error::Error;
};

// Requested prototype row is absent from every available table.
struct TableMissError : Error {
  using Error::Error;
};

// Synthesis produced an unrealizable element value.
struct SynthesisError : Error {
  using Error::Error;
};

// A zero-valued element has no admittance representation.
struct SingularElementError : Error {
  using Error::Error;
};

// Z_in == -Z0: reflection gain diverges (oscillation condition).
struct PoleError : Error {
  using Error::Error;
};

// Negative-resistance calibration could not reach the target gain; carries
// the best minimum in-band gain seen on the stable side, in dB.
struct CalibrationError : Error {
  CalibrationError(const std::string& what, double achievable_db)
      : Error(what), achievable_max_db(achievable_db) {}
  double achievable_max_db = 0.0;
};

// No frequency interval satisfied the gain threshold.
struct EmptyBandError : Error {
  using Error::Error;
};

// Filesystem problem: missing input, unwritable output.
struct IoError : Error {
  using Error::Error;
};

}  // namespace impa
