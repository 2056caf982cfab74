#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace ooq {

using cplx = std::complex<double>;

/// Coefficients below this magnitude are dropped after every simplification.
inline constexpr double kPruneTol = 1e-12;

/// CODATA Hartree -> eV conversion, pinned for reproducible spectra.
inline constexpr double kHartreeToEv = 27.211386245988;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input files / configs.
struct InputError : Error {
  using Error::Error;
};

/// Optimizer failed to reach the gradient criterion.
struct ConvergenceError : Error {
  using Error::Error;
};

/// qEOM eigenproblem produced complex eigenvalues beyond tolerance.
struct InstabilityError : Error {
  using Error::Error;
};

}  // namespace ooq
