#pragma once

#include <stdexcept>
#include <string>

namespace darksol {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// f'(1) >= 0: no sound speed, no dark solitons.
struct DefocusingViolated : Error { using Error::Error; };
// f''(1) + 3 f'(1) == 0: transonic constant k vanishes.
struct H3Violated : Error { using Error::Error; };
// N_c has no admissible first zero on (0,1).
struct NoZero : Error { using Error::Error; };
struct GridTooSmall : Error { using Error::Error; };
// max eta reached 1 - 1e-6: the hydrodynamical lift breaks down.
struct VacuumBreach : Error { using Error::Error; };
struct SolverFail : Error { using Error::Error; };
struct BadOrdering : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct BlowUpDetected : Error { using Error::Error; };
struct NonFinite : Error { using Error::Error; };
struct BadPolynomial : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace darksol
