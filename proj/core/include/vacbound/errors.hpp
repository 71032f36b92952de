#ifndef VACBOUND_ERRORS_HPP
#define VACBOUND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vacbound {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// tensor_core
struct NonRestFrame : Error { using Error::Error; };
struct DegenerateInput : Error { using Error::Error; };
struct SuperluminalBoost : Error { using Error::Error; };

// energy_conditions
struct ImplicationViolation : Error { using Error::Error; };

// casimir_engine
struct UnsupportedGeometry : Error { using Error::Error; };
struct InsufficientDecay : Error { using Error::Error; };
struct FitIllConditioned : Error { using Error::Error; };
struct ContinuationNonConvergent : Error { using Error::Error; };

// wall_mechanics
struct EmptyMesh : Error { using Error::Error; };
struct NonNegativeVacuumEnergy : Error { using Error::Error; };

// trace_method
struct SupportTooLarge : Error { using Error::Error; };
struct ChainStepFailed : Error {
    ChainStepFailed(int step, const std::string& what)
        : Error(what), failed_step(step) {}
    int failed_step;
};
struct IntegratorToleranceExceeded : Error { using Error::Error; };

// cli_reports
struct ConfigInvalid : Error { using Error::Error; };
struct TaskFailed : Error { using Error::Error; };
struct IoFailure : Error { using Error::Error; };

}  // namespace vacbound

#endif
