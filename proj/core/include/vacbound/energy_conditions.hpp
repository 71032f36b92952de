#ifndef VACBOUND_ENERGY_CONDITIONS_HPP
#define VACBOUND_ENERGY_CONDITIONS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "vacbound/tensor.hpp"

namespace vacbound {

enum class ConditionKind { WEC, NEC, SEC, DEC, STEC };

enum class ConditionStatus { Satisfied, Saturated, Violated };

const char* to_string(ConditionKind k);
const char* to_string(ConditionStatus s);

struct ConditionVerdict {
    ConditionStatus status = ConditionStatus::Saturated;
    double margin = 0.0;  // minimum slack over all sub-inequalities
    std::optional<Vec4> witness;  // observer (or null vector) achieving the minimum
};

// Strict inequalities are the satisfaction criterion; exact saturation
// (photon gas) is reported distinctly.  Tolerance is relative to rho.
inline constexpr double kSaturationTolRel = 1e-12;

/// Closed rest-frame form: margins from (rho, p1, p2, p3).
ConditionVerdict check_condition(const StressEnergyTensor& T, ConditionKind kind);

struct CovariantSamplingParams {
    std::size_t n_samples = 10000;
    std::uint64_t seed = 0;
    double chi_max = 5.0;   // rapidity range; gamma up to cosh(5) ~ 74
    unsigned n_threads = 1; // physical only; results independent of it
};

/// Monte-Carlo verification over sampled future-pointing observers
/// (rapidity uniform in [0, chi_max], direction uniform on S^2).  NEC is
/// evaluated on constructed null vectors k = (1, n_hat) instead.
/// Deterministic for a fixed (seed, n_samples) pair, regardless of
/// thread count.
ConditionVerdict covariant_verify(const StressEnergyTensor& T, ConditionKind kind,
                                  const CovariantSamplingParams& params);

struct ConditionProfile {
    std::map<ConditionKind, ConditionVerdict> verdicts;
};

/// All five predicates plus the implication audit
/// (STEC satisfied => SEC, WEC, NEC satisfied; a counterexample is an
/// internal error, not a physics result).
ConditionProfile classify(const StressEnergyTensor& T);

}  // namespace vacbound

#endif
