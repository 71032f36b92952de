#ifndef VACBOUND_CASIMIR_HPP
#define VACBOUND_CASIMIR_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "vacbound/errors.hpp"

namespace vacbound {

enum class CavityKind { Interval, Slab, Box };
enum class RegularizationScheme { Cutoff, Zeta };

/// Scale-free Dirichlet cavity.  R is the interval length, plate gap, or
/// circumscribing-sphere radius (half the box diagonal); xi are the box
/// edge ratios (empty for Interval/Slab).
struct CavitySpec {
    CavityKind kind = CavityKind::Interval;
    double R = 1.0;
    std::vector<double> xi;

    static CavitySpec interval(double length);
    static CavitySpec slab(double gap);
    static CavitySpec box(double R, const std::vector<double>& edge_ratios);

    // Box edges in units of R (half-diagonal convention): a_i = 2 xi_i / |xi|.
    std::vector<double> normalized_edges() const;
};

/// Dimensionless mode constants: E_j = eps_j * hbar c / R.
struct ModeSpectrum {
    CavityKind kind = CavityKind::Interval;
    std::vector<double> epsilons;      // sorted ascending
    std::vector<double> degeneracies;  // merged at 1e-12 relative
    std::size_t truncation = 0;        // n_max used
    double complete_to = 0.0;          // enumeration complete for eps <= complete_to
};

struct VacuumEnergyResult {
    double alpha = 0.0;  // dimensionless; E_v = alpha * hbar c / R
    double E_v = 0.0;    // natural units (hbar = c = 1)
    RegularizationScheme scheme = RegularizationScheme::Zeta;
    double error_estimate = 0.0;  // absolute, on alpha
};

/// Dirichlet spectra: Interval eps_n = n pi; Box eps = pi sqrt(sum (n_i/a_i)^2),
/// truncated to the completeness ball eps <= pi n_max / max(a_i) so no
/// partially-enumerated shell is retained.  Slab returns the
/// transverse-reduced 1-D descriptor (eps_n = n pi for the longitudinal
/// momenta); its per-area energy is computed by vacuum_energy_zeta via the
/// Abel-Plana route.
ModeSpectrum enumerate_modes(const CavitySpec& cavity, std::size_t n_max);

/// n_max giving a completeness radius equivalent to a cube at n_max = base;
/// anisotropic boxes need proportionally deeper enumeration.
std::size_t recommended_truncation(const CavitySpec& cavity, std::size_t base = 200);

/// Exponential-cutoff regularization: S(s) = 1/2 sum g_j eps_j e^(-eps_j s),
/// divergent Laurent terms fitted (1/s^2 for Interval; 1/s^4..1/s^2 for Box)
/// and subtracted, finite remainder extrapolated to s -> 0.
VacuumEnergyResult vacuum_energy_cutoff(const ModeSpectrum& spectrum,
                                        const std::vector<double>& epsilon_cutoffs,
                                        double R = 1.0);

std::vector<double> default_cutoffs(const ModeSpectrum& spectrum);

/// Zeta-function route: Riemann continuation (Interval), Abel-Plana
/// transverse summation (Slab, per-area coefficient in units hbar c / d^3),
/// Epstein zeta continued to s = -1/2 via the incomplete-gamma reflection
/// representation (Box).
VacuumEnergyResult vacuum_energy_zeta(const CavitySpec& cavity);

/// |E_v(lambda R) * lambda - E_v(R)| / |E_v(R)| through the full pipeline.
double scaling_check(const CavitySpec& cavity, double lambda);

// Exposed for tests and cross-validation.
namespace zeta_detail {
double riemann_zeta(double s);          // s != 1; reflection for s < 0
double abel_plana_zeta_neg3();          // regularized sum of n^3 = zeta(-3)
double epstein_positive_octant(double s, const std::vector<double>& coeffs);
}  // namespace zeta_detail

}  // namespace vacbound

#endif
