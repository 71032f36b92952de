#ifndef VACBOUND_TRACE_METHOD_HPP
#define VACBOUND_TRACE_METHOD_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "vacbound/wall.hpp"

namespace vacbound {

/// Uniform N^3 lattice on [-L, L]^3.
struct GridSpec {
    std::size_t n = 33;
    double L = 1.0;

    double h() const { return 2.0 * L / double(n - 1); }
};

/// Radial scalar seed, exactly zero for r >= support_radius.
struct ScalarProfile {
    std::function<double(double)> radial;
    double support_radius = 0.5;
};

/// Gaussian bump windowed to compact support:
/// amplitude * exp(-r^2 / (2 (r0/2)^2)) * (1 - (r/r0)^2)^4 inside r0, 0
/// outside.  C^3 at the support edge with moderate derivative growth, so
/// the divergence defect of beltrami_field reaches its O(h^2) regime on
/// practical grids.
ScalarProfile smooth_bump(double r0, double amplitude = 1.0);

/// Symmetric spatial stress tensor sampled on a lattice; component arrays
/// in node-major order, index (i*n + j)*n + k.
struct StressField {
    std::size_t n = 0;
    double L = 0.0;
    double h = 0.0;
    double support_radius = 0.0;  // values exactly zero outside
    std::vector<double> xx, xy, xz, yy, yz, zz;

    std::size_t idx(std::size_t i, std::size_t j, std::size_t k) const {
        return (i * n + j) * n + k;
    }
};

/// Divergence-free-by-construction field: T_ij = delta_ij Lap(phi) -
/// d_i d_j phi (the double-curl of the pure-trace potential A_ln =
/// delta_ln phi), discretized with 3-point second differences on the
/// diagonal and composed central firsts on the cross terms.  The discrete
/// divergence defect is O(h^2).
StressField beltrami_field(const ScalarProfile& seed, const GridSpec& grid);

/// Non-conserved control: T_ij = delta_ij * bump.  Its volume trace does
/// not vanish, so the virial identity must fail for it.
StressField isotropic_bump_field(const ScalarProfile& seed, const GridSpec& grid);

/// max-norm of the central-difference divergence d_j T_ji over the lattice.
double divergence_max(const StressField& field);

struct VirialResult {
    double surface_term = 0.0;  // flux of T_ji x_i through the outer box faces
    double volume_term = 0.0;   // sum of T_ii h^3
    double residual = 0.0;      // |surface - volume|
};

/// Discrete form of the identity: surface flux of T_ji x_i equals the
/// volume integral of the spatial trace.  Compact support makes the
/// surface term vanish to roundoff; conserved fields drive the volume
/// term to zero as well.
VirialResult virial_residual(const StressField& field, unsigned n_threads = 1);

/// Audits the trace-route argument: (1) exchange identity between the
/// field trace integral and the wall trace integral, (2) trace-sign bound
/// E_v >= field trace integral, (3) per-cell STEC on the wall.  Throws
/// ChainStepFailed naming the step that broke; otherwise delegates the
/// verdict to positivity_audit.
PositivityReport trace_bound_chain(double E_v, double field_trace_integral,
                                   const WallMesh& mesh);

struct TraceIdentityResult {
    double mean_trace = 0.0;  // time average of g^{mu nu} T_{mu nu} = 3p - rho
    double mass_term = 0.0;   // time average of m dL/dm = -m^2 Phi^2
    double discrepancy = 0.0;
};

/// RK4-integrates the homogeneous oscillator Phi'' = -m^2 Phi from
/// (Phi, Phi') = (A, 0) over whole periods and compares the averaged
/// trace with the averaged mass term.  Throws
/// IntegratorToleranceExceeded if relative energy drift exceeds 1e-10.
TraceIdentityResult scalar_trace_identity(double m, double A, int periods,
                                          int steps_per_period = 4096);

}  // namespace vacbound

#endif
