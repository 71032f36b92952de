#ifndef VACBOUND_WALL_HPP
#define VACBOUND_WALL_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vacbound/tensor.hpp"

namespace vacbound {

/// Small wall parcel with its stress tensor in the local matter rest frame
/// (global Cartesian axes; T_tj = 0).
struct WallCell {
    Vec3 center{};
    double volume = 0.0;
    StressEnergyTensor stress;
};

struct WallMesh {
    std::vector<WallCell> cells;
    std::string geometry_tag;

    double total_volume() const;
};

/// Thin spherical shell: zero radial stress, isotropic tangential pressure P,
/// wall-material density rho_w.  M_w = rho_w * 4 pi R^2 t.
struct ThinShellSpec {
    double R = 1.0;
    double t = 0.01;
    double rho_w = 0.0;  // 0 = unset (pressure-only spec from equilibrium_shell)
    double P = 0.0;

    void validate() const;  // R > 0, 0 < t < R/10, rho_w >= 0
};

enum class PositivityVerdict { PositiveTotal, Inconclusive, ViolatesSTEC };
const char* to_string(PositivityVerdict v);

struct PositivityReport {
    double E_v = 0.0;
    double trace_integral = 0.0;  // integral of Theta^i_i over the wall
    double M_w = 0.0;             // integral of Theta_tt
    double equilibrium_residual = 0.0;
    double stec_margin_min = 0.0;  // minimum over cells
    PositivityVerdict verdict = PositivityVerdict::Inconclusive;
};

/// Latitude-longitude shell mesh with exact spherical-zone cell volumes.
/// The optional profile modulates the tangential pressure with colatitude
/// (evaluated at band midpoints); default is the uniform shell.
WallMesh make_shell_mesh(const ThinShellSpec& shell, std::size_t n_theta = 64,
                         std::size_t n_phi = 128,
                         const std::function<double(double)>* pressure_profile = nullptr);

/// First-order work done on one cell under homologous dilation dR/R:
/// -(tau_1 + tau_2 + tau_3) * volume * dilation, taus from the rest-frame
/// eigendecomposition.  Requires |dilation| < 1e-3.
double cell_virtual_work(const WallCell& cell, double dilation);

struct VirtualWorkResult {
    double delta_W = 0.0;
    double trace_integral = 0.0;
};

/// Deterministic-order sum over cells; delta_W = -trace_integral * dilation.
VirtualWorkResult total_virtual_work(const WallMesh& mesh, double dilation,
                                     unsigned n_threads = 1);

/// Pressure balancing a negative vacuum energy under dilation:
/// P = |E_v| / (8 pi R^2 t), so the shell trace integral equals -E_v.
/// rho_w is left unset.  Throws NonNegativeVacuumEnergy for E_v >= 0
/// (a tension wall; reported, not solved).
ThinShellSpec equilibrium_shell(double E_v, double R, double t);

/// The positivity verdict: PositiveTotal iff the equilibrium residual is
/// below 1e-6, every cell satisfies STEC strictly, and E_v + M_w > 0;
/// ViolatesSTEC if any cell margin is negative; Inconclusive otherwise
/// (saturation included).
PositivityReport positivity_audit(double E_v, const WallMesh& mesh,
                                  unsigned n_threads = 1);

}  // namespace vacbound

#endif
