#include "vacbound/wall.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "vacbound/energy_conditions.hpp"
#include "vacbound/reduce.hpp"

namespace vacbound {

namespace {
constexpr double kPi = std::numbers::pi;
}

double WallMesh::total_volume() const {
    double v = 0.0;
    for (const auto& c : cells) v += c.volume;
    return v;
}

void ThinShellSpec::validate() const {
    if (R <= 0) throw DegenerateInput("shell radius must be positive");
    if (t <= 0 || t >= R / 10.0) throw DegenerateInput("shell thickness must satisfy 0 < t < R/10");
    if (rho_w < 0) throw DegenerateInput("wall density must be non-negative");
}

const char* to_string(PositivityVerdict v) {
    switch (v) {
        case PositivityVerdict::PositiveTotal: return "PositiveTotal";
        case PositivityVerdict::Inconclusive: return "Inconclusive";
        case PositivityVerdict::ViolatesSTEC: return "ViolatesSTEC";
    }
    return "?";
}

WallMesh make_shell_mesh(const ThinShellSpec& shell, std::size_t n_theta, std::size_t n_phi,
                         const std::function<double(double)>* pressure_profile) {
    shell.validate();
    if (n_theta < 2 || n_phi < 2) throw DegenerateInput("mesh must have at least 2x2 cells");

    WallMesh mesh;
    mesh.geometry_tag = "thin-shell R=" + std::to_string(shell.R) +
                        " t=" + std::to_string(shell.t);
    mesh.cells.reserve(n_theta * n_phi);

    for (std::size_t i = 0; i < n_theta; ++i) {
        const double th0 = kPi * double(i) / double(n_theta);
        const double th1 = kPi * double(i + 1) / double(n_theta);
        const double th_mid = 0.5 * (th0 + th1);
        // exact zone area split over the longitude cells
        const double zone_area = 2.0 * kPi * shell.R * shell.R * (std::cos(th0) - std::cos(th1));
        const double vol = zone_area * shell.t / double(n_phi);
        const double P_local =
            shell.P * (pressure_profile ? (*pressure_profile)(th_mid) : 1.0);

        for (std::size_t j = 0; j < n_phi; ++j) {
            const double ph = 2.0 * kPi * (double(j) + 0.5) / double(n_phi);
            const double st = std::sin(th_mid), ct = std::cos(th_mid);
            const double cp = std::cos(ph), sp = std::sin(ph);
            const Vec3 er{st * cp, st * sp, ct};
            const Vec3 eth{ct * cp, ct * sp, -st};
            const Vec3 eph{-sp, cp, 0.0};

            // T = rho_w dt x dt + P (e_th x e_th + e_ph x e_ph); radial stress 0
            Mat4 m{};
            m[0][0] = shell.rho_w;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    m[a + 1][b + 1] = P_local * (eth[a] * eth[b] + eph[a] * eph[b]);

            WallCell cell;
            cell.center = {shell.R * er[0], shell.R * er[1], shell.R * er[2]};
            cell.volume = vol;
            cell.stress = StressEnergyTensor::from_components(m, "shell-cell rest frame");
            mesh.cells.push_back(cell);
        }
    }
    return mesh;
}

double cell_virtual_work(const WallCell& cell, double dilation) {
    if (std::abs(dilation) >= 1e-3)
        throw DegenerateInput("dilation outside the first-order regime (|dR/R| < 1e-3)");
    if (cell.volume <= 0) throw DegenerateInput("cell volume must be positive");
    const RestFrameDecomposition d = rest_frame_decompose(cell.stress);
    const double trace = d.pressures[0] + d.pressures[1] + d.pressures[2];
    return -trace * cell.volume * dilation;
}

VirtualWorkResult total_virtual_work(const WallMesh& mesh, double dilation,
                                     unsigned n_threads) {
    if (mesh.cells.empty()) throw EmptyMesh("wall mesh has no cells");
    if (std::abs(dilation) >= 1e-3)
        throw DegenerateInput("dilation outside the first-order regime (|dR/R| < 1e-3)");

    VirtualWorkResult r;
    r.trace_integral = det_transform_sum(
        mesh.cells.size(),
        [&](std::size_t i) {
            const auto& c = mesh.cells[i];
            const RestFrameDecomposition d = rest_frame_decompose(c.stress);
            return (d.pressures[0] + d.pressures[1] + d.pressures[2]) * c.volume;
        },
        n_threads);
    r.delta_W = -r.trace_integral * dilation;
    return r;
}

ThinShellSpec equilibrium_shell(double E_v, double R, double t) {
    if (E_v >= 0)
        throw NonNegativeVacuumEnergy(
            "equilibrium for E_v >= 0 needs a tension wall; not solved here");
    ThinShellSpec s;
    s.R = R;
    s.t = t;
    s.P = -E_v / (8.0 * kPi * R * R * t);
    s.rho_w = 0.0;
    s.validate();
    return s;
}

PositivityReport positivity_audit(double E_v, const WallMesh& mesh, unsigned n_threads) {
    if (mesh.cells.empty()) throw EmptyMesh("wall mesh has no cells");

    PositivityReport rep;
    rep.E_v = E_v;
    rep.trace_integral = total_virtual_work(mesh, 1e-6, n_threads).trace_integral;
    rep.M_w = det_transform_sum(
        mesh.cells.size(),
        [&](std::size_t i) { return mesh.cells[i].stress(0, 0) * mesh.cells[i].volume; },
        n_threads);

    const double denom = E_v != 0.0 ? std::abs(E_v) : 1.0;
    rep.equilibrium_residual = std::abs(E_v + rep.trace_integral) / denom;

    rep.stec_margin_min = std::numeric_limits<double>::infinity();
    bool any_violated = false, all_satisfied = true;
    for (const auto& c : mesh.cells) {
        const ConditionVerdict v = check_condition(c.stress, ConditionKind::STEC);
        rep.stec_margin_min = std::min(rep.stec_margin_min, v.margin);
        if (v.status == ConditionStatus::Violated) any_violated = true;
        if (v.status != ConditionStatus::Satisfied) all_satisfied = false;
    }

    if (any_violated) {
        rep.verdict = PositivityVerdict::ViolatesSTEC;
    } else if (rep.equilibrium_residual < 1e-6 && all_satisfied && E_v + rep.M_w > 0) {
        rep.verdict = PositivityVerdict::PositiveTotal;
    } else {
        rep.verdict = PositivityVerdict::Inconclusive;
    }
    return rep;
}

}  // namespace vacbound
