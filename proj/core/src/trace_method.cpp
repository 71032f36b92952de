#include "vacbound/trace_method.hpp"

#include <cmath>
#include <numbers>

#include "vacbound/energy_conditions.hpp"
#include "vacbound/reduce.hpp"

namespace vacbound {

ScalarProfile smooth_bump(double r0, double amplitude) {
    if (r0 <= 0) throw DegenerateInput("bump radius must be positive");
    ScalarProfile p;
    p.support_radius = r0;
    const double sigma = 0.5 * r0;
    p.radial = [r0, sigma, amplitude](double r) {
        const double u = (r / r0) * (r / r0);
        if (u >= 1.0) return 0.0;
        const double w = (1.0 - u) * (1.0 - u);
        return amplitude * std::exp(-r * r / (2.0 * sigma * sigma)) * w * w;
    };
    return p;
}

namespace {

std::vector<double> sample_seed(const ScalarProfile& seed, const GridSpec& grid) {
    const std::size_t n = grid.n;
    const double h = grid.h();
    std::vector<double> phi(n * n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = -grid.L + h * double(i);
        for (std::size_t j = 0; j < n; ++j) {
            const double y = -grid.L + h * double(j);
            for (std::size_t k = 0; k < n; ++k) {
                const double z = -grid.L + h * double(k);
                const double r = std::sqrt(x * x + y * y + z * z);
                if (r < seed.support_radius)
                    phi[(i * n + j) * n + k] = seed.radial(r);
            }
        }
    }
    return phi;
}

StressField empty_field(const ScalarProfile& seed, const GridSpec& grid) {
    const double h = grid.h();
    if (grid.n < 9) throw DegenerateInput("grid too coarse");
    if (seed.support_radius >= grid.L - 3.0 * h)
        throw SupportTooLarge("seed support must end 3h inside the box");
    StressField f;
    f.n = grid.n;
    f.L = grid.L;
    f.h = h;
    f.support_radius = seed.support_radius + 3.0 * h;
    const std::size_t total = grid.n * grid.n * grid.n;
    f.xx.assign(total, 0.0);
    f.xy.assign(total, 0.0);
    f.xz.assign(total, 0.0);
    f.yy.assign(total, 0.0);
    f.yz.assign(total, 0.0);
    f.zz.assign(total, 0.0);
    return f;
}

}  // namespace

StressField beltrami_field(const ScalarProfile& seed, const GridSpec& grid) {
    StressField f = empty_field(seed, grid);
    const std::vector<double> phi = sample_seed(seed, grid);
    const std::size_t n = f.n;
    const double h2 = f.h * f.h;

    auto at = [&](std::size_t i, std::size_t j, std::size_t k) {
        return phi[(i * n + j) * n + k];
    };

    for (std::size_t i = 1; i + 1 < n; ++i)
        for (std::size_t j = 1; j + 1 < n; ++j)
            for (std::size_t k = 1; k + 1 < n; ++k) {
                const std::size_t id = f.idx(i, j, k);
                const double c = at(i, j, k);
                // 3-point second differences
                const double dxx = (at(i + 1, j, k) - 2.0 * c + at(i - 1, j, k)) / h2;
                const double dyy = (at(i, j + 1, k) - 2.0 * c + at(i, j - 1, k)) / h2;
                const double dzz = (at(i, j, k + 1) - 2.0 * c + at(i, j, k - 1)) / h2;
                // composed central firsts for the cross derivatives
                const double dxy = (at(i + 1, j + 1, k) - at(i + 1, j - 1, k) -
                                    at(i - 1, j + 1, k) + at(i - 1, j - 1, k)) /
                                   (4.0 * h2);
                const double dxz = (at(i + 1, j, k + 1) - at(i + 1, j, k - 1) -
                                    at(i - 1, j, k + 1) + at(i - 1, j, k - 1)) /
                                   (4.0 * h2);
                const double dyz = (at(i, j + 1, k + 1) - at(i, j + 1, k - 1) -
                                    at(i, j - 1, k + 1) + at(i, j - 1, k - 1)) /
                                   (4.0 * h2);
                // T_ij = delta_ij Lap(phi) - d_i d_j phi
                f.xx[id] = dyy + dzz;
                f.yy[id] = dxx + dzz;
                f.zz[id] = dxx + dyy;
                f.xy[id] = -dxy;
                f.xz[id] = -dxz;
                f.yz[id] = -dyz;
            }
    return f;
}

StressField isotropic_bump_field(const ScalarProfile& seed, const GridSpec& grid) {
    StressField f = empty_field(seed, grid);
    const std::vector<double> phi = sample_seed(seed, grid);
    for (std::size_t id = 0; id < phi.size(); ++id) {
        f.xx[id] = phi[id];
        f.yy[id] = phi[id];
        f.zz[id] = phi[id];
    }
    return f;
}

double divergence_max(const StressField& f) {
    const std::size_t n = f.n;
    double worst = 0.0;
    auto row = [&](const std::vector<double>& a, std::size_t id) { return a[id]; };
    for (std::size_t i = 1; i + 1 < n; ++i)
        for (std::size_t j = 1; j + 1 < n; ++j)
            for (std::size_t k = 1; k + 1 < n; ++k) {
                const std::size_t xp = f.idx(i + 1, j, k), xm = f.idx(i - 1, j, k);
                const std::size_t yp = f.idx(i, j + 1, k), ym = f.idx(i, j - 1, k);
                const std::size_t zp = f.idx(i, j, k + 1), zm = f.idx(i, j, k - 1);
                const double div_x = (row(f.xx, xp) - row(f.xx, xm)) +
                                     (row(f.xy, yp) - row(f.xy, ym)) +
                                     (row(f.xz, zp) - row(f.xz, zm));
                const double div_y = (row(f.xy, xp) - row(f.xy, xm)) +
                                     (row(f.yy, yp) - row(f.yy, ym)) +
                                     (row(f.yz, zp) - row(f.yz, zm));
                const double div_z = (row(f.xz, xp) - row(f.xz, xm)) +
                                     (row(f.yz, yp) - row(f.yz, ym)) +
                                     (row(f.zz, zp) - row(f.zz, zm));
                const double m = std::max({std::abs(div_x), std::abs(div_y), std::abs(div_z)}) /
                                 (2.0 * f.h);
                worst = std::max(worst, m);
            }
    return worst;
}

VirialResult virial_residual(const StressField& f, unsigned n_threads) {
    const std::size_t n = f.n;
    const double h3 = f.h * f.h * f.h;

    VirialResult r;
    r.volume_term = h3 * det_transform_sum(
                             n * n * n,
                             [&](std::size_t id) { return f.xx[id] + f.yy[id] + f.zz[id]; },
                             n_threads);

    // flux of F_j = T_ji x_i through the six outer faces (x_i at the face
    // nodes); exactly zero for compactly supported fields, kept as a
    // roundoff monitor
    double flux = 0.0;
    const double h2 = f.h * f.h;
    auto coord = [&](std::size_t i) { return -f.L + f.h * double(i); };
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const double xa = coord(a), xb = coord(b);
            // faces x = +-L, normal +-e_x
            for (std::size_t side = 0; side < 2; ++side) {
                const double sgn = side == 0 ? 1.0 : -1.0;
                const std::size_t i = side == 0 ? n - 1 : 0;
                const double x = coord(i);
                std::size_t id = f.idx(i, a, b);
                flux += sgn * (f.xx[id] * x + f.xy[id] * xa + f.xz[id] * xb) * h2;
                id = f.idx(a, i, b);
                flux += sgn * (f.xy[id] * xa + f.yy[id] * x + f.yz[id] * xb) * h2;
                id = f.idx(a, b, i);
                flux += sgn * (f.xz[id] * xa + f.yz[id] * xb + f.zz[id] * x) * h2;
            }
        }
    r.surface_term = flux;
    r.residual = std::abs(r.surface_term - r.volume_term);
    return r;
}

PositivityReport trace_bound_chain(double E_v, double field_trace_integral,
                                   const WallMesh& mesh) {
    if (mesh.cells.empty()) throw EmptyMesh("wall mesh has no cells");
    const double wall_trace = total_virtual_work(mesh, 1e-6).trace_integral;
    const double scale =
        std::max({std::abs(E_v), std::abs(field_trace_integral), std::abs(wall_trace)});
    const double tol = 1e-6 * scale;

    // (1) exchange identity: field trace balances the wall trace
    if (std::abs(field_trace_integral + wall_trace) > tol)
        throw ChainStepFailed(1, "exchange identity broken: field and wall traces unbalanced");

    // (2) trace-sign bound: E_v >= integral of T^i_i
    if (E_v < field_trace_integral - tol)
        throw ChainStepFailed(2, "trace-sign bound broken: E_v below the field trace integral");

    // (3) wall material must not violate STEC
    for (const auto& c : mesh.cells) {
        if (check_condition(c.stress, ConditionKind::STEC).status == ConditionStatus::Violated)
            throw ChainStepFailed(3, "wall cell violates the subdominant trace condition");
    }

    return positivity_audit(E_v, mesh);
}

TraceIdentityResult scalar_trace_identity(double m, double A, int periods,
                                          int steps_per_period) {
    if (m <= 0) throw DegenerateInput("oscillator mass must be positive");
    if (periods < 1) throw DegenerateInput("need at least one period");
    if (steps_per_period < 16) throw DegenerateInput("too few steps per period");

    const double period = 2.0 * std::numbers::pi / m;
    const double dt = period / double(steps_per_period);
    const long total = long(periods) * steps_per_period;

    double phi = A, pi_v = 0.0;
    const double E0 = 0.5 * pi_v * pi_v + 0.5 * m * m * phi * phi;

    // trapezoid accumulation over whole periods (endpoints at equal phase)
    auto trace_of = [&](double p, double v) { return v * v - 2.0 * m * m * p * p; };
    auto mass_of = [&](double p) { return -m * m * p * p; };

    double sum_trace = 0.5 * trace_of(phi, pi_v);
    double sum_mass = 0.5 * mass_of(phi);
    double drift_max = 0.0;

    for (long s = 0; s < total; ++s) {
        // RK4 for (phi, pi)' = (pi, -m^2 phi)
        const double k1p = pi_v, k1v = -m * m * phi;
        const double k2p = pi_v + 0.5 * dt * k1v, k2v = -m * m * (phi + 0.5 * dt * k1p);
        const double k3p = pi_v + 0.5 * dt * k2v, k3v = -m * m * (phi + 0.5 * dt * k2p);
        const double k4p = pi_v + dt * k3v, k4v = -m * m * (phi + dt * k3p);
        phi += dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        pi_v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);

        const double E = 0.5 * pi_v * pi_v + 0.5 * m * m * phi * phi;
        if (E0 > 0) drift_max = std::max(drift_max, std::abs(E - E0) / E0);
        const double w = (s + 1 == total) ? 0.5 : 1.0;
        sum_trace += w * trace_of(phi, pi_v);
        sum_mass += w * mass_of(phi);
    }
    if (drift_max > 1e-10)
        throw IntegratorToleranceExceeded("oscillator energy drift above 1e-10 relative");

    TraceIdentityResult r;
    r.mean_trace = sum_trace / double(total);
    r.mass_term = sum_mass / double(total);
    r.discrepancy = std::abs(r.mean_trace - r.mass_term);
    return r;
}

}  // namespace vacbound
