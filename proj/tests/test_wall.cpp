#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "vacbound/wall.hpp"

using namespace vacbound;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("cell virtual work") {
    WallCell dust;
    dust.volume = 1.0;
    dust.stress = StressEnergyTensor::diagonal(1.0, 0.0, 0.0, 0.0);
    CHECK(cell_virtual_work(dust, 1e-4) == 0.0);

    WallCell c;
    c.volume = 1e-3;
    c.stress = StressEnergyTensor::diagonal(0.0, 1.0, 1.0, 0.0);
    CHECK(cell_virtual_work(c, 1e-4) == doctest::Approx(-2e-7).epsilon(1e-12));

    CHECK_THROWS_AS(cell_virtual_work(c, 0.01), DegenerateInput);
}

TEST_CASE("virtual work is rotation invariant") {
    // same eigenvalues expressed on tilted axes
    const double th = 0.7;
    Mat4 m{};
    const double c2 = std::cos(th) * std::cos(th), s2 = std::sin(th) * std::sin(th);
    const double cs = std::cos(th) * std::sin(th);
    m[1][1] = 2.0 * c2 + 0.5 * s2;
    m[2][2] = 2.0 * s2 + 0.5 * c2;
    m[1][2] = m[2][1] = (2.0 - 0.5) * cs;
    m[3][3] = -0.3;

    WallCell a, b;
    a.volume = b.volume = 0.2;
    a.stress = StressEnergyTensor::diagonal(0.0, 2.0, 0.5, -0.3);
    b.stress = StressEnergyTensor::from_components(m);
    CHECK(cell_virtual_work(a, 1e-5) ==
          doctest::Approx(cell_virtual_work(b, 1e-5)).epsilon(1e-12));
}

TEST_CASE("uniform shell trace integral is the analytic value") {
    ThinShellSpec shell;
    shell.R = 1.0;
    shell.t = 0.01;
    shell.P = 0.7;
    shell.rho_w = 1.0;
    auto mesh = make_shell_mesh(shell);
    CHECK(mesh.cells.size() == 64 * 128);
    CHECK(mesh.total_volume() == doctest::Approx(4.0 * kPi * shell.R * shell.R * shell.t));

    auto r = total_virtual_work(mesh, 1e-6);
    const double expect = 2.0 * shell.P * 4.0 * kPi * shell.R * shell.R * shell.t;
    CHECK(r.trace_integral == doctest::Approx(expect).epsilon(1e-12));
    CHECK(r.delta_W == doctest::Approx(-expect * 1e-6).epsilon(1e-12));

    CHECK_THROWS_AS(total_virtual_work(WallMesh{}, 1e-6), EmptyMesh);
}

TEST_CASE("dust mesh does no work") {
    ThinShellSpec shell;
    shell.P = 0.0;
    shell.rho_w = 2.0;
    auto mesh = make_shell_mesh(shell, 8, 16);
    CHECK(total_virtual_work(mesh, 1e-4).delta_W == 0.0);
}

TEST_CASE("modulated shell converges at second order") {
    ThinShellSpec shell;
    shell.P = 0.5;
    shell.rho_w = 2.0;
    std::function<double(double)> prof = [](double th) {
        const double c = std::cos(th);
        return 1.0 + c * c;
    };
    // mean of (1 + cos^2) over the sphere is 4/3
    const double exact = 2.0 * shell.P * 4.0 * kPi * shell.R * shell.R * shell.t * (4.0 / 3.0);
    double prev = 0.0;
    for (std::size_t n : {16, 32, 64}) {
        auto mesh = make_shell_mesh(shell, n, 2 * n, &prof);
        const double err = std::abs(total_virtual_work(mesh, 1e-6).trace_integral - exact);
        if (prev > 0.0) {
            const double order = std::log2(prev / err);
            CHECK(order > 1.7);
            CHECK(order < 2.3);
        }
        prev = err;
    }
}

TEST_CASE("equilibrium shell closes the virtual-work balance") {
    const double E_v = -0.1;
    auto shell = equilibrium_shell(E_v, 1.0, 0.01);
    CHECK(shell.P == doctest::Approx(0.1 / (8.0 * kPi * 0.01)).epsilon(1e-12));

    // doubling the thickness halves the pressure
    CHECK(equilibrium_shell(E_v, 1.0, 0.02).P == doctest::Approx(shell.P / 2.0));

    shell.rho_w = 3.0 * shell.P;
    auto mesh = make_shell_mesh(shell);
    const double resid =
        std::abs(E_v + total_virtual_work(mesh, 1e-6).trace_integral) / std::abs(E_v);
    CHECK(resid < 1e-10);

    CHECK_THROWS_AS(equilibrium_shell(0.1, 1.0, 0.01), NonNegativeVacuumEnergy);
    CHECK_THROWS_AS(equilibrium_shell(0.0, 1.0, 0.01), NonNegativeVacuumEnergy);
}

TEST_CASE("positivity verdicts across the wall-material family") {
    const double E_v = -0.25;
    auto base = equilibrium_shell(E_v, 1.3, 0.05);

    auto run = [&](double factor) {
        auto s = base;
        s.rho_w = factor * base.P;
        return positivity_audit(E_v, make_shell_mesh(s));
    };

    auto good = run(3.0);
    CHECK(good.verdict == PositivityVerdict::PositiveTotal);
    CHECK(good.E_v + good.M_w == doctest::Approx(0.5 * std::abs(E_v)).epsilon(1e-10));
    CHECK(good.stec_margin_min > 0.0);

    auto saturated = run(2.0);
    CHECK(saturated.verdict == PositivityVerdict::Inconclusive);
    CHECK(std::abs(saturated.E_v + saturated.M_w) / std::abs(E_v) < 1e-6);

    auto stiff = run(1.0);
    CHECK(stiff.verdict == PositivityVerdict::ViolatesSTEC);
    CHECK(stiff.E_v + stiff.M_w == doctest::Approx(-0.5 * std::abs(E_v)).epsilon(1e-10));
}

TEST_CASE("randomized theorem property: STEC plus equilibrium forces positivity") {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const double R = 0.5 + 2.0 * u(rng);
        const double t = R * (0.002 + 0.05 * u(rng));
        const double E_v = -(0.01 + u(rng));
        const double delta = 1e-3 + u(rng);  // strictly above the 2P boundary

        auto shell = equilibrium_shell(E_v, R, t);
        shell.rho_w = 2.0 * shell.P * (1.0 + delta);
        auto rep = positivity_audit(E_v, make_shell_mesh(shell, 32, 64));
        CHECK(rep.verdict == PositivityVerdict::PositiveTotal);
        CHECK(rep.E_v + rep.M_w > 0.0);
    }
}

TEST_CASE("spec validation") {
    ThinShellSpec s;
    s.R = 1.0;
    s.t = 0.2;  // too thick
    CHECK_THROWS_AS(s.validate(), DegenerateInput);
    s.t = 0.01;
    s.rho_w = -1.0;
    CHECK_THROWS_AS(s.validate(), DegenerateInput);
}
