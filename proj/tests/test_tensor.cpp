#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "vacbound/tensor.hpp"

using namespace vacbound;

namespace {

StressEnergyTensor perfect_fluid(double rho, double p) {
    return StressEnergyTensor::diagonal(rho, p, p, p);
}

// T'_ab for a perfect fluid boosted with velocity beta along x:
// closed form from u_a u_b (rho + p) + p g_ab with u = gamma(1, beta, 0, 0).
Mat4 boosted_fluid(double rho, double p, double beta) {
    const double g = 1.0 / std::sqrt(1.0 - beta * beta);
    Mat4 m{};
    const Vec4 u{g, g * beta, 0.0, 0.0};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            m[a][b] = (rho + p) * u[a] * u[b] + p * kMetricDiag[a] * (a == b ? 1.0 : 0.0);
    return m;
}

}  // namespace

TEST_CASE("construction symmetrizes and validates") {
    Mat4 m{};
    m[1][2] = 3.0;
    auto T = StressEnergyTensor::from_components(m);
    CHECK(T(1, 2) == doctest::Approx(1.5));
    CHECK(T(2, 1) == doctest::Approx(1.5));

    m[0][0] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(StressEnergyTensor::from_components(m), DegenerateInput);
}

TEST_CASE("full trace uses the metric") {
    auto T = StressEnergyTensor::diagonal(2.0, 0.5, 0.5, 0.5);
    CHECK(T.full_trace() == doctest::Approx(-2.0 + 1.5));
}

TEST_CASE("boosted perfect fluid matches the closed form") {
    const double rho = 2.0, p = 0.4, beta = 0.6;
    auto T = boost(perfect_fluid(rho, p), {beta, 0.0, 0.0});
    const Mat4 expect = boosted_fluid(rho, p, beta);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) CHECK(T(a, b) == doctest::Approx(expect[a][b]).epsilon(1e-12));
}

TEST_CASE("boost round trip returns the original tensor") {
    auto T0 = StressEnergyTensor::diagonal(1.5, 0.2, -0.1, 0.05);
    auto T = boost(boost(T0, {0.3, -0.2, 0.5}), {-0.3, 0.2, -0.5});
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) CHECK(T(a, b) == doctest::Approx(T0(a, b)).epsilon(1e-10));
}

TEST_CASE("boost rejects superluminal speeds, zero boost is exact") {
    auto T = perfect_fluid(1.0, 0.1);
    CHECK_THROWS_AS(boost(T, {1.0, 0.0, 0.0}), SuperluminalBoost);
    auto same = boost(T, {0.0, 0.0, 0.0});
    CHECK(same(0, 0) == T(0, 0));
}

TEST_CASE("rest frame decomposition on a hand 2x2 block") {
    // spatial block [[2,1,0],[1,2,0],[0,0,5]]: eigenvalues 5, 3, 1
    Mat4 m{};
    m[0][0] = 7.0;
    m[1][1] = 2.0;
    m[2][2] = 2.0;
    m[1][2] = m[2][1] = 1.0;
    m[3][3] = 5.0;
    auto d = rest_frame_decompose(StressEnergyTensor::from_components(m));
    CHECK(d.rho == doctest::Approx(7.0));
    CHECK(d.pressures[0] == doctest::Approx(5.0));
    CHECK(d.pressures[1] == doctest::Approx(3.0));
    CHECK(d.pressures[2] == doctest::Approx(1.0));
    // eigenvector of 3 is (1,1,0)/sqrt(2), sign rule makes x positive
    CHECK(d.axes[1][0] == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(d.axes[1][1] == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("decomposition rejects frames with energy flux") {
    Mat4 m{};
    m[0][0] = 1.0;
    m[0][1] = m[1][0] = 0.2;
    CHECK_THROWS_AS(rest_frame_decompose(StressEnergyTensor::from_components(m)), NonRestFrame);
}

TEST_CASE("random rest-frame tensors decompose consistently") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        Mat4 m{};
        m[0][0] = 2.0 + u(rng);
        for (int i = 1; i < 4; ++i)
            for (int j = i; j < 4; ++j) m[i][j] = m[j][i] = u(rng);
        auto T = StressEnergyTensor::from_components(m);
        auto d = rest_frame_decompose(T);

        CHECK(d.pressures[0] >= d.pressures[1]);
        CHECK(d.pressures[1] >= d.pressures[2]);

        // orthonormal right-handed axes
        for (int a = 0; a < 3; ++a)
            for (int b = a; b < 3; ++b)
                CHECK(linalg::dot(d.axes[a], d.axes[b]) ==
                      doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-10));
        auto c = linalg::cross(d.axes[0], d.axes[1]);
        for (int i = 0; i < 3; ++i) CHECK(c[i] == doctest::Approx(d.axes[2][i]).epsilon(1e-10));

        // eigen reconstruction: block * v = lambda * v
        for (int k = 0; k < 3; ++k) {
            for (int i = 0; i < 3; ++i) {
                double lhs = 0.0;
                for (int j = 0; j < 3; ++j) lhs += T(i + 1, j + 1) * d.axes[k][j];
                CHECK(lhs == doctest::Approx(d.pressures[k] * d.axes[k][i]).epsilon(1e-9));
            }
        }

        // trace of the spatial block is basis independent
        CHECK(d.pressures[0] + d.pressures[1] + d.pressures[2] ==
              doctest::Approx(T(1, 1) + T(2, 2) + T(3, 3)).epsilon(1e-10));
    }
}

TEST_CASE("observer 4-velocity validation") {
    CHECK_THROWS_AS(Observer4Velocity::from_components({1.0, 0.5, 0.0, 0.0}), DegenerateInput);
    CHECK_THROWS_AS(Observer4Velocity::from_components({-1.0, 0.0, 0.0, 0.0}), DegenerateInput);
    CHECK_THROWS_AS(Observer4Velocity::from_beta({0.8, 0.8, 0.0}), SuperluminalBoost);

    auto u = Observer4Velocity::from_rapidity(1.3, {0.0, 0.0, 2.0});
    double n = -u[0] * u[0] + u[1] * u[1] + u[2] * u[2] + u[3] * u[3];
    CHECK(n == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("observer contraction reproduces the boosted energy density") {
    const double rho = 1.0, p = 0.3, beta = 0.5;
    auto T = perfect_fluid(rho, p);
    auto u = Observer4Velocity::from_beta({beta, 0.0, 0.0});
    auto c = observer_contraction(T, u);

    const double g2 = 1.0 / (1.0 - beta * beta);
    CHECK(c.energy_density == doctest::Approx(g2 * (rho + p * beta * beta)).epsilon(1e-12));

    // static observer in dust: flux is the rest energy flow, timelike norm
    auto rest = observer_contraction(perfect_fluid(rho, 0.0),
                                     Observer4Velocity::from_components({1, 0, 0, 0}));
    CHECK(rest.energy_density == doctest::Approx(rho));
    CHECK(rest.flux_norm2 == doctest::Approx(-rho * rho));
}
