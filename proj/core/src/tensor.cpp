#include "vacbound/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace vacbound {

namespace {

double frob(const Mat4& m) {
    double s = 0.0;
    for (const auto& row : m)
        for (double x : row) s += x * x;
    return std::sqrt(s);
}

}  // namespace

double StressEnergyTensor::frobenius_norm() const { return frob(c_); }

StressEnergyTensor StressEnergyTensor::from_components(const Mat4& m, std::string frame_label) {
    for (const auto& row : m)
        for (double x : row)
            if (!std::isfinite(x)) throw DegenerateInput("stress-energy tensor entry non-finite");
    StressEnergyTensor T;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) T.c_[a][b] = 0.5 * (m[a][b] + m[b][a]);
    T.frame_label_ = std::move(frame_label);
    return T;
}

StressEnergyTensor StressEnergyTensor::diagonal(double rho, double p1, double p2, double p3,
                                                std::string frame_label) {
    Mat4 m{};
    m[0][0] = rho;
    m[1][1] = p1;
    m[2][2] = p2;
    m[3][3] = p3;
    return from_components(m, std::move(frame_label));
}

Observer4Velocity Observer4Velocity::from_components(const Vec4& u) {
    double n = -u[0] * u[0];
    for (int i = 1; i < 4; ++i) n += u[i] * u[i];
    if (std::abs(n + 1.0) > 1e-12)
        throw DegenerateInput("observer 4-velocity not unit timelike");
    if (u[0] <= 0.0) throw DegenerateInput("observer 4-velocity not future-pointing");
    Observer4Velocity v;
    v.u_ = u;
    return v;
}

Observer4Velocity Observer4Velocity::from_beta(const Vec3& beta) {
    const double b2 = linalg::dot(beta, beta);
    if (b2 >= 1.0) throw SuperluminalBoost("observer speed >= c");
    const double gamma = 1.0 / std::sqrt(1.0 - b2);
    return from_components({gamma, gamma * beta[0], gamma * beta[1], gamma * beta[2]});
}

Observer4Velocity Observer4Velocity::from_rapidity(double chi, const Vec3& direction) {
    const double n = linalg::norm(direction);
    if (n == 0.0) throw DegenerateInput("zero observer direction");
    const double sh = std::sinh(chi);
    Observer4Velocity v;
    v.u_ = {std::cosh(chi), sh * direction[0] / n, sh * direction[1] / n, sh * direction[2] / n};
    return v;
}

namespace linalg {

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

void jacobi_eigen3(const Mat3& m, Vec3& eigenvalues, Mat3& vecs) {
    Mat3 a = m;
    // columns of vecs accumulate the rotations
    vecs = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    double scale = 0.0;
    for (const auto& row : a)
        for (double x : row) scale += x * x;
    scale = std::sqrt(scale);
    const double tol = 1e-14 * std::max(scale, 1e-300);

    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = std::sqrt(a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2]) *
                     std::sqrt(2.0);
        if (off < tol) break;
        for (int p = 0; p < 3; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                if (a[p][q] == 0.0) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < 3; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < 3; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < 3; ++k) {
                    const double vkp = vecs[k][p], vkq = vecs[k][q];
                    vecs[k][p] = c * vkp - s * vkq;
                    vecs[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    for (int i = 0; i < 3; ++i) eigenvalues[i] = a[i][i];
}

}  // namespace linalg

RestFrameDecomposition rest_frame_decompose(const StressEnergyTensor& T) {
    const double scale = std::max(T.frobenius_norm(), 1e-300);
    for (int j = 1; j < 4; ++j)
        if (std::abs(T(0, j)) > 1e-12 * scale)
            throw NonRestFrame("energy-flux component T_tj nonzero; not the matter rest frame");

    Mat3 block{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) block[i][j] = T(i + 1, j + 1);

    Vec3 vals;
    Mat3 vecs;
    linalg::jacobi_eigen3(block, vals, vecs);

    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] > vals[b]; });

    RestFrameDecomposition d;
    d.rho = T(0, 0);
    for (int k = 0; k < 3; ++k) {
        d.pressures[k] = vals[order[k]];
        for (int i = 0; i < 3; ++i) d.axes[k][i] = vecs[i][order[k]];
    }
    // sign rule on the first two axes; third = cross for right-handedness
    for (int k = 0; k < 2; ++k) {
        for (int i = 0; i < 3; ++i) {
            if (std::abs(d.axes[k][i]) > 1e-12) {
                if (d.axes[k][i] < 0)
                    for (int j = 0; j < 3; ++j) d.axes[k][j] = -d.axes[k][j];
                break;
            }
        }
    }
    d.axes[2] = linalg::cross(d.axes[0], d.axes[1]);
    return d;
}

StressEnergyTensor boost(const StressEnergyTensor& T, const Vec3& beta) {
    const double b2 = linalg::dot(beta, beta);
    if (std::sqrt(b2) >= 1.0 - 1e-9) throw SuperluminalBoost("boost speed too close to c");
    if (b2 == 0.0) return T;
    const double gamma = 1.0 / std::sqrt(1.0 - b2);

    Mat4 L{};
    L[0][0] = gamma;
    for (int i = 0; i < 3; ++i) {
        L[0][i + 1] = L[i + 1][0] = gamma * beta[i];
        for (int j = 0; j < 3; ++j)
            L[i + 1][j + 1] = (i == j ? 1.0 : 0.0) + (gamma - 1.0) * beta[i] * beta[j] / b2;
    }

    Mat4 out{};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            double s = 0.0;
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) s += L[a][c] * T(c, d) * L[b][d];
            out[a][b] = s;
        }
    return StressEnergyTensor::from_components(out, T.frame_label());
}

ObserverContraction observer_contraction(const StressEnergyTensor& T,
                                         const Observer4Velocity& u) {
    ObserverContraction r;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) r.energy_density += T(a, b) * u[a] * u[b];
    for (int a = 0; a < 4; ++a) {
        double s = 0.0;
        for (int b = 0; b < 4; ++b) s += kMetricDiag[a] * T(a, b) * u[b];
        r.flux[a] = -s;
    }
    for (int a = 0; a < 4; ++a) r.flux_norm2 += kMetricDiag[a] * r.flux[a] * r.flux[a];
    return r;
}

}  // namespace vacbound
