#ifndef VACBOUND_TENSOR_HPP
#define VACBOUND_TENSOR_HPP

#include <array>
#include <string>

#include "vacbound/errors.hpp"

namespace vacbound {

// Metric signature (-,+,+,+); natural units hbar = c = 1 inside the core.
inline constexpr std::array<double, 4> kMetricDiag{-1.0, 1.0, 1.0, 1.0};

using Vec3 = std::array<double, 3>;
using Vec4 = std::array<double, 4>;
using Mat3 = std::array<std::array<double, 3>, 3>;
using Mat4 = std::array<std::array<double, 4>, 4>;

/// Symmetric rank-2 stress-energy tensor in a fixed frame, components in
/// energy-density units.  Symmetrized at construction; all entries must
/// be finite.  Default-constructed: the zero tensor.
class StressEnergyTensor {
public:
    StressEnergyTensor() = default;

    static StressEnergyTensor from_components(const Mat4& m, std::string frame_label = {});

    // Convenience: diag(rho, p1, p2, p3) in the matter rest frame.
    static StressEnergyTensor diagonal(double rho, double p1, double p2, double p3,
                                       std::string frame_label = {});

    double operator()(int a, int b) const { return c_[a][b]; }
    const Mat4& components() const { return c_; }
    const std::string& frame_label() const { return frame_label_; }

    // g^{mu nu} T_{mu nu}
    double full_trace() const {
        double t = 0.0;
        for (int a = 0; a < 4; ++a) t += kMetricDiag[a] * c_[a][a];
        return t;
    }
    double frobenius_norm() const;

private:
    Mat4 c_{};
    std::string frame_label_;
};

/// Future-pointing unit timelike 4-vector, u.u = -1 within 1e-12.
class Observer4Velocity {
public:
    static Observer4Velocity from_components(const Vec4& u);
    // gamma(1, beta) normalized; |beta| < 1.
    static Observer4Velocity from_beta(const Vec3& beta);
    // (cosh chi, sinh chi * n_hat)
    static Observer4Velocity from_rapidity(double chi, const Vec3& direction);

    double operator[](int a) const { return u_[a]; }
    const Vec4& components() const { return u_; }

private:
    Observer4Velocity() = default;
    Vec4 u_{};
};

struct RestFrameDecomposition {
    double rho = 0.0;
    Vec3 pressures{};  // spatial eigenvalues, sorted descending
    std::array<Vec3, 3> axes{};  // right-handed orthonormal eigenvectors
};

/// Diagonalizes the spatial block in the matter rest frame (T_tj must
/// vanish to 1e-12 relative).  Eigenvalues descend; ties broken by the
/// sign rule (first nonzero component positive) on the first two axes,
/// the third is their cross product.
RestFrameDecomposition rest_frame_decompose(const StressEnergyTensor& T);

/// T' = Lambda T Lambda^T with the standard boost matrix.  |beta| must be
/// below 1 - 1e-9.
StressEnergyTensor boost(const StressEnergyTensor& T, const Vec3& beta);

struct ObserverContraction {
    double energy_density = 0.0;  // T_{ab} u^a u^b
    Vec4 flux{};                  // f^a = -T^a_b u^b
    double flux_norm2 = 0.0;      // f.f (timelike iff < 0)
};

ObserverContraction observer_contraction(const StressEnergyTensor& T,
                                         const Observer4Velocity& u);

// Small dense helpers shared by the numeric modules.
namespace linalg {

// Cyclic Jacobi eigensolver for a symmetric 3x3 block; converges when the
// off-diagonal norm drops below 1e-14 * ||block||.
void jacobi_eigen3(const Mat3& m, Vec3& eigenvalues, Mat3& eigenvectors_cols);

Vec3 cross(const Vec3& a, const Vec3& b);
double dot(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);

}  // namespace linalg

}  // namespace vacbound

#endif
