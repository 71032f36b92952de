#include "vacbound/casimir.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <utility>

#include "vacbound/reduce.hpp"

namespace vacbound {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

CavitySpec CavitySpec::interval(double length) {
    if (length <= 0) throw UnsupportedGeometry("interval length must be positive");
    return {CavityKind::Interval, length, {}};
}

CavitySpec CavitySpec::slab(double gap) {
    if (gap <= 0) throw UnsupportedGeometry("slab gap must be positive");
    return {CavityKind::Slab, gap, {}};
}

CavitySpec CavitySpec::box(double R, const std::vector<double>& edge_ratios) {
    if (R <= 0) throw UnsupportedGeometry("box R must be positive");
    if (edge_ratios.size() != 3) throw UnsupportedGeometry("box needs three edge ratios");
    for (double x : edge_ratios)
        if (x <= 0) throw UnsupportedGeometry("box edge ratios must be positive");
    return {CavityKind::Box, R, edge_ratios};
}

std::vector<double> CavitySpec::normalized_edges() const {
    if (kind != CavityKind::Box) return {};
    double n2 = 0.0;
    for (double x : xi) n2 += x * x;
    const double norm = std::sqrt(n2);
    std::vector<double> a(3);
    for (int i = 0; i < 3; ++i) a[i] = 2.0 * xi[i] / norm;  // half-diagonal = 1 (units of R)
    return a;
}

ModeSpectrum enumerate_modes(const CavitySpec& cavity, std::size_t n_max) {
    if (n_max < 1) throw UnsupportedGeometry("n_max must be >= 1");
    ModeSpectrum sp;
    sp.kind = cavity.kind;
    sp.truncation = n_max;

    switch (cavity.kind) {
        case CavityKind::Interval:
        case CavityKind::Slab: {
            // Slab reduces to the same longitudinal Dirichlet tower; the
            // transverse continuum is handled analytically by the zeta route.
            sp.epsilons.reserve(n_max);
            sp.degeneracies.assign(n_max, 1.0);
            for (std::size_t n = 1; n <= n_max; ++n) sp.epsilons.push_back(double(n) * kPi);
            sp.complete_to = sp.epsilons.back();
            return sp;
        }
        case CavityKind::Box: {
            const auto a = cavity.normalized_edges();
            const double amax = *std::max_element(a.begin(), a.end());
            // keep only the completeness ball eps <= eps_c: every shell
            // below it is fully enumerated, shells above it are not
            const double eps_c = kPi * double(n_max) / amax;
            const double r2max = double(n_max) * double(n_max) / (amax * amax);
            std::vector<double> eps;
            for (std::size_t n1 = 1; n1 <= n_max; ++n1) {
                const double k1 = double(n1) / a[0];
                if (k1 * k1 > r2max) break;
                for (std::size_t n2 = 1; n2 <= n_max; ++n2) {
                    const double k2 = double(n2) / a[1];
                    if (k1 * k1 + k2 * k2 > r2max) break;
                    for (std::size_t n3 = 1; n3 <= n_max; ++n3) {
                        const double k3 = double(n3) / a[2];
                        const double r2 = k1 * k1 + k2 * k2 + k3 * k3;
                        if (r2 > r2max) break;
                        eps.push_back(kPi * std::sqrt(r2));
                    }
                }
            }
            if (eps.empty()) throw UnsupportedGeometry("truncation too small for this box");
            std::sort(eps.begin(), eps.end());
            // merge degeneracies at 1e-12 relative
            for (double e : eps) {
                if (!sp.epsilons.empty() && e - sp.epsilons.back() <= 1e-12 * e) {
                    sp.degeneracies.back() += 1.0;
                } else {
                    sp.epsilons.push_back(e);
                    sp.degeneracies.push_back(1.0);
                }
            }
            sp.complete_to = eps_c;
            return sp;
        }
    }
    throw UnsupportedGeometry("unknown cavity kind");
}

std::size_t recommended_truncation(const CavitySpec& cavity, std::size_t base) {
    if (cavity.kind != CavityKind::Box) return base * 10;
    const auto a = cavity.normalized_edges();
    const auto [amin, amax] = std::minmax_element(a.begin(), a.end());
    return static_cast<std::size_t>(std::ceil(double(base) * *amax / *amin));
}

// ---------------------------------------------------------------------------
// small dense least squares + quadrature helpers

namespace {

// Householder QR solve of the (already column-scaled) system A x = b.
std::vector<double> qr_solve(std::vector<std::vector<double>> A, std::vector<double> b) {
    const std::size_t m = A.size(), n = A[0].size();
    for (std::size_t k = 0; k < n; ++k) {
        double nrm = 0.0;
        for (std::size_t i = k; i < m; ++i) nrm += A[i][k] * A[i][k];
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) continue;
        if (A[k][k] > 0) nrm = -nrm;
        std::vector<double> v(m, 0.0);
        for (std::size_t i = k; i < m; ++i) v[i] = A[i][k];
        v[k] -= nrm;
        double vtv = 0.0;
        for (std::size_t i = k; i < m; ++i) vtv += v[i] * v[i];
        if (vtv == 0.0) continue;
        for (std::size_t j = k; j < n; ++j) {
            double vta = 0.0;
            for (std::size_t i = k; i < m; ++i) vta += v[i] * A[i][j];
            const double f = 2.0 * vta / vtv;
            for (std::size_t i = k; i < m; ++i) A[i][j] -= f * v[i];
        }
        double vtb = 0.0;
        for (std::size_t i = k; i < m; ++i) vtb += v[i] * b[i];
        const double f = 2.0 * vtb / vtv;
        for (std::size_t i = k; i < m; ++i) b[i] -= f * v[i];
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t k = n; k-- > 0;) {
        double s = b[k];
        for (std::size_t j = k + 1; j < n; ++j) s -= A[k][j] * x[j];
        x[k] = s / A[k][k];
    }
    return x;
}

// condition number of the scaled design matrix via Jacobi on A^T A
double design_condition(const std::vector<std::vector<double>>& A) {
    const std::size_t m = A.size(), n = A[0].size();
    std::vector<std::vector<double>> G(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < m; ++k) G[i][j] += A[k][i] * A[k][j];
    for (int sweep = 0; sweep < 50; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += G[p][q] * G[p][q];
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (G[p][q] == 0.0) continue;
                const double theta = (G[q][q] - G[p][p]) / (2.0 * G[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double gkp = G[k][p], gkq = G[k][q];
                    G[k][p] = c * gkp - s * gkq;
                    G[k][q] = s * gkp + c * gkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double gpk = G[p][k], gqk = G[q][k];
                    G[p][k] = c * gpk - s * gqk;
                    G[q][k] = s * gpk + c * gqk;
                }
            }
        }
    }
    double lmax = 0.0, lmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        lmax = std::max(lmax, G[i][i]);
        lmin = std::min(lmin, G[i][i]);
    }
    if (lmin <= 0) return std::numeric_limits<double>::infinity();
    return std::sqrt(lmax / lmin);
}

// Gauss-Legendre nodes/weights on [-1, 1] by Newton on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
}

double gl_integrate(double lo, double hi, int n, const std::function<double(double)>& f) {
    std::vector<double> x, w;
    gauss_legendre(n, x, w);
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += w[i] * f(mid + half * x[i]);
    return s * half;
}

// upper incomplete gamma for the half/whole orders used by the continuation
double upper_gamma_2(double x) { return (1.0 + x) * std::exp(-x); }
double upper_gamma_half(double x) { return std::sqrt(kPi) * std::erfc(std::sqrt(x)); }
double upper_gamma_3half(double x) {
    return 0.5 * upper_gamma_half(x) + std::sqrt(x) * std::exp(-x);
}
double upper_gamma_neg_half(double x) {
    return 2.0 * (std::exp(-x) / std::sqrt(x) - upper_gamma_half(x));
}

// full Epstein zeta Z_d(s; c) at s = -1/2 (d = 2 or 3) via the reflection
// representation; terms summed in fixed shell order, truncated when a
// Gaussian tail bound drops below 1e-14.
double epstein_full(double s, const std::vector<double>& c) {
    const int d = static_cast<int>(c.size());
    if (std::abs(s + 0.5) > 1e-12) throw ContinuationNonConvergent("only s = -1/2 supported");
    double detA = 1.0;
    double cmin = c[0], cinv_min = 1.0 / c[0];
    for (double ci : c) {
        detA *= ci;
        cmin = std::min(cmin, ci);
        cinv_min = std::min(cinv_min, 1.0 / ci);
    }
    const double inv_sqrt_det = 1.0 / std::sqrt(detA);

    double lam = -1.0 / s + inv_sqrt_det / (s - 0.5 * d);

    auto gamma_dual = [&](double x) {
        // Gamma(d/2 - s, x) with s = -1/2
        return d == 3 ? upper_gamma_2(x) : upper_gamma_3half(x);
    };

    const double decay = std::min(cmin, cinv_min);
    bool converged = false;
    for (int N = 1; N <= 80; ++N) {
        double shell = 0.0;
        // iterate the max-norm shell of radius N
        std::vector<int> n(d, -N);
        for (;;) {
            int maxabs = 0;
            for (int i = 0; i < d; ++i) maxabs = std::max(maxabs, std::abs(n[i]));
            if (maxabs == N) {
                double Q = 0.0, Qdual = 0.0;
                for (int i = 0; i < d; ++i) {
                    Q += c[i] * double(n[i]) * double(n[i]);
                    Qdual += double(n[i]) * double(n[i]) / c[i];
                }
                shell += std::pow(kPi * Q, -s) * upper_gamma_neg_half(kPi * Q);
                shell += inv_sqrt_det * std::pow(kPi * Qdual, s - 0.5 * d) *
                         gamma_dual(kPi * Qdual);
            }
            int i = 0;
            for (; i < d; ++i) {
                if (++n[i] <= N) break;
                n[i] = -N;
            }
            if (i == d) break;
        }
        lam += shell;
        const double r = std::exp(-kPi * decay * double(2 * N + 1));
        if (std::abs(shell) < 1e-14 && std::abs(shell) * r / (1.0 - r) < 1e-14 && N >= 3) {
            converged = true;
            break;
        }
    }
    if (!converged) throw ContinuationNonConvergent("Epstein reflection series tail bound not met");

    // Z = pi^s / Gamma(s) * Lambda; Gamma(-1/2) = -2 sqrt(pi)
    return std::pow(kPi, s) / (-2.0 * std::sqrt(kPi)) * lam;
}

}  // namespace

namespace zeta_detail {

double riemann_zeta(double s) {
    if (s > 1.0) {
        // Euler-Maclaurin
        const int N = 20;
        double sum = 0.0;
        for (int n = 1; n < N; ++n) sum += std::pow(double(n), -s);
        const double Ns = std::pow(double(N), -s);
        sum += Ns * double(N) / (s - 1.0) + 0.5 * Ns;
        sum += s * Ns / double(N) / 12.0;
        sum -= s * (s + 1.0) * (s + 2.0) * Ns / std::pow(double(N), 3) / 720.0;
        sum += s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * Ns /
               std::pow(double(N), 5) / 30240.0;
        return sum;
    }
    if (s < 0.0) {
        // reflection: zeta(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1-s) zeta(1-s)
        return std::pow(2.0, s) * std::pow(kPi, s - 1.0) * std::sin(0.5 * kPi * s) *
               std::tgamma(1.0 - s) * riemann_zeta(1.0 - s);
    }
    throw ContinuationNonConvergent("zeta not implemented on [0, 1]");
}

double abel_plana_zeta_neg3() {
    // regularized sum of n^3 with the free-space integral removed:
    //   2 * Int_0^inf t^3 / (e^{2 pi t} - 1) dt
    auto f = [](double t) { return t * t * t / std::expm1(2.0 * kPi * t); };
    return 2.0 * (gl_integrate(0.0, 1.0, 48, f) + gl_integrate(1.0, 3.0, 48, f) +
                  gl_integrate(3.0, 12.0, 48, f));
}

double epstein_positive_octant(double s, const std::vector<double>& c) {
    switch (c.size()) {
        case 1:
            return std::pow(c[0], -s) * riemann_zeta(2.0 * s);
        case 2: {
            const double z2 = epstein_full(s, c);
            return 0.25 * (z2 - 2.0 * epstein_positive_octant(s, {c[0]}) -
                           2.0 * epstein_positive_octant(s, {c[1]}));
        }
        case 3: {
            const double z3 = epstein_full(s, c);
            const double p12 = epstein_positive_octant(s, {c[0], c[1]});
            const double p13 = epstein_positive_octant(s, {c[0], c[2]});
            const double p23 = epstein_positive_octant(s, {c[1], c[2]});
            double p1 = 0.0;
            for (double ci : c) p1 += epstein_positive_octant(s, {ci});
            return 0.125 * (z3 - 4.0 * (p12 + p13 + p23) - 2.0 * p1);
        }
        default:
            throw ContinuationNonConvergent("Epstein octant sum: unsupported dimension");
    }
}

}  // namespace zeta_detail

// ---------------------------------------------------------------------------

std::vector<double> default_cutoffs(const ModeSpectrum& spectrum) {
    // smallest s with e^(-eps_c s) < 1e-16, spanning one decade upward;
    // deeper truncation moves the window toward s = 0 where the Laurent
    // model is most accurate
    double lo, hi;
    int n_pts;
    if (spectrum.kind == CavityKind::Box) {
        lo = 37.0 / spectrum.complete_to;
        n_pts = 16;
    } else {
        lo = std::max(0.02, 37.0 / spectrum.complete_to);
        n_pts = 12;
    }
    hi = 10.0 * lo;
    std::vector<double> s(n_pts);
    for (int i = 0; i < n_pts; ++i)
        s[i] = lo * std::pow(hi / lo, double(i) / double(n_pts - 1));
    return s;
}

VacuumEnergyResult vacuum_energy_cutoff(const ModeSpectrum& spectrum,
                                        const std::vector<double>& cutoffs, double R) {
    if (spectrum.kind == CavityKind::Slab)
        throw UnsupportedGeometry("slab per-area energy is computed by the zeta route");
    if (spectrum.epsilons.empty()) throw InsufficientDecay("empty mode spectrum");
    if (cutoffs.size() < 4) throw InsufficientDecay("need at least 4 cutoff values");
    const auto [lo_it, hi_it] = std::minmax_element(cutoffs.begin(), cutoffs.end());
    const double s_min = *lo_it, s_max = *hi_it;
    if (s_min <= 0) throw InsufficientDecay("cutoffs must be positive");
    if (s_max < 9.999 * s_min) throw InsufficientDecay("cutoffs must span at least a decade");
    if (std::exp(-spectrum.complete_to * s_min) >= 1e-16)
        throw InsufficientDecay("spectrum truncation too small for the smallest cutoff");

    // restrict to the completeness ball: modes above it belong to shells
    // the n_max enumeration only partially covers
    std::size_t m_count = spectrum.epsilons.size();
    while (m_count > 0 && spectrum.epsilons[m_count - 1] > spectrum.complete_to) --m_count;

    std::vector<double> S(cutoffs.size());
    for (std::size_t k = 0; k < cutoffs.size(); ++k) {
        const double s = cutoffs[k];
        S[k] = 0.5 * det_transform_sum(m_count, [&](std::size_t j) {
            return spectrum.degeneracies[j] * spectrum.epsilons[j] *
                   std::exp(-spectrum.epsilons[j] * s);
        });
    }

    const std::vector<int> powers = spectrum.kind == CavityKind::Box
                                        ? std::vector<int>{-4, -3, -2, 0, 2, 4, 6, 8}
                                        : std::vector<int>{-2, 0, 2, 4, 6};

    const std::size_t m = cutoffs.size(), n = powers.size();
    std::vector<std::vector<double>> A(m, std::vector<double>(n));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) A[i][j] = std::pow(cutoffs[i], powers[j]);
    std::vector<double> scale(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) scale[j] = std::max(scale[j], std::abs(A[i][j]));
        for (std::size_t i = 0; i < m; ++i) A[i][j] /= scale[j];
    }
    const double cond = design_condition(A);
    if (cond > 1e12) throw FitIllConditioned("Laurent fit condition number exceeds 1e12");

    std::vector<double> coef = qr_solve(A, S);
    double resid_max = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double fit = 0.0;
        for (std::size_t j = 0; j < n; ++j) fit += A[i][j] * coef[j];
        resid_max = std::max(resid_max, std::abs(fit - S[i]));
    }
    for (std::size_t j = 0; j < n; ++j) coef[j] /= scale[j];

    double c0 = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        if (powers[j] == 0) c0 = coef[j];

    // Richardson consistency check: subtract the fitted divergent terms and
    // extrapolate the remainder to s -> 0 through the smallest cutoffs
    // (even expansion, Neville in s^2).
    std::vector<std::pair<double, double>> rem;
    for (std::size_t i = 0; i < m; ++i) {
        double div = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (powers[j] < 0) div += coef[j] * std::pow(cutoffs[i], powers[j]);
        rem.emplace_back(cutoffs[i], S[i] - div);
    }
    std::sort(rem.begin(), rem.end());
    const std::size_t k_extrap = std::min<std::size_t>(4, rem.size());
    std::vector<double> xs(k_extrap), ys(k_extrap);
    for (std::size_t i = 0; i < k_extrap; ++i) {
        xs[i] = rem[i].first * rem[i].first;
        ys[i] = rem[i].second;
    }
    for (std::size_t lvl = 1; lvl < k_extrap; ++lvl)
        for (std::size_t i = 0; i + lvl < k_extrap; ++i)
            ys[i] = (xs[i + lvl] * ys[i] - xs[i] * ys[i + lvl]) / (xs[i + lvl] - xs[i]);
    const double richardson = k_extrap > 0 ? ys[0] : c0;

    VacuumEnergyResult r;
    r.scheme = RegularizationScheme::Cutoff;
    r.alpha = c0;
    r.error_estimate = std::max(std::abs(richardson - c0), 2.0 * resid_max);
    r.E_v = r.alpha / R;
    return r;
}

VacuumEnergyResult vacuum_energy_zeta(const CavitySpec& cavity) {
    VacuumEnergyResult r;
    r.scheme = RegularizationScheme::Zeta;
    switch (cavity.kind) {
        case CavityKind::Interval:
            r.alpha = 0.5 * kPi * zeta_detail::riemann_zeta(-1.0);
            r.error_estimate = 1e-15;
            r.E_v = r.alpha / cavity.R;
            return r;
        case CavityKind::Slab:
            // per-area coefficient: E_v/A = alpha * hbar c / d^3 for a
            // single Dirichlet scalar (x2 for the electromagnetic field)
            r.alpha = -(kPi * kPi / 12.0) * zeta_detail::abel_plana_zeta_neg3();
            r.error_estimate = 1e-13;
            r.E_v = r.alpha / (cavity.R * cavity.R * cavity.R);
            return r;
        case CavityKind::Box: {
            const auto a = cavity.normalized_edges();
            std::vector<double> c(3);
            for (int i = 0; i < 3; ++i) c[i] = 1.0 / (a[i] * a[i]);
            r.alpha = 0.5 * kPi * zeta_detail::epstein_positive_octant(-0.5, c);
            r.error_estimate = 1e-12;
            r.E_v = r.alpha / cavity.R;
            return r;
        }
    }
    throw UnsupportedGeometry("unknown cavity kind");
}

double scaling_check(const CavitySpec& cavity, double lambda) {
    if (lambda <= 0) throw UnsupportedGeometry("lambda must be positive");
    CavitySpec scaled = cavity;
    scaled.R = cavity.R * lambda;
    const VacuumEnergyResult base = vacuum_energy_zeta(cavity);
    const VacuumEnergyResult big = vacuum_energy_zeta(scaled);
    const double factor =
        cavity.kind == CavityKind::Slab ? lambda * lambda * lambda : lambda;
    return std::abs(big.E_v * factor - base.E_v) / std::abs(base.E_v);
}

}  // namespace vacbound
