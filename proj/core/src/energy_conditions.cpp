#include "vacbound/energy_conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "vacbound/reduce.hpp"

namespace vacbound {

const char* to_string(ConditionKind k) {
    switch (k) {
        case ConditionKind::WEC: return "WEC";
        case ConditionKind::NEC: return "NEC";
        case ConditionKind::SEC: return "SEC";
        case ConditionKind::DEC: return "DEC";
        case ConditionKind::STEC: return "STEC";
    }
    return "?";
}

const char* to_string(ConditionStatus s) {
    switch (s) {
        case ConditionStatus::Satisfied: return "Satisfied";
        case ConditionStatus::Saturated: return "Saturated";
        case ConditionStatus::Violated: return "Violated";
    }
    return "?";
}

namespace {

ConditionStatus status_for(double margin, double rho_scale) {
    const double tol = kSaturationTolRel * std::abs(rho_scale);
    if (margin > tol) return ConditionStatus::Satisfied;
    if (margin < -tol) return ConditionStatus::Violated;
    return ConditionStatus::Saturated;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

ConditionVerdict check_condition(const StressEnergyTensor& T, ConditionKind kind) {
    const RestFrameDecomposition d = rest_frame_decompose(T);
    const double rho = d.rho;
    const auto& p = d.pressures;
    const double psum = p[0] + p[1] + p[2];

    double margin = 0.0;
    switch (kind) {
        case ConditionKind::WEC:
            margin = std::min({rho, rho + p[0], rho + p[1], rho + p[2]});
            break;
        case ConditionKind::NEC:
            margin = std::min({rho + p[0], rho + p[1], rho + p[2]});
            break;
        case ConditionKind::SEC:
            margin = std::min({rho + psum, rho + p[0], rho + p[1], rho + p[2]});
            break;
        case ConditionKind::DEC:
            margin = std::min({rho, rho - std::abs(p[0]), rho - std::abs(p[1]),
                               rho - std::abs(p[2])});
            break;
        case ConditionKind::STEC:
            // infimum over observers: rho_u - |P_u| is nondecreasing in
            // rho_u, so the rest-frame value rho - |sum p| is the infimum
            // only while every rho + p_i stays nonnegative
            margin = std::min({rho - std::abs(psum), rho + p[0], rho + p[1], rho + p[2]});
            break;
    }
    return {status_for(margin, rho), margin, std::nullopt};
}

ConditionVerdict covariant_verify(const StressEnergyTensor& T, ConditionKind kind,
                                  const CovariantSamplingParams& params) {
    const std::size_t n = std::max<std::size_t>(params.n_samples, 1);
    const std::size_t n_chunks = std::min(kChunks, n);
    const double trace = T.full_trace();

    struct Best {
        double margin = std::numeric_limits<double>::infinity();
        Vec4 witness{};
    };
    std::vector<Best> best(n_chunks);

    for_each_chunk(n_chunks, [&](std::size_t c) {
        auto [lo, hi] = chunk_range(n, c, n_chunks);
        std::mt19937_64 rng(splitmix64(params.seed + 0x517cc1b727220a95ULL * (c + 1)));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        Best b;
        for (std::size_t i = lo; i < hi; ++i) {
            const double z = 2.0 * unit(rng) - 1.0;
            const double phi = 2.0 * std::numbers::pi * unit(rng);
            const double rxy = std::sqrt(std::max(0.0, 1.0 - z * z));
            const Vec3 dir{rxy * std::cos(phi), rxy * std::sin(phi), z};
            double margin;
            Vec4 w;
            if (kind == ConditionKind::NEC) {
                // null vectors k = (1, n_hat); the rapidity draw is unused
                w = {1.0, dir[0], dir[1], dir[2]};
                margin = 0.0;
                for (int a = 0; a < 4; ++a)
                    for (int bb = 0; bb < 4; ++bb) margin += T(a, bb) * w[a] * w[bb];
            } else {
                const double chi = params.chi_max * unit(rng);
                const auto u = Observer4Velocity::from_rapidity(chi, dir);
                const auto oc = observer_contraction(T, u);
                w = u.components();
                switch (kind) {
                    case ConditionKind::WEC:
                        margin = oc.energy_density;
                        break;
                    case ConditionKind::SEC:
                        // (T_ab - 1/2 g_ab T) u^a u^b with u.u = -1
                        margin = oc.energy_density + 0.5 * trace;
                        break;
                    case ConditionKind::DEC:
                        margin = std::min(oc.energy_density, -oc.flux_norm2);
                        break;
                    case ConditionKind::STEC:
                        margin = oc.energy_density - std::abs(trace + oc.energy_density);
                        break;
                    default:
                        margin = 0.0;
                        break;
                }
            }
            if (margin < b.margin) {
                b.margin = margin;
                b.witness = w;
            }
        }
        best[c] = b;
    }, params.n_threads);

    Best overall;
    for (const auto& b : best)
        if (b.margin < overall.margin) overall = b;

    return {status_for(overall.margin, T(0, 0)), overall.margin, overall.witness};
}

ConditionProfile classify(const StressEnergyTensor& T) {
    ConditionProfile prof;
    for (ConditionKind k : {ConditionKind::WEC, ConditionKind::NEC, ConditionKind::SEC,
                            ConditionKind::DEC, ConditionKind::STEC})
        prof.verdicts.emplace(k, check_condition(T, k));

    const auto& stec = prof.verdicts.at(ConditionKind::STEC);
    if (stec.status == ConditionStatus::Satisfied) {
        for (ConditionKind k : {ConditionKind::SEC, ConditionKind::WEC, ConditionKind::NEC}) {
            if (prof.verdicts.at(k).status == ConditionStatus::Violated)
                throw ImplicationViolation(std::string("STEC satisfied but ") + to_string(k) +
                                           " violated: internal error");
        }
    }
    return prof;
}

}  // namespace vacbound
