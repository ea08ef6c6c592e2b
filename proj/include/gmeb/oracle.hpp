#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "gmeb/bounds.hpp"
#include "gmeb/measures.hpp"
#include "gmeb/rng.hpp"
#include "gmeb/states.hpp"

namespace gmeb {

struct OracleResult {
    double upper_bound = 0.0;
    Ensemble best_ensemble;
    int samples_used = 0;
    std::uint64_t seed = 0;
};

namespace detail {

constexpr double oracle_rank_cutoff = 1e-10;

inline double ensemble_average_gme(const Ensemble& e) {
    double sum = 0.0;
    for (std::size_t i = 0; i < e.members.size(); ++i)
        sum += e.weights[i] * pure_gme_concurrence(e.members[i]).value;
    return sum;
}

}  // namespace detail

/// Randomized convex-decomposition upper bound on the GME concurrence.
///
/// Every ensemble decomposition of rho arises from an isometry acting on
/// its eigendecomposition, so each sample draws a Haar unitary, truncates
/// it to an ensemble_size x rank isometry V and forms the unnormalized
/// members |psi_i> = sum_j conj(V_ij) sqrt(lambda_j) |e_j>. The averaged
/// pure-state GME concurrence of any such ensemble upper-bounds the convex
/// roof; the minimum over samples (sample 0 being the bare
/// eigendecomposition) is returned. ensemble_size <= 0 selects rank + 2.
inline OracleResult decomposition_upper_bound(const MultipartiteState& state, int n_samples,
                                              int ensemble_size, std::uint64_t seed) {
    if (n_samples < 1) throw std::invalid_argument("decomposition_upper_bound: n_samples >= 1");
    const auto es = hermitian_eigensystem(state.rho);
    const std::size_t dim = state.dim();

    std::vector<double> lambda;
    std::vector<std::size_t> kept;
    for (std::size_t k = 0; k < es.values.size(); ++k)
        if (es.values[k] > detail::oracle_rank_cutoff) {
            lambda.push_back(es.values[k]);
            kept.push_back(k);
        }
    const int rank = static_cast<int>(kept.size());
    if (ensemble_size <= 0) ensemble_size = rank + 2;
    if (ensemble_size < rank)
        throw std::invalid_argument("decomposition_upper_bound: ensemble_size " +
                                    std::to_string(ensemble_size) + " below rank " +
                                    std::to_string(rank));
    double weight_total = 0.0;
    for (double l : lambda) weight_total += l;

    // sample 0: the eigendecomposition itself
    Ensemble best;
    {
        std::vector<double> w;
        std::vector<PureState> members;
        for (int j = 0; j < rank; ++j) {
            w.push_back(lambda[static_cast<std::size_t>(j)] / weight_total);
            std::vector<cplx> amps(dim);
            for (std::size_t i = 0; i < dim; ++i) amps[i] = es.vectors(i, kept[static_cast<std::size_t>(j)]);
            members.push_back(PureState::make(state.dims, std::move(amps)));
        }
        best = Ensemble::make(std::move(w), std::move(members));
    }
    double best_value = detail::ensemble_average_gme(best);

    std::vector<double> sqrt_lambda(lambda.size());
    for (std::size_t j = 0; j < lambda.size(); ++j) sqrt_lambda[j] = std::sqrt(lambda[j]);

    for (int s = 1; s <= n_samples; ++s) {
        // one deterministic stream per sample, so results do not depend on
        // evaluation order
        std::mt19937_64 eng(seed + static_cast<std::uint64_t>(s));
        const ComplexMatrix u = random_unitary(static_cast<std::size_t>(ensemble_size), eng);
        std::vector<double> w;
        std::vector<PureState> members;
        for (int i = 0; i < ensemble_size; ++i) {
            std::vector<cplx> amps(dim);
            for (int j = 0; j < rank; ++j) {
                const cplx coeff = std::conj(u(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) *
                                   sqrt_lambda[static_cast<std::size_t>(j)];
                const std::size_t col = kept[static_cast<std::size_t>(j)];
                for (std::size_t r = 0; r < dim; ++r) amps[r] += coeff * es.vectors(r, col);
            }
            double p = 0.0;
            for (const cplx& z : amps) p += std::norm(z);
            if (p <= 1e-15) continue;  // measure-zero member, drop it
            const double inv = 1.0 / std::sqrt(p);
            for (cplx& z : amps) z *= inv;
            w.push_back(p / weight_total);
            members.push_back(PureState::make(state.dims, std::move(amps)));
        }
        Ensemble candidate = Ensemble::make(std::move(w), std::move(members));
        const double value = detail::ensemble_average_gme(candidate);
        if (value < best_value) {
            best_value = value;
            best = std::move(candidate);
        }
    }

    OracleResult result;
    result.upper_bound = best_value;
    result.best_ensemble = std::move(best);
    result.samples_used = n_samples + 1;
    result.seed = seed;
    return result;
}

inline OracleResult decomposition_upper_bound(const MultipartiteState& state, int n_samples,
                                              std::uint64_t seed) {
    return decomposition_upper_bound(state, n_samples, 0, seed);
}

struct SandwichViolation {
    std::string bound;
    double clamped = 0.0;
    double upper = 0.0;
};

struct SandwichVerdict {
    bool pass = true;
    double upper_bound = 0.0;
    double slack = 0.0;
    std::vector<SandwichViolation> violations;
};

/// Checks every certifying clamped lower bound of the report against the
/// oracle's upper bound (plus slack). Entries whose published constants are
/// not proven sound (certifying = false) are informational and skipped.
inline SandwichVerdict sandwich_check(const MultipartiteState& state, const BoundReport& report,
                                      const OracleResult& oracle, double slack) {
    if (!oracle.best_ensemble.members.empty() &&
        oracle.best_ensemble.members.front().dims != state.dims)
        throw std::invalid_argument("sandwich_check: oracle and report refer to different states");
    if (report.dims != state.dims)
        throw std::invalid_argument("sandwich_check: report dims mismatch");
    SandwichVerdict verdict;
    verdict.upper_bound = oracle.upper_bound;
    verdict.slack = slack;
    for (const auto& e : report.entries) {
        if (!e.available || !e.certifying) continue;
        if (e.clamped > oracle.upper_bound + slack) {
            verdict.pass = false;
            verdict.violations.push_back({e.name + (e.mode.empty() ? "" : " [" + e.mode + "]"),
                                          e.clamped, oracle.upper_bound});
        }
    }
    return verdict;
}

}  // namespace gmeb
