#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "gmeb/eig.hpp"
#include "gmeb/matrix.hpp"
#include "gmeb/rng.hpp"

namespace gmeb {

/// A state object failed a quantum-mechanical validity check (Hermiticity,
/// unit trace, positivity, normalization).
struct PhysicalityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace tol {
constexpr double hermiticity = 1e-10;
constexpr double trace_one = 1e-10;
constexpr double psd_floor = -1e-9;
constexpr double unit_norm = 1e-10;
constexpr double weight_sum = 1e-12;
}  // namespace tol

inline std::size_t total_dimension(const std::vector<int>& dims) {
    std::size_t d = 1;
    for (int di : dims) d *= static_cast<std::size_t>(di);
    return d;
}

inline void check_dims(const std::vector<int>& dims) {
    if (dims.empty()) throw std::invalid_argument("state: dims must be nonempty");
    for (int d : dims)
        if (d < 2) throw std::invalid_argument("state: every local dimension must be >= 2");
    if (dims.size() > 20) throw std::invalid_argument("state: too many parties");
}

/// Normalized pure state with party structure. Party 1 is the most
/// significant digit of the composite basis index, so amplitudes read in
/// ket order |k1 k2 ... kN>.
struct PureState {
    std::vector<int> dims;
    std::vector<cplx> amplitudes;

    int n_parties() const { return static_cast<int>(dims.size()); }
    std::size_t dim() const { return amplitudes.size(); }

    static PureState make(std::vector<int> dims, std::vector<cplx> amplitudes) {
        check_dims(dims);
        if (amplitudes.size() != total_dimension(dims))
            throw std::invalid_argument("PureState: amplitude count does not match dims");
        double n2 = 0.0;
        for (const cplx& z : amplitudes) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw PhysicalityError("PureState: non-finite amplitude");
            n2 += std::norm(z);
        }
        if (std::abs(std::sqrt(n2) - 1.0) > tol::unit_norm)
            throw PhysicalityError("PureState: norm " + std::to_string(std::sqrt(n2)) +
                                   " deviates from 1 beyond tolerance");
        return {std::move(dims), std::move(amplitudes)};
    }
};

/// Density matrix with per-party local dimensions. Construction validates
/// Hermiticity, unit trace and positivity (within fixed tolerances), so a
/// held instance is always a physical state.
struct MultipartiteState {
    std::vector<int> dims;
    ComplexMatrix rho;

    int n_parties() const { return static_cast<int>(dims.size()); }
    std::size_t dim() const { return rho.rows; }

    bool homogeneous() const {
        for (int d : dims)
            if (d != dims[0]) return false;
        return true;
    }
    int local_dim() const {
        if (!homogeneous())
            throw std::invalid_argument("state: heterogeneous local dimensions");
        return dims[0];
    }

    static MultipartiteState make(std::vector<int> dims, ComplexMatrix rho) {
        check_dims(dims);
        const std::size_t d = total_dimension(dims);
        if (rho.rows != d || rho.cols != d)
            throw std::invalid_argument("MultipartiteState: matrix is " + std::to_string(rho.rows) +
                                        "x" + std::to_string(rho.cols) + ", dims imply " +
                                        std::to_string(d) + "x" + std::to_string(d));
        if (!all_finite(rho)) throw PhysicalityError("MultipartiteState: non-finite entry");
        const double defect = hermiticity_defect(rho);
        if (defect > tol::hermiticity)
            throw PhysicalityError("MultipartiteState: not Hermitian, max deviation " +
                                   std::to_string(defect));
        const cplx tr = trace(rho);
        if (std::abs(tr - cplx(1.0)) > tol::trace_one)
            throw PhysicalityError("MultipartiteState: trace " + std::to_string(tr.real()) +
                                   " deviates from 1 beyond tolerance");
        const auto eig = hermitian_eigenvalues(rho, tol::hermiticity);
        if (eig.front() < tol::psd_floor)
            throw PhysicalityError("MultipartiteState: minimum eigenvalue " +
                                   std::to_string(eig.front()) + " below PSD tolerance");
        return {std::move(dims), std::move(rho)};
    }
};

/// Weighted list of pure states over common dims; a candidate convex
/// decomposition of some density matrix.
struct Ensemble {
    std::vector<double> weights;
    std::vector<PureState> members;

    static Ensemble make(std::vector<double> weights, std::vector<PureState> members) {
        if (weights.size() != members.size() || weights.empty())
            throw std::invalid_argument("Ensemble: weight/member count mismatch");
        double sum = 0.0;
        for (double w : weights) {
            if (!(w > 0.0)) throw std::invalid_argument("Ensemble: weights must be positive");
            sum += w;
        }
        if (std::abs(sum - 1.0) > tol::unit_norm)
            throw std::invalid_argument("Ensemble: weights sum to " + std::to_string(sum));
        for (const auto& m : members)
            if (m.dims != members.front().dims)
                throw std::invalid_argument("Ensemble: members have mismatched dims");
        return {std::move(weights), std::move(members)};
    }
};

/// Rank-one projector |psi><psi|.
inline MultipartiteState density_of(const PureState& psi) {
    const std::size_t d = psi.dim();
    ComplexMatrix rho(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            rho(i, j) = psi.amplitudes[i] * std::conj(psi.amplitudes[j]);
    return MultipartiteState::make(psi.dims, std::move(rho));
}

/// Equal superposition of the d diagonal product basis states,
/// (1/sqrt(d)) sum_k |k>^{tensor N}.
inline PureState ghz(int n_parties, int d) {
    if (n_parties < 2 || d < 2) throw std::invalid_argument("ghz: need n_parties >= 2 and d >= 2");
    std::vector<int> dims(static_cast<std::size_t>(n_parties), d);
    std::vector<cplx> amps(total_dimension(dims));
    const double w = 1.0 / std::sqrt(static_cast<double>(d));
    for (int k = 0; k < d; ++k) {
        std::size_t idx = 0;
        for (int p = 0; p < n_parties; ++p) idx = idx * d + static_cast<std::size_t>(k);
        amps[idx] = w;
    }
    return PureState::make(std::move(dims), std::move(amps));
}

/// Uniform single-excitation qubit state, amplitude 1/sqrt(N) on each
/// weight-one computational basis state.
inline PureState w_state(int n_parties) {
    if (n_parties < 2) throw std::invalid_argument("w_state: need n_parties >= 2");
    std::vector<int> dims(static_cast<std::size_t>(n_parties), 2);
    std::vector<cplx> amps(total_dimension(dims));
    const double w = 1.0 / std::sqrt(static_cast<double>(n_parties));
    for (int p = 0; p < n_parties; ++p) amps[std::size_t(1) << (n_parties - 1 - p)] = w;
    return PureState::make(std::move(dims), std::move(amps));
}

inline MultipartiteState maximally_mixed(std::vector<int> dims) {
    check_dims(dims);
    const std::size_t d = total_dimension(dims);
    ComplexMatrix rho(d, d);
    for (std::size_t i = 0; i < d; ++i) rho(i, i) = 1.0 / static_cast<double>(d);
    return MultipartiteState::make(std::move(dims), std::move(rho));
}

/// Convex combination sum_i w_i rho_i. Weights must be nonnegative and sum
/// to 1 within 1e-12; the result is revalidated (PSD check included).
inline MultipartiteState mix(const std::vector<MultipartiteState>& states,
                             const std::vector<double>& weights) {
    if (states.empty() || states.size() != weights.size())
        throw std::invalid_argument("mix: need one weight per state");
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw std::invalid_argument("mix: negative weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > tol::weight_sum)
        throw std::invalid_argument("mix: weights sum to " + std::to_string(sum));
    const auto& dims = states.front().dims;
    for (const auto& s : states)
        if (s.dims != dims) throw std::invalid_argument("mix: states have mismatched dims");
    const std::size_t d = states.front().dim();
    ComplexMatrix rho(d, d);
    for (std::size_t s = 0; s < states.size(); ++s)
        for (std::size_t i = 0; i < rho.data.size(); ++i)
            rho.data[i] += weights[s] * states[s].rho.data[i];
    return MultipartiteState::make(dims, std::move(rho));
}

/// Haar-random pure state (normalized complex Gaussian vector).
inline PureState random_pure(std::vector<int> dims, std::mt19937_64& eng) {
    check_dims(dims);
    const std::size_t d = total_dimension(dims);
    std::normal_distribution<double> n01(0.0, 1.0);
    std::vector<cplx> amps(d);
    double n2 = 0.0;
    for (auto& z : amps) {
        z = cplx(n01(eng), n01(eng));
        n2 += std::norm(z);
    }
    const double nrm = std::sqrt(n2);
    for (auto& z : amps) z /= nrm;
    return PureState::make(std::move(dims), std::move(amps));
}

/// Random mixed state of the given rank: Haar-random orthonormal support
/// with weights bounded away from zero, so the rank is numerically honest.
inline MultipartiteState random_mixed(std::vector<int> dims, int rank, std::mt19937_64& eng) {
    check_dims(dims);
    const std::size_t d = total_dimension(dims);
    if (rank < 1 || static_cast<std::size_t>(rank) > d)
        throw std::invalid_argument("random_mixed: rank out of range");
    const ComplexMatrix u = random_unitary(d, eng);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::vector<double> w(static_cast<std::size_t>(rank));
    double sum = 0.0;
    for (auto& wi : w) {
        wi = 0.5 + u01(eng);
        sum += wi;
    }
    for (auto& wi : w) wi /= sum;
    ComplexMatrix rho(d, d);
    for (int k = 0; k < rank; ++k)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                rho(i, j) += w[static_cast<std::size_t>(k)] * u(i, static_cast<std::size_t>(k)) *
                             std::conj(u(j, static_cast<std::size_t>(k)));
    return MultipartiteState::make(std::move(dims), std::move(rho));
}

/// sum_i w_i |psi_i><psi_i| of an ensemble, validated as a state.
inline MultipartiteState reconstruct(const Ensemble& e) {
    const std::size_t d = e.members.front().dim();
    ComplexMatrix rho(d, d);
    for (std::size_t k = 0; k < e.members.size(); ++k) {
        const auto& amps = e.members[k].amplitudes;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                rho(i, j) += e.weights[k] * amps[i] * std::conj(amps[j]);
    }
    return MultipartiteState::make(e.members.front().dims, std::move(rho));
}

}  // namespace gmeb
