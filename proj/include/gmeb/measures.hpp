#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

#include "gmeb/eig.hpp"
#include "gmeb/states.hpp"
#include "gmeb/tensor_ops.hpp"

namespace gmeb {

enum class MeasureKind {
    bipartite_concurrence,
    n_concurrence,
    gme_concurrence,
    tangle,
    negativity,
};

struct MeasureValue {
    double value = 0.0;
    MeasureKind kind = MeasureKind::bipartite_concurrence;
    std::optional<Bipartition> partition;
};

/// tr m^2 for Hermitian m, via the Frobenius identity sum_ij |m_ij|^2.
inline double purity(const ComplexMatrix& m, double herm_tol = 1e-10) {
    if (hermiticity_defect(m) > herm_tol)
        throw std::invalid_argument("purity: matrix not Hermitian within tolerance");
    double s = 0.0;
    for (const auto& z : m.data) s += std::norm(z);
    return s;
}

/// C_{x|xbar}(|psi>) = sqrt(2 (1 - tr rho_x^2)).
inline MeasureValue pure_bipartite_concurrence(const PureState& psi, const Bipartition& bp) {
    if (bp.n_parties != psi.n_parties())
        throw std::invalid_argument("pure_bipartite_concurrence: bipartition party count mismatch");
    const double p = reduction_purity(psi, bp.mask);
    return {std::sqrt(std::max(0.0, 2.0 * (1.0 - p))), MeasureKind::bipartite_concurrence, bp};
}

/// N-partite concurrence 2^{1-N/2} sqrt((2^N - 2) - sum_a tr rho_a^2),
/// the sum running over all 2^N - 2 reduced density matrices.
inline MeasureValue pure_multipartite_concurrence(const PureState& psi) {
    const int n = psi.n_parties();
    double purity_sum = 0.0;
    for (std::uint32_t mask : enumerate_reductions(n)) purity_sum += reduction_purity(psi, mask);
    const double radicand = (std::exp2(n) - 2.0) - purity_sum;
    const double value = std::exp2(1.0 - 0.5 * n) * std::sqrt(std::max(0.0, radicand));
    return {value, MeasureKind::n_concurrence, std::nullopt};
}

/// sqrt(min_x (1 - tr rho_x^2)) over all canonical bipartitions; zero iff
/// the state is biseparable across some cut.
inline MeasureValue pure_gme_concurrence(const PureState& psi) {
    double min_deficit = 1.0;
    for (const auto& bp : enumerate_bipartitions(psi.n_parties()))
        min_deficit = std::min(min_deficit, 1.0 - reduction_purity(psi, bp.mask));
    return {std::sqrt(std::max(0.0, min_deficit)), MeasureKind::gme_concurrence, std::nullopt};
}

/// Tangle 2^{2-N} sum_a (1 - tr rho_a^2); always agrees with the squared
/// N-partite concurrence, and that identity is asserted here.
inline MeasureValue pure_tangle(const PureState& psi) {
    const int n = psi.n_parties();
    double deficit_sum = 0.0;
    for (std::uint32_t mask : enumerate_reductions(n))
        deficit_sum += 1.0 - reduction_purity(psi, mask);
    const double tau = std::exp2(2.0 - n) * deficit_sum;
    const double c = pure_multipartite_concurrence(psi).value;
    if (std::abs(tau - c * c) > 1e-10)
        throw std::runtime_error("pure_tangle: tangle/concurrence identity violated");
    return {tau, MeasureKind::tangle, std::nullopt};
}

/// Global negativity of a pure state across the party|rest cut; equal to
/// the bipartite concurrence on that cut.
inline MeasureValue pure_global_negativity(const PureState& psi, int party) {
    if (party < 1 || party > psi.n_parties())
        throw std::invalid_argument("pure_global_negativity: party index out of range");
    const auto bp = Bipartition::make(psi.n_parties(), std::uint32_t{1} << (party - 1));
    auto mv = pure_bipartite_concurrence(psi, bp);
    mv.kind = MeasureKind::negativity;
    return mv;
}

struct PtCcnrParts {
    double value = 0.0;         // the concurrence lower bound (can exceed 0 only if NPT or CCNR fires)
    double pt_norm = 0.0;       // ||rho^{T_x}||_KF
    double realign_norm = 0.0;  // ||R_{x|xbar}(rho)||_KF
    int min_factor_dim = 0;     // m = min(d_x, d_xbar)
};

/// Computable lower bound on the bipartite concurrence across a cut:
///   sqrt(2/(m(m-1))) * (max{||rho^{T_x}||, ||R(rho)||} - 1),
/// m the smaller factor dimension. Nonnegative for every state since the
/// trace norm of a unit-trace matrix is at least 1.
inline PtCcnrParts pt_ccnr_bipartite_bound_parts(const MultipartiteState& state,
                                                 const Bipartition& bp) {
    if (bp.n_parties != state.n_parties())
        throw std::invalid_argument("pt_ccnr_bipartite_bound: bipartition party count mismatch");
    PtCcnrParts parts;
    parts.pt_norm = trace_norm(partial_transpose(state, bp.mask));
    parts.realign_norm = trace_norm(realign(state, bp.mask));
    const std::size_t dx = detail::subset_dimension(state.dims, bp.x());
    const std::size_t dxb = state.dim() / dx;
    parts.min_factor_dim = static_cast<int>(std::min(dx, dxb));
    const double m = static_cast<double>(parts.min_factor_dim);
    parts.value = std::sqrt(2.0 / (m * (m - 1.0))) *
                  (std::max(parts.pt_norm, parts.realign_norm) - 1.0);
    return parts;
}

inline double pt_ccnr_bipartite_bound(const MultipartiteState& state, const Bipartition& bp) {
    return pt_ccnr_bipartite_bound_parts(state, bp).value;
}

/// ||rho^{T_x}|| - 1: the standard computable negativity, which lower
/// bounds the convex-roof extension of the pure-state global negativity.
inline double negativity_lower_bound(const MultipartiteState& state, const Bipartition& bp) {
    if (bp.n_parties != state.n_parties())
        throw std::invalid_argument("negativity_lower_bound: bipartition party count mismatch");
    return trace_norm(partial_transpose(state, bp.mask)) - 1.0;
}

}  // namespace gmeb
