#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gmeb/matrix.hpp"
#include "gmeb/states.hpp"

namespace gmeb {

// Party subsets are bitmasks: bit (p-1) set means party p belongs to the
// subset. Parties are 1-based in every user-facing surface.

inline std::uint32_t full_mask(int n_parties) {
    return (std::uint32_t{1} << n_parties) - 1;
}

inline std::uint32_t parties_to_mask(const std::vector<int>& parties) {
    std::uint32_t m = 0;
    for (int p : parties) {
        if (p < 1 || p > 32) throw std::invalid_argument("party index out of range");
        m |= std::uint32_t{1} << (p - 1);
    }
    return m;
}

inline std::vector<int> mask_to_parties(std::uint32_t mask) {
    std::vector<int> out;
    for (int p = 1; p <= 32; ++p)
        if (mask >> (p - 1) & 1u) out.push_back(p);
    return out;
}

inline std::string subset_label(int n_parties, std::uint32_t x) {
    std::string s;
    for (int p = 1; p <= n_parties; ++p)
        if (x >> (p - 1) & 1u) s += std::to_string(p);
    s += '|';
    for (int p = 1; p <= n_parties; ++p)
        if (!(x >> (p - 1) & 1u)) s += std::to_string(p);
    return s;
}

/// A split of the N parties into a nonempty proper subset x and its
/// complement. Canonical form keeps party 1 on the x side, so x|xbar and
/// xbar|x collapse to one representative.
struct Bipartition {
    int n_parties = 0;
    std::uint32_t mask = 0;  // the x side, always containing party 1

    static Bipartition make(int n_parties, std::uint32_t subset) {
        if (n_parties < 2 || n_parties > 20)
            throw std::invalid_argument("Bipartition: n_parties out of range");
        const std::uint32_t full = full_mask(n_parties);
        if (subset == 0 || (subset & ~full) != 0 || subset == full)
            throw std::invalid_argument("Bipartition: subset must be a nonempty proper subset");
        if (!(subset & 1u)) subset = full & ~subset;  // canonicalize
        return {n_parties, subset};
    }

    std::uint32_t x() const { return mask; }
    std::uint32_t xbar() const { return full_mask(n_parties) & ~mask; }
    int x_size() const { return std::popcount(mask); }
    int xbar_size() const { return n_parties - x_size(); }
    std::string label() const { return subset_label(n_parties, mask); }

    friend bool operator==(const Bipartition& a, const Bipartition& b) {
        return a.n_parties == b.n_parties && a.mask == b.mask;
    }
    friend bool operator<(const Bipartition& a, const Bipartition& b) {
        return a.n_parties != b.n_parties ? a.n_parties < b.n_parties : a.mask < b.mask;
    }
};

/// All 2^{N-1}-1 canonical bipartitions, ascending by mask value.
/// For N=3 that order is 1|23, 12|3, 13|2.
inline std::vector<Bipartition> enumerate_bipartitions(int n_parties) {
    if (n_parties < 2) throw std::invalid_argument("enumerate_bipartitions: need n_parties >= 2");
    std::vector<Bipartition> out;
    const std::uint32_t full = full_mask(n_parties);
    for (std::uint32_t m = 1; m < full; ++m)
        if (m & 1u) out.push_back(Bipartition{n_parties, m});
    return out;
}

/// All 2^N - 2 nonempty proper party subsets (both a subset and its
/// complement appear), ordered by size then mask value.
inline std::vector<std::uint32_t> enumerate_reductions(int n_parties) {
    if (n_parties < 2) throw std::invalid_argument("enumerate_reductions: need n_parties >= 2");
    std::vector<std::uint32_t> out;
    const std::uint32_t full = full_mask(n_parties);
    for (int size = 1; size < n_parties; ++size)
        for (std::uint32_t m = 1; m < full; ++m)
            if (std::popcount(m) == size) out.push_back(m);
    return out;
}

namespace detail {

inline std::size_t subset_dimension(const std::vector<int>& dims, std::uint32_t mask) {
    std::size_t d = 1;
    for (std::size_t p = 0; p < dims.size(); ++p)
        if (mask >> p & 1u) d *= static_cast<std::size_t>(dims[p]);
    return d;
}

// Basis map for the (x, xbar) factorization: entry [i * d_xbar + j] is the
// original composite index whose x-digits (ascending party order) encode i
// and whose xbar-digits encode j. Party 1 is the most significant digit of
// the original composite index.
inline std::vector<std::size_t> factor_index_map(const std::vector<int>& dims, std::uint32_t x) {
    const int n = static_cast<int>(dims.size());
    const std::size_t total = total_dimension(dims);
    const std::size_t dxb = subset_dimension(dims, full_mask(n) & ~x);
    std::vector<std::size_t> map(total);
    std::vector<int> digit(static_cast<std::size_t>(n), 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        for (int p = n - 1; p >= 0; --p) {
            digit[static_cast<std::size_t>(p)] = static_cast<int>(rem % static_cast<std::size_t>(dims[static_cast<std::size_t>(p)]));
            rem /= static_cast<std::size_t>(dims[static_cast<std::size_t>(p)]);
        }
        std::size_t ix = 0, jx = 0;
        for (int p = 0; p < n; ++p) {
            if (x >> p & 1u)
                ix = ix * static_cast<std::size_t>(dims[static_cast<std::size_t>(p)]) +
                     static_cast<std::size_t>(digit[static_cast<std::size_t>(p)]);
            else
                jx = jx * static_cast<std::size_t>(dims[static_cast<std::size_t>(p)]) +
                     static_cast<std::size_t>(digit[static_cast<std::size_t>(p)]);
        }
        map[ix * dxb + jx] = idx;
    }
    return map;
}

inline void check_proper_subset(int n_parties, std::uint32_t mask, const char* who) {
    const std::uint32_t full = full_mask(n_parties);
    if (mask == 0 || (mask & ~full) != 0 || mask == full)
        throw std::invalid_argument(std::string(who) + ": subset must be a nonempty proper subset");
}

}  // namespace detail

/// Reduced density matrix on the parties in `keep` (original party order
/// preserved within the subset).
inline ComplexMatrix partial_trace(const MultipartiteState& state, std::uint32_t keep) {
    detail::check_proper_subset(state.n_parties(), keep, "partial_trace");
    const auto map = detail::factor_index_map(state.dims, keep);
    const std::size_t dx = detail::subset_dimension(state.dims, keep);
    const std::size_t dxb = state.dim() / dx;
    ComplexMatrix out(dx, dx);
    for (std::size_t i = 0; i < dx; ++i)
        for (std::size_t k = 0; k < dx; ++k) {
            cplx s = 0.0;
            for (std::size_t j = 0; j < dxb; ++j) s += state.rho(map[i * dxb + j], map[k * dxb + j]);
            out(i, k) = s;
        }
    return out;
}

/// Transposition of the tensor indices belonging to `subset`. Hermiticity
/// and trace are preserved exactly.
inline ComplexMatrix partial_transpose(const MultipartiteState& state, std::uint32_t subset) {
    detail::check_proper_subset(state.n_parties(), subset, "partial_transpose");
    const auto map = detail::factor_index_map(state.dims, subset);
    const std::size_t dx = detail::subset_dimension(state.dims, subset);
    const std::size_t dxb = state.dim() / dx;
    ComplexMatrix out(state.dim(), state.dim());
    for (std::size_t i = 0; i < dx; ++i)
        for (std::size_t k = 0; k < dx; ++k)
            for (std::size_t j = 0; j < dxb; ++j)
                for (std::size_t l = 0; l < dxb; ++l)
                    out(map[i * dxb + j], map[k * dxb + l]) = state.rho(map[k * dxb + j], map[i * dxb + l]);
    return out;
}

/// Realignment across the x|xbar split: the d_x^2 x d_xbar^2 matrix with
/// entry (i*d_x + k, j*d_xbar + l) = <i j| rho |k l> in the (x, xbar)
/// factorization (parties ascending within each group).
inline ComplexMatrix realign(const MultipartiteState& state, std::uint32_t x) {
    detail::check_proper_subset(state.n_parties(), x, "realign");
    const auto map = detail::factor_index_map(state.dims, x);
    const std::size_t dx = detail::subset_dimension(state.dims, x);
    const std::size_t dxb = state.dim() / dx;
    ComplexMatrix out(dx * dx, dxb * dxb);
    for (std::size_t i = 0; i < dx; ++i)
        for (std::size_t k = 0; k < dx; ++k)
            for (std::size_t j = 0; j < dxb; ++j)
                for (std::size_t l = 0; l < dxb; ++l)
                    out(i * dx + k, j * dxb + l) = state.rho(map[i * dxb + j], map[k * dxb + l]);
    return out;
}

inline ComplexMatrix realign(const MultipartiteState& state, const Bipartition& bp) {
    return realign(state, bp.mask);
}

/// Column-stacking vectorization: output entry (i + j*rows) = m(i, j).
inline ComplexMatrix vec_columns(const ComplexMatrix& m) {
    ComplexMatrix out(m.rows * m.cols, 1);
    for (std::size_t j = 0; j < m.cols; ++j)
        for (std::size_t i = 0; i < m.rows; ++i) out(i + j * m.rows, 0) = m(i, j);
    return out;
}

/// Bordered realignment block matrix
///   [ a*b          a*vec(rho_xbar)^T ]
///   [ b*vec(rho_x) R(rho)            ]
/// of shape (1 + d_x^2) x (1 + d_xbar^2). The x side is the first block
/// index, so the orientation of the split matters whenever a != b.
inline ComplexMatrix correlation_matrix_ab(const MultipartiteState& state, std::uint32_t x,
                                           double a, double b) {
    detail::check_proper_subset(state.n_parties(), x, "correlation_matrix_ab");
    if (!std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("correlation_matrix_ab: a and b must be finite");
    const std::uint32_t xbar = full_mask(state.n_parties()) & ~x;
    const ComplexMatrix rx = partial_trace(state, x);
    const ComplexMatrix rxb = partial_trace(state, xbar);
    const ComplexMatrix r = realign(state, x);
    const ComplexMatrix vx = vec_columns(rx);
    const ComplexMatrix vxb = vec_columns(rxb);
    ComplexMatrix out(1 + r.rows, 1 + r.cols);
    out(0, 0) = a * b;
    for (std::size_t t = 0; t < vxb.rows; ++t) out(0, 1 + t) = a * vxb(t, 0);
    for (std::size_t s = 0; s < vx.rows; ++s) out(1 + s, 0) = b * vx(s, 0);
    for (std::size_t s = 0; s < r.rows; ++s)
        for (std::size_t t = 0; t < r.cols; ++t) out(1 + s, 1 + t) = r(s, t);
    return out;
}

inline ComplexMatrix correlation_matrix_ab(const MultipartiteState& state, const Bipartition& bp,
                                           double a, double b) {
    return correlation_matrix_ab(state, bp.mask, a, b);
}

/// Purity of the reduction of a pure state onto the subset x, computed via
/// the d_x x d_xbar amplitude reshaping (no density matrix is formed).
inline double reduction_purity(const PureState& psi, std::uint32_t x) {
    detail::check_proper_subset(psi.n_parties(), x, "reduction_purity");
    const auto map = detail::factor_index_map(psi.dims, x);
    const std::size_t dx = detail::subset_dimension(psi.dims, x);
    const std::size_t dxb = psi.dim() / dx;
    // G = M M^dagger where M(i,j) = psi[(i,j)]
    double purity = 0.0;
    for (std::size_t i = 0; i < dx; ++i)
        for (std::size_t k = 0; k < dx; ++k) {
            cplx g = 0.0;
            for (std::size_t j = 0; j < dxb; ++j)
                g += psi.amplitudes[map[i * dxb + j]] * std::conj(psi.amplitudes[map[k * dxb + j]]);
            purity += std::norm(g);
        }
    return purity;
}

}  // namespace gmeb
