#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

#include "gmeb/matrix.hpp"

namespace gmeb {

/// Fills with independent standard complex Gaussians (real and imaginary
/// parts each N(0,1)).
inline void fill_gaussian(ComplexMatrix& m, std::mt19937_64& eng) {
    std::normal_distribution<double> n01(0.0, 1.0);
    for (auto& z : m.data) z = cplx(n01(eng), n01(eng));
}

/// Haar-random n x n unitary: orthonormalize a complex Ginibre matrix by
/// modified Gram-Schmidt. Normalizing against the positive column norms is
/// the phase convention that makes the QR factor unique, so the Q factor is
/// Haar distributed. A second orthogonalization pass keeps the columns
/// orthonormal to ~1e-14 even at n = 64.
inline ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& eng) {
    if (n < 1) throw std::invalid_argument("random_unitary: n must be >= 1");
    ComplexMatrix g(n, n);
    fill_gaussian(g, eng);
    ComplexMatrix q(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<cplx> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = g(i, j);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                cplx proj = 0.0;
                for (std::size_t i = 0; i < n; ++i) proj += std::conj(q(i, k)) * v[i];
                for (std::size_t i = 0; i < n; ++i) v[i] -= proj * q(i, k);
            }
        }
        double nrm = 0.0;
        for (std::size_t i = 0; i < n; ++i) nrm += std::norm(v[i]);
        nrm = std::sqrt(nrm);
        if (nrm < 1e-12) throw std::runtime_error("random_unitary: degenerate Ginibre column");
        for (std::size_t i = 0; i < n; ++i) q(i, j) = v[i] / nrm;
    }
    return q;
}

inline ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    return random_unitary(n, eng);
}

}  // namespace gmeb
