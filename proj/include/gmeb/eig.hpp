#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "gmeb/matrix.hpp"

namespace gmeb {

struct EigenSystem {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // column k is the eigenvector of values[k]
};

namespace detail {

// One cyclic-Jacobi pass infrastructure for complex Hermitian matrices.
// Each rotation first absorbs the phase of a(p,q) so the 2x2 pivot block
// becomes real symmetric, then applies the usual symmetric Schur rotation
// (Numerical Recipes parameterization, stable for small off-diagonals).
inline void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const cplx apq = a(p, q);
    const double b = std::abs(apq);
    if (b == 0.0) return;
    const cplx phase = apq / b;  // e^{i phi}

    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double theta = (aqq - app) / (2.0 * b);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    const std::size_t n = a.rows;
    const cplx phase_c = std::conj(phase);

    // columns p,q of a   (right-multiplication by the rotation)
    for (std::size_t k = 0; k < n; ++k) {
        const cplx akp = a(k, p), akq = a(k, q);
        a(k, p) = c * akp - s * phase_c * akq;
        a(k, q) = s * akp + c * phase_c * akq;
    }
    // rows p,q of a      (left-multiplication by its adjoint)
    for (std::size_t k = 0; k < n; ++k) {
        const cplx apk = a(p, k), aqk = a(q, k);
        a(p, k) = c * apk - s * phase * aqk;
        a(q, k) = s * apk + c * phase * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    // accumulate eigenvectors
    for (std::size_t k = 0; k < n; ++k) {
        const cplx vkp = v(k, p), vkq = v(k, q);
        v(k, p) = c * vkp - s * phase_c * vkq;
        v(k, q) = s * vkp + c * phase_c * vkq;
    }
}

inline double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace detail

/// Full eigensystem of a Hermitian matrix by cyclic Jacobi sweeps.
/// Eigenvalues ascending; convergence when the off-diagonal Frobenius mass
/// drops below 1e-12 (relative to the matrix scale for large norms).
inline EigenSystem hermitian_eigensystem(const ComplexMatrix& a, double herm_tol = 1e-10) {
    if (!a.square()) throw std::invalid_argument("hermitian_eigensystem: matrix not square");
    const double defect = hermiticity_defect(a);
    if (defect > herm_tol)
        throw std::invalid_argument("hermitian_eigensystem: matrix not Hermitian (defect " +
                                    std::to_string(defect) + " > tol)");
    const std::size_t n = a.rows;

    // symmetrize to remove the sub-tolerance defect before iterating
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));

    ComplexMatrix v = ComplexMatrix::identity(n);
    const double stop = 1e-12 * std::max(1.0, frobenius_norm(m));
    constexpr int max_sweeps = 100;
    int sweep = 0;
    while (detail::off_diagonal_norm(m) > stop) {
        if (++sweep > max_sweeps)
            throw std::runtime_error("hermitian_eigensystem: Jacobi did not converge");
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) detail::jacobi_rotate(m, v, p, q);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return m(i, i).real() < m(j, j).real(); });

    EigenSystem es;
    es.values.resize(n);
    es.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        es.values[k] = m(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) es.vectors(i, k) = v(i, order[k]);
    }
    return es;
}

inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a, double herm_tol = 1e-10) {
    return hermitian_eigensystem(a, herm_tol).values;
}

/// Singular values, descending, length min(rows, cols). Computed from the
/// eigenvalues of the smaller Gram matrix; tiny negative eigenvalues from
/// rounding are clamped to zero, anything clearly negative is a solver bug.
inline std::vector<double> singular_values(const ComplexMatrix& a) {
    const bool tall = a.rows >= a.cols;
    const ComplexMatrix gram = tall ? matmul(dagger(a), a) : matmul(a, dagger(a));
    std::vector<double> eig = hermitian_eigenvalues(gram, 1e-8 * std::max(1.0, frobenius_norm(gram)));
    const double floor = -1e-12 * std::max(1.0, frobenius_norm(gram));
    std::vector<double> sv(eig.size());
    for (std::size_t k = 0; k < eig.size(); ++k) {
        double lambda = eig[eig.size() - 1 - k];
        if (lambda < 0.0) {
            if (lambda < floor)
                throw std::runtime_error("singular_values: Gram eigenvalue " +
                                         std::to_string(lambda) + " below clamp window");
            lambda = 0.0;
        }
        sv[k] = std::sqrt(lambda);
    }
    return sv;
}

/// Trace (Ky Fan) norm: the sum of the singular values.
inline double trace_norm(const ComplexMatrix& a) {
    const auto sv = singular_values(a);
    return std::accumulate(sv.begin(), sv.end(), 0.0);
}

}  // namespace gmeb
