#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gmeb/matrix.hpp"
#include "gmeb/rng.hpp"

using namespace gmeb;

namespace {

ComplexMatrix from_rows(std::size_t r, std::size_t c, std::initializer_list<cplx> entries) {
    ComplexMatrix m(r, c);
    std::size_t k = 0;
    for (cplx z : entries) m.data[k++] = z;
    return m;
}

ComplexMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& eng) {
    ComplexMatrix m(r, c);
    fill_gaussian(m, eng);
    return m;
}

}  // namespace

TEST_CASE("matmul basics") {
    const auto a = from_rows(2, 2, {1.0, cplx(2.0, 1.0), 3.0, -1.0});
    CHECK(max_abs_diff(matmul(ComplexMatrix::identity(2), a), a) == 0.0);

    const auto swap = from_rows(2, 2, {0.0, 1.0, 1.0, 0.0});
    const auto e0 = from_rows(2, 1, {1.0, 0.0});
    const auto swapped = matmul(swap, e0);
    CHECK(swapped(0, 0) == cplx(0.0));
    CHECK(swapped(1, 0) == cplx(1.0));

    const auto n = from_rows(2, 2, {0.0, 2.0, 0.0, 0.0});
    const auto nn = matmul(n, dagger(n));
    CHECK(nn(0, 0) == cplx(4.0));
    CHECK(nn(0, 1) == cplx(0.0));
    CHECK(nn(1, 0) == cplx(0.0));
    CHECK(nn(1, 1) == cplx(0.0));

    CHECK_THROWS_AS(matmul(ComplexMatrix(2, 3), ComplexMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("dagger conjugates and is an involution") {
    const cplx i(0.0, 1.0);
    const auto a = from_rows(2, 2, {i, 0.0, 0.0, 0.0});
    CHECK(dagger(a)(0, 0) == -i);

    const auto h = from_rows(2, 2, {1.0, cplx(2.0, 3.0), cplx(2.0, -3.0), -4.0});
    CHECK(max_abs_diff(dagger(h), h) == 0.0);

    std::mt19937_64 eng(5);
    const auto g = random_matrix(3, 4, eng);
    CHECK(max_abs_diff(dagger(dagger(g)), g) == 0.0);
}

TEST_CASE("kron block ordering and trace multiplicativity") {
    CHECK(max_abs_diff(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)),
                       ComplexMatrix::identity(4)) == 0.0);

    const auto d12 = from_rows(2, 2, {1.0, 0.0, 0.0, 2.0});
    const auto d34 = from_rows(2, 2, {3.0, 0.0, 0.0, 4.0});
    const auto k = kron(d12, d34);
    CHECK(k(0, 0) == cplx(3.0));
    CHECK(k(1, 1) == cplx(4.0));
    CHECK(k(2, 2) == cplx(6.0));
    CHECK(k(3, 3) == cplx(8.0));

    // two single-qubit density matrices: the product state still has trace 1
    const auto rho1 = from_rows(2, 2, {0.25, cplx(0.1, 0.2), cplx(0.1, -0.2), 0.75});
    const auto rho2 = from_rows(2, 2, {0.6, cplx(0.0, -0.3), cplx(0.0, 0.3), 0.4});
    CHECK(std::abs(trace(kron(rho1, rho2)) - cplx(1.0)) < 1e-14);
}

TEST_CASE("hermiticity defect and finiteness") {
    const auto h = from_rows(2, 2, {1.0, cplx(0.0, 1.0), cplx(0.0, -1.0), 2.0});
    CHECK(hermiticity_defect(h) == 0.0);
    auto bad = h;
    bad(0, 1) += cplx(0.0, 2e-9);
    CHECK(hermiticity_defect(bad) > 1e-9);

    auto inf = h;
    inf(1, 1) = cplx(std::numeric_limits<double>::infinity(), 0.0);
    CHECK_FALSE(all_finite(inf));
    CHECK(all_finite(h));
}
