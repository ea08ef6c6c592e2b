#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gmeb/measures.hpp"
#include "gmeb/states.hpp"

using namespace gmeb;

TEST_CASE("density_of projects") {
    const auto zero = PureState::make({2}, {1.0, 0.0});
    const auto rho = density_of(zero);
    CHECK(rho.rho(0, 0) == cplx(1.0));
    CHECK(rho.rho(1, 1) == cplx(0.0));

    std::mt19937_64 eng(3);
    for (int trial = 0; trial < 5; ++trial) {
        const auto psi = random_pure({2, 3}, eng);
        CHECK(purity(density_of(psi).rho) == Catch::Approx(1.0).margin(1e-10));
    }

    const auto g = density_of(ghz(3, 2));
    int half_entries = 0;
    for (const auto& z : g.rho.data)
        if (std::abs(z - cplx(0.5)) < 1e-15) ++half_entries;
    CHECK(half_entries == 4);
    CHECK(g.rho(0, 0) == cplx(0.5));
    CHECK(g.rho(0, 7) == cplx(0.5));
    CHECK(g.rho(7, 0) == cplx(0.5));
    CHECK(g.rho(7, 7) == cplx(0.5));
}

TEST_CASE("ghz amplitudes") {
    const auto g32 = ghz(3, 2);
    const double r2 = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < 8; ++i) {
        const double expected = (i == 0 || i == 7) ? r2 : 0.0;
        CHECK(std::abs(g32.amplitudes[i] - cplx(expected)) < 1e-15);
    }

    const auto bell = ghz(2, 2);
    CHECK(std::abs(bell.amplitudes[0] - cplx(r2)) < 1e-15);
    CHECK(std::abs(bell.amplitudes[3] - cplx(r2)) < 1e-15);

    const auto g33 = ghz(3, 3);
    const double r3 = 1.0 / std::sqrt(3.0);
    REQUIRE(g33.amplitudes.size() == 27);
    for (std::size_t i : {0u, 13u, 26u}) CHECK(std::abs(g33.amplitudes[i] - cplx(r3)) < 1e-15);
    CHECK(std::abs(g33.amplitudes[1]) == 0.0);
}

TEST_CASE("w state amplitudes") {
    const auto w3 = w_state(3);
    const double r3 = 1.0 / std::sqrt(3.0);
    for (std::size_t i : {1u, 2u, 4u}) CHECK(std::abs(w3.amplitudes[i] - cplx(r3)) < 1e-15);
    CHECK(std::abs(w3.amplitudes[0]) == 0.0);
    CHECK(std::abs(w3.amplitudes[7]) == 0.0);

    const auto w2 = w_state(2);
    const double r2 = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(w2.amplitudes[1] - cplx(r2)) < 1e-15);
    CHECK(std::abs(w2.amplitudes[2] - cplx(r2)) < 1e-15);

    const auto w4 = w_state(4);
    for (std::size_t i : {1u, 2u, 4u, 8u}) CHECK(std::abs(w4.amplitudes[i] - cplx(0.5)) < 1e-15);
}

TEST_CASE("maximally mixed state") {
    const auto mm = maximally_mixed({2, 2, 2});
    CHECK(max_abs_diff(mm.rho, cplx(1.0 / 8.0) * ComplexMatrix::identity(8)) == 0.0);
    CHECK(purity(mm.rho) == Catch::Approx(1.0 / 8.0).margin(1e-12));
}

TEST_CASE("mix basics") {
    const auto g = density_of(ghz(3, 2));
    const auto w = density_of(w_state(3));
    const auto noise = maximally_mixed({2, 2, 2});

    CHECK(max_abs_diff(mix({g, w}, {1.0, 0.0}).rho, g.rho) == 0.0);
    CHECK(max_abs_diff(mix({noise, g, w}, {0.0, 1.0, 0.0}).rho, g.rho) == 0.0);
    CHECK(max_abs_diff(mix({noise, g}, {1.0, 0.0}).rho, noise.rho) == 0.0);

    // affine entrywise
    const double t = 0.3;
    const auto m = mix({g, w}, {t, 1.0 - t});
    for (std::size_t k = 0; k < m.rho.data.size(); ++k)
        CHECK(m.rho.data[k] == t * g.rho.data[k] + (1.0 - t) * w.rho.data[k]);

    CHECK_THROWS_AS(mix({g, w}, {0.7, 0.7}), std::invalid_argument);
    CHECK_THROWS_AS(mix({g, w}, {-0.1, 1.1}), std::invalid_argument);
    CHECK_THROWS_AS(mix({g, density_of(ghz(2, 2))}, {0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("state validation catches unphysical matrices") {
    ComplexMatrix bad_trace = cplx(0.9) * ComplexMatrix::identity(2);
    CHECK_THROWS_AS(MultipartiteState::make({2}, bad_trace), PhysicalityError);

    ComplexMatrix negative(2, 2);
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    CHECK_THROWS_AS(MultipartiteState::make({2}, negative), PhysicalityError);

    ComplexMatrix nonherm = ComplexMatrix::identity(2);
    nonherm(0, 1) = cplx(0.1, 0.0);
    nonherm = cplx(0.5) * nonherm;
    CHECK_THROWS_AS(MultipartiteState::make({2}, nonherm), PhysicalityError);

    CHECK_THROWS_AS(PureState::make({2}, {0.5, 0.5}), PhysicalityError);
    CHECK_THROWS_AS(PureState::make({2}, {1.0, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("noise families stay physical across the whole grid") {
    const auto g = density_of(ghz(3, 2));
    const auto w = density_of(w_state(3));
    const auto noise = maximally_mixed({2, 2, 2});
    for (int i = 0; i <= 100; ++i) {
        const double t = i / 100.0;
        CHECK_NOTHROW(mix({noise, w}, {1.0 - t, t}));
        CHECK_NOTHROW(mix({noise, g}, {1.0 - t, t}));
    }
}

TEST_CASE("ensemble validation and reconstruction") {
    const auto psi1 = ghz(2, 2);
    const auto psi2 = w_state(2);
    const auto e = Ensemble::make({0.25, 0.75}, {psi1, psi2});
    const auto rho = reconstruct(e);
    const auto expected = mix({density_of(psi1), density_of(psi2)}, {0.25, 0.75});
    CHECK(max_abs_diff(rho.rho, expected.rho) < 1e-15);

    CHECK_THROWS_AS(Ensemble::make({0.5, 0.4}, {psi1, psi2}), std::invalid_argument);
    CHECK_THROWS_AS(Ensemble::make({1.0, 0.0}, {psi1, psi2}), std::invalid_argument);
    CHECK_THROWS_AS(Ensemble::make({0.5, 0.5}, {psi1, ghz(3, 2)}), std::invalid_argument);
}

TEST_CASE("random state generators satisfy the invariants") {
    std::mt19937_64 eng(31);
    for (int trial = 0; trial < 10; ++trial) {
        CHECK_NOTHROW(random_pure({2, 2, 2}, eng));
        CHECK_NOTHROW(random_mixed({2, 2, 2}, 1 + trial % 3, eng));
    }
    const auto heterogeneous = random_mixed({2, 3}, 2, eng);
    CHECK(heterogeneous.dim() == 6);
    CHECK_FALSE(heterogeneous.homogeneous());
}
