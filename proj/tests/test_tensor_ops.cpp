#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gmeb/eig.hpp"
#include "gmeb/measures.hpp"
#include "gmeb/states.hpp"
#include "gmeb/tensor_ops.hpp"

using namespace gmeb;

namespace {

MultipartiteState mixed_product(std::mt19937_64& eng, std::vector<int> dims_a,
                                std::vector<int> dims_b, int rank_a, int rank_b) {
    const auto a = random_mixed(dims_a, rank_a, eng);
    const auto b = random_mixed(dims_b, rank_b, eng);
    auto dims = dims_a;
    dims.insert(dims.end(), dims_b.begin(), dims_b.end());
    return MultipartiteState::make(dims, kron(a.rho, b.rho));
}

}  // namespace

TEST_CASE("bipartition enumeration is canonical and complete") {
    const auto b3 = enumerate_bipartitions(3);
    REQUIRE(b3.size() == 3);
    CHECK(b3[0].label() == "1|23");
    CHECK(b3[1].label() == "12|3");
    CHECK(b3[2].label() == "13|2");

    CHECK(enumerate_bipartitions(2).size() == 1);
    CHECK(enumerate_bipartitions(4).size() == 7);

    // no subset/complement duplicates
    for (const auto& bp : enumerate_bipartitions(5)) {
        CHECK((bp.mask & 1u) != 0);
        for (const auto& other : enumerate_bipartitions(5))
            if (!(other == bp)) CHECK(other.mask != (full_mask(5) & ~bp.mask));
    }

    // canonicalization folds the complement onto the same representative
    CHECK(Bipartition::make(3, parties_to_mask({2, 3})) == Bipartition::make(3, parties_to_mask({1})));
    CHECK_THROWS_AS(Bipartition::make(3, 0u), std::invalid_argument);
    CHECK_THROWS_AS(Bipartition::make(3, full_mask(3)), std::invalid_argument);
}

TEST_CASE("reduction enumeration covers all proper subsets") {
    const auto r3 = enumerate_reductions(3);
    REQUIRE(r3.size() == 6);
    CHECK(r3[0] == parties_to_mask({1}));
    CHECK(r3[1] == parties_to_mask({2}));
    CHECK(r3[2] == parties_to_mask({3}));
    CHECK(r3[3] == parties_to_mask({1, 2}));
    CHECK(r3[4] == parties_to_mask({1, 3}));
    CHECK(r3[5] == parties_to_mask({2, 3}));

    CHECK(enumerate_reductions(2).size() == 2);
    for (std::uint32_t mask : enumerate_reductions(4)) {
        const std::uint32_t comp = full_mask(4) & ~mask;
        const auto& all = enumerate_reductions(4);
        CHECK(std::find(all.begin(), all.end(), comp) != all.end());
    }
}

TEST_CASE("partial trace fixed values") {
    const auto g = density_of(ghz(3, 2));
    const auto rho1 = partial_trace(g, parties_to_mask({1}));
    CHECK(max_abs_diff(rho1, cplx(0.5) * ComplexMatrix::identity(2)) < 1e-14);
    CHECK(std::abs(trace(rho1) - cplx(1.0)) < 1e-12);

    const auto zero3 = density_of(PureState::make({2, 2, 2}, {1, 0, 0, 0, 0, 0, 0, 0}));
    const auto rho23 = partial_trace(zero3, parties_to_mask({2, 3}));
    ComplexMatrix proj00(4, 4);
    proj00(0, 0) = 1.0;
    CHECK(max_abs_diff(rho23, proj00) < 1e-14);

    const auto w = density_of(w_state(3));
    const auto w1 = partial_trace(w, parties_to_mask({1}));
    CHECK(w1(0, 0).real() == Catch::Approx(2.0 / 3.0).margin(1e-12));
    CHECK(w1(1, 1).real() == Catch::Approx(1.0 / 3.0).margin(1e-12));
    CHECK(std::abs(w1(0, 1)) < 1e-14);

    CHECK_THROWS_AS(partial_trace(g, 0u), std::invalid_argument);
    CHECK_THROWS_AS(partial_trace(g, full_mask(3)), std::invalid_argument);
}

TEST_CASE("partial transpose properties") {
    std::mt19937_64 eng(7);

    // separable invariance: (rho_A tensor rho_B)^{T_A} = rho_A^T tensor rho_B
    const auto prod = mixed_product(eng, {2}, {2, 2}, 2, 3);
    const auto pt = partial_transpose(prod, parties_to_mask({1}));
    const auto rho_a = partial_trace(prod, parties_to_mask({1}));
    const auto rho_b = partial_trace(prod, parties_to_mask({2, 3}));
    ComplexMatrix rho_a_t(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) rho_a_t(i, j) = rho_a(j, i);
    CHECK(max_abs_diff(pt, kron(rho_a_t, rho_b)) < 1e-12);
    CHECK(hermitian_eigenvalues(pt).front() > -1e-10);  // still PSD

    const auto g = density_of(ghz(3, 2));
    CHECK(trace_norm(partial_transpose(g, parties_to_mask({1}))) ==
          Catch::Approx(2.0).margin(1e-10));

    // involution, Hermiticity, trace preservation
    const auto state = random_mixed({2, 2, 2}, 3, eng);
    for (std::uint32_t mask : {parties_to_mask({1}), parties_to_mask({2}), parties_to_mask({1, 3})}) {
        const auto once = partial_transpose(state, mask);
        CHECK(hermiticity_defect(once) < 1e-14);
        CHECK(std::abs(trace(once) - trace(state.rho)) == 0.0);
        const auto twice =
            partial_transpose(MultipartiteState{state.dims, once}, mask);
        CHECK(max_abs_diff(twice, state.rho) == 0.0);
    }
}

TEST_CASE("realignment fixed values") {
    const auto bell = density_of(ghz(2, 2));
    CHECK(trace_norm(realign(bell, 1u)) == Catch::Approx(2.0).margin(1e-10));

    CHECK(trace_norm(realign(maximally_mixed({2, 2}), 1u)) == Catch::Approx(0.5).margin(1e-10));

    const auto g = density_of(ghz(3, 2));
    CHECK(trace_norm(realign(g, parties_to_mask({1}))) == Catch::Approx(2.0).margin(1e-10));
}

TEST_CASE("realignment of product states factorizes in trace norm") {
    std::mt19937_64 eng(19);
    for (int trial = 0; trial < 5; ++trial) {
        const auto prod = mixed_product(eng, {2}, {2}, 1 + trial % 2, 2);
        const auto rho_a = partial_trace(prod, 1u);
        const auto rho_b = partial_trace(prod, 2u);
        const double expected =
            std::sqrt(purity(rho_a)) * std::sqrt(purity(rho_b));
        CHECK(trace_norm(realign(prod, 1u)) == Catch::Approx(expected).margin(1e-8));
    }
}

TEST_CASE("swapping the realignment orientation transposes the matrix") {
    std::mt19937_64 eng(29);
    const auto state = random_mixed({2, 2, 2}, 2, eng);
    const auto r_x = realign(state, parties_to_mask({2}));
    const auto r_xbar = realign(state, parties_to_mask({1, 3}));
    REQUIRE(r_x.rows == r_xbar.cols);
    REQUIRE(r_x.cols == r_xbar.rows);
    for (std::size_t i = 0; i < r_x.rows; ++i)
        for (std::size_t j = 0; j < r_x.cols; ++j) CHECK(r_x(i, j) == r_xbar(j, i));
}

TEST_CASE("vectorization is column stacking") {
    const auto v = vec_columns(ComplexMatrix::identity(2));
    CHECK(v.rows == 4);
    CHECK(v(0, 0) == cplx(1.0));
    CHECK(v(1, 0) == cplx(0.0));
    CHECK(v(2, 0) == cplx(0.0));
    CHECK(v(3, 0) == cplx(1.0));

    ComplexMatrix m(2, 2);
    m(0, 0) = 1.0;
    m(0, 1) = 2.0;
    m(1, 0) = 3.0;
    m(1, 1) = 4.0;
    const auto vm = vec_columns(m);
    CHECK(vm(0, 0) == cplx(1.0));
    CHECK(vm(1, 0) == cplx(3.0));
    CHECK(vm(2, 0) == cplx(2.0));
    CHECK(vm(3, 0) == cplx(4.0));

    // ||vec(rho)||^2 = purity for Hermitian rho
    std::mt19937_64 eng(37);
    const auto rho = random_mixed({2, 2}, 3, eng);
    const auto vr = vec_columns(rho.rho);
    double n2 = 0.0;
    for (const auto& z : vr.data) n2 += std::norm(z);
    CHECK(n2 == Catch::Approx(purity(rho.rho)).margin(1e-12));
}

TEST_CASE("bordered correlation matrix") {
    const auto mm = maximally_mixed({2, 2, 2});
    const auto m00 = correlation_matrix_ab(mm, parties_to_mask({1}), 0.0, 0.0);
    CHECK(m00.rows == 5);
    CHECK(m00.cols == 17);
    for (std::size_t j = 0; j < m00.cols; ++j) CHECK(m00(0, j) == cplx(0.0));
    for (std::size_t i = 0; i < m00.rows; ++i) CHECK(m00(i, 0) == cplx(0.0));
    CHECK(trace_norm(m00) == Catch::Approx(trace_norm(realign(mm, 1u))).margin(1e-10));
    CHECK(trace_norm(m00) == Catch::Approx(1.0 / (2.0 * std::sqrt(2.0))).margin(1e-8));

    // transposition swaps the border weights together with the orientation
    std::mt19937_64 eng(41);
    const auto state = density_of(random_pure({2, 2, 2}, eng));
    const double t1 = trace_norm(correlation_matrix_ab(state, parties_to_mask({2}), 0.4, 1.9));
    const double t2 = trace_norm(correlation_matrix_ab(state, parties_to_mask({1, 3}), 1.9, 0.4));
    CHECK(t1 == Catch::Approx(t2).margin(1e-9));
}

TEST_CASE("pure-state reductions: reshape path agrees with partial trace") {
    std::mt19937_64 eng(43);
    for (int trial = 0; trial < 10; ++trial) {
        const std::vector<int> dims = trial % 2 ? std::vector<int>{2, 3, 2} : std::vector<int>{2, 2, 2, 2};
        const auto psi = random_pure(dims, eng);
        const auto rho = density_of(psi);
        for (const auto& bp : enumerate_bipartitions(psi.n_parties())) {
            const double via_reshape = reduction_purity(psi, bp.mask);
            const double via_trace = purity(partial_trace(rho, bp.mask));
            CHECK(via_reshape == Catch::Approx(via_trace).margin(1e-11));
            // Schmidt symmetry: both sides of a cut of a pure state agree
            const double other = reduction_purity(psi, bp.xbar());
            CHECK(via_reshape == Catch::Approx(other).margin(1e-9));
        }
    }
}

TEST_CASE("non-contiguous subsets permute parties deterministically") {
    // |0>|phi>|1> with keep {1,3}: reduction is |0><0| tensor |1><1|
    std::mt19937_64 eng(47);
    const auto phi = random_pure({3}, eng);
    std::vector<cplx> amps;
    for (int k1 = 0; k1 < 2; ++k1)
        for (int k2 = 0; k2 < 3; ++k2)
            for (int k3 = 0; k3 < 2; ++k3)
                amps.push_back((k1 == 0 && k3 == 1) ? phi.amplitudes[static_cast<std::size_t>(k2)]
                                                    : cplx(0.0));
    const auto psi = PureState::make({2, 3, 2}, amps);
    const auto red = partial_trace(density_of(psi), parties_to_mask({1, 3}));
    ComplexMatrix expected(4, 4);
    expected(1, 1) = 1.0;  // index 0*2+1 in the (party1, party3) factor
    CHECK(max_abs_diff(red, expected) < 1e-12);
}
