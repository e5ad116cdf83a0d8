#include "support/oracle.hpp"

#include "error.hpp"
#include "matrix.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace svdmark;

namespace {

void check_canonical(const SvdFactors& f) {
    const auto sv = f.singular_values();
    for (std::size_t i = 0; i < sv.size(); ++i) {
        CHECK(sv[i] >= 0.0);
        if (i > 0)
            CHECK(sv[i] <= sv[i - 1]);
    }
    for (std::size_t r = 0; r < f.s.rows(); ++r)
        for (std::size_t c = 0; c < f.s.cols(); ++c)
            if (r != c)
                CHECK(f.s(r, c) == 0.0);
    for (std::size_t j = 0; j < f.u.cols(); ++j) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < f.u.rows(); ++i)
            if (std::abs(f.u(i, j)) > std::abs(f.u(best, j)))
                best = i;
        CHECK(f.u(best, j) >= 0.0);
    }
}

} // namespace

TEST_SUITE("matrix_core") {

TEST_CASE("matrix construction rejects bad input") {
    CHECK_THROWS_AS(Matrix(0, 3), Error);
    CHECK_THROWS_AS(Matrix(2, 2, {1.0, 2.0, 3.0}), Error);
    try {
        Matrix(1, 2, {1.0, std::numeric_limits<double>::quiet_NaN()});
        FAIL("expected InvalidInput");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidInput);
    }
}

TEST_CASE("svd of a diagonal matrix is the identity decomposition") {
    const SvdFactors f = svd(Matrix::from_rows({{3, 0}, {0, 2}}));
    CHECK(f.singular_values() == std::vector<double>{3.0, 2.0});
    CHECK(max_abs_diff(f.u, Matrix::identity(2)) == doctest::Approx(0.0));
    CHECK(max_abs_diff(f.v, Matrix::identity(2)) == doctest::Approx(0.0));
}

TEST_CASE("svd of a permuted diagonal orders singular values") {
    const Matrix a = Matrix::from_rows({{0, 2}, {1, 0}});
    const SvdFactors f = svd(a);
    CHECK(f.s(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(f.s(1, 1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(relative_error(reconstruct(f), a) <= 1e-14);
    check_canonical(f);
}

TEST_CASE("svd rejects non-finite input") {
    Matrix a(2, 2);
    a(0, 1) = std::numeric_limits<double>::infinity();
    try {
        svd(a);
        FAIL("expected InvalidInput");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidInput);
    }
}

TEST_CASE("seed 42 8x8 matches the LAPACK oracle under the sign convention") {
    const Matrix a = oracle::uniform_matrix(8, 8, 42);
    const SvdFactors f = svd(a);
    const oracle::Svd ref = oracle::lapack_svd(a);
    check_canonical(f);
    for (std::size_t i = 0; i < 8; ++i)
        CHECK(std::abs(f.s(i, i) - ref.sigma[i]) <= 1e-9);
    CHECK(max_abs_diff(f.u, oracle::u_of(ref)) <= 1e-9);
    CHECK(max_abs_diff(f.v, oracle::v_of(ref)) <= 1e-9);
    CHECK(relative_error(reconstruct(f), a) <= 1e-10);
    // reconstruct from the oracle's factors lands on the same matrix
    CHECK(relative_error(reconstruct(oracle::u_of(ref), oracle::s_of(ref), oracle::v_of(ref)), a) <= 1e-10);
}

TEST_CASE("rectangular inputs give full factors") {
    for (auto [m, n] : {std::pair<std::size_t, std::size_t>{7, 4}, {4, 7}, {1, 5}, {5, 1}}) {
        const Matrix a = oracle::uniform_matrix(m, n, 1000 + m * 10 + n);
        const SvdFactors f = svd(a);
        CHECK(f.u.rows() == m);
        CHECK(f.u.cols() == m);
        CHECK(f.s.rows() == m);
        CHECK(f.s.cols() == n);
        CHECK(f.v.rows() == n);
        CHECK(f.v.cols() == n);
        CHECK(relative_error(reconstruct(f), a) <= 1e-10);
        CHECK(orthogonality_residual(f.u) <= 1e-8);
        CHECK(orthogonality_residual(f.v) <= 1e-8);
        check_canonical(f);
        const oracle::Svd ref = oracle::lapack_svd(a);
        for (std::size_t i = 0; i < ref.sigma.size(); ++i)
            CHECK(std::abs(f.s(i, i) - ref.sigma[i]) <= 1e-9);
    }
}

TEST_CASE("100 seeded 16x16 matrices: reconstruction, orthogonality, oracle singular values") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Matrix a = oracle::uniform_matrix(16, 16, seed);
        const SvdFactors f = svd(a);
        const oracle::Svd ref = oracle::lapack_svd(a);
        REQUIRE(relative_error(reconstruct(f), a) <= 1e-10);
        REQUIRE(orthogonality_residual(f.u) <= 1e-8);
        REQUIRE(orthogonality_residual(f.v) <= 1e-8);
        for (std::size_t i = 0; i < 16; ++i)
            REQUIRE(std::abs(f.s(i, i) - ref.sigma[i]) <= 1e-9);
    }
}

TEST_CASE("svd is bit-deterministic") {
    const Matrix a = oracle::uniform_matrix(32, 24, 7);
    const SvdFactors f1 = svd(a);
    const SvdFactors f2 = svd(a);
    CHECK(f1.u == f2.u);
    CHECK(f1.s == f2.s);
    CHECK(f1.v == f2.v);
}

TEST_CASE("reconstruct") {
    const Matrix s = Matrix::from_rows({{3, 0}, {0, 2}});
    CHECK(reconstruct(Matrix::identity(2), s, Matrix::identity(2)) == s);
    try {
        reconstruct(Matrix::identity(3), s, Matrix::identity(2));
        FAIL("expected DimensionError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DimensionError);
    }
}

TEST_CASE("orthogonality residual") {
    CHECK(orthogonality_residual(Matrix::identity(3)) == 0.0);
    CHECK(orthogonality_residual(Matrix::from_rows({{0, 1}, {1, 0}})) == 0.0);
    CHECK(orthogonality_residual(Matrix::from_rows({{1, 1}, {0, 1}})) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK_THROWS_AS(orthogonality_residual(Matrix(2, 3)), Error);
}

} // TEST_SUITE
