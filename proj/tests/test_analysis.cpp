#include "support/oracle.hpp"

#include "analysis.hpp"
#include "error.hpp"
#include "samples.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace svdmark;

TEST_SUITE("analysis") {

TEST_CASE("psnr") {
    const Matrix a = oracle::uniform_matrix(8, 8, 1);
    CHECK(psnr(a, a) == psnr_identical);
    CHECK(std::isinf(psnr(a, a)));
    CHECK(psnr(Matrix::constant(4, 4, 0.0), Matrix::constant(4, 4, 255.0)) == doctest::Approx(0.0));
    Matrix b = Matrix::constant(4, 4, 10.0);
    CHECK(psnr(b, Matrix::constant(4, 4, 11.0)) == doctest::Approx(48.1308).epsilon(1e-6));
    const Matrix c = oracle::uniform_matrix(8, 8, 2);
    CHECK(psnr(a, c) == psnr(c, a));
    CHECK_THROWS_AS(psnr(a, Matrix(8, 7)), Error);
}

TEST_CASE("normalized correlation") {
    const Matrix a = oracle::uniform_matrix(16, 16, 3);
    CHECK(normalized_correlation(a, a) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(normalized_correlation(a, -1.0 * a) == doctest::Approx(-1.0).epsilon(1e-14));

    Matrix checker(8, 8), stripes(8, 8);
    for (std::size_t r = 0; r < 8; ++r)
        for (std::size_t c = 0; c < 8; ++c) {
            checker(r, c) = static_cast<double>((r + c) % 2);
            stripes(r, c) = static_cast<double>(r % 2);
        }
    CHECK(normalized_correlation(checker, stripes) == doctest::Approx(0.0));

    const Correlation flat = correlation(Matrix::constant(4, 4, 3.0), oracle::uniform_matrix(4, 4, 9));
    CHECK(flat.degenerate);
    CHECK(flat.value == 0.0);

    const Matrix b = oracle::uniform_matrix(16, 16, 4);
    CHECK(normalized_correlation(a, b) == doctest::Approx(oracle::pearson(a, b)).epsilon(1e-12));
    for (double scale : {0.01, 1.0, 37.0})
        for (double shift : {-100.0, 0.0, 5.5}) {
            Matrix t = scale * b;
            for (double& v : t.data())
                v += shift;
            CHECK(std::abs(normalized_correlation(a, t) - normalized_correlation(a, b)) <= 1e-10);
        }
}

TEST_CASE("rng test vectors") {
    // std::mt19937_64 with the standard's default seed: 10000th output.
    Rng def(5489);
    std::uint64_t x = 0;
    for (int i = 0; i < 10000; ++i)
        x = def.next();
    CHECK(x == 9981545732273789042ull);

    Rng a(42), raw(42);
    const std::uint64_t r0 = raw.next();
    CHECK(a.uniform() == static_cast<double>(r0 >> 11) / 9007199254740992.0);

    Rng g(42), h(42);
    const double u1 = 1.0 - h.uniform();
    const double u2 = h.uniform();
    CHECK(g.gaussian() == std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2));
}

TEST_CASE("attacks") {
    const Matrix a = sample_image(SampleKind::Portrait, 256, 256, 1);

    SUBCASE("zero-sigma noise is the identity") {
        CHECK(apply_attack(a, AttackSpec::gaussian_noise(0.0, 1)) == a);
    }
    SUBCASE("noise std and reproducibility") {
        const Matrix noisy = apply_attack(a, AttackSpec::gaussian_noise(5.0, 42));
        const Matrix d = noisy - a;
        const double mean = std::accumulate(d.data().begin(), d.data().end(), 0.0) / static_cast<double>(d.size());
        double var = 0.0;
        for (double v : d.data())
            var += (v - mean) * (v - mean);
        const double sd = std::sqrt(var / static_cast<double>(d.size() - 1));
        CHECK(std::abs(sd - 5.0) <= 0.15);
        CHECK(apply_attack(a, AttackSpec::gaussian_noise(5.0, 42)) == noisy);
        CHECK(apply_attack(a, AttackSpec::gaussian_noise(5.0, 43)) != noisy);
    }
    SUBCASE("8-bit quantization") {
        Matrix integral = a;
        for (double& v : integral.data())
            v = std::round(v);
        CHECK(apply_attack(integral, AttackSpec::quantize8()) == integral);
        const Matrix q = apply_attack(Matrix::from_rows({{-3.2, 12.49, 12.5, 300.0}}), AttackSpec::quantize8());
        CHECK(q == Matrix::from_rows({{0.0, 12.0, 13.0, 255.0}}));
    }
    SUBCASE("crop fills with the image mean") {
        const Matrix c = apply_attack(a, AttackSpec::crop({10, 20, 5, 6}));
        const double mean = std::accumulate(a.data().begin(), a.data().end(), 0.0) / static_cast<double>(a.size());
        CHECK(c(10, 20) == doctest::Approx(mean));
        CHECK(c(14, 25) == doctest::Approx(mean));
        CHECK(c(9, 20) == a(9, 20));
        CHECK(c(15, 26) == a(15, 26));
        CHECK_THROWS_AS(apply_attack(a, AttackSpec::crop({250, 0, 10, 10})), Error);
        CHECK_THROWS_AS(apply_attack(a, AttackSpec::crop({0, 0, 0, 10})), Error);
    }
    SUBCASE("rescale") {
        CHECK(max_abs_diff(apply_attack(a, AttackSpec::rescale(1.0)), a) <= 1e-12);
        const Matrix r = apply_attack(a, AttackSpec::rescale(0.5));
        CHECK(r.same_shape(a));
        CHECK(normalized_correlation(r, a) > 0.95);
        CHECK_THROWS_AS(apply_attack(a, AttackSpec::rescale(0.0)), Error);
        CHECK_THROWS_AS(apply_attack(a, AttackSpec::rescale(1.5)), Error);
    }
}

TEST_CASE("resize_nearest") {
    const Matrix m = Matrix::from_rows({{1, 2}, {3, 4}});
    CHECK(resize_nearest(m, 4, 4) == Matrix::from_rows({{1, 1, 2, 2}, {1, 1, 2, 2}, {3, 3, 4, 4}, {3, 3, 4, 4}}));
    CHECK(resize_nearest(m, 2, 2) == m);
}

TEST_CASE("robustness sweep") {
    const Matrix cover = sample_image(SampleKind::Portrait, 64, 64, 1);
    const Matrix w = sample_image(SampleKind::Texture, 64, 64, 2);
    const std::vector<double> alphas{0.01, 0.05, 0.1, 0.2};
    const std::vector<AttackSpec> attacks{AttackSpec::gaussian_noise(0.0, 1), AttackSpec::gaussian_noise(2.0, 42),
                                          AttackSpec::quantize8(), AttackSpec::crop({0, 0, 16, 16}),
                                          AttackSpec::rescale(0.5)};
    const RobustnessReport r = robustness_sweep(cover, w, alphas, attacks);
    REQUIRE(r.rows.size() == alphas.size() * attacks.size());
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        CHECK(r.rows[i].alpha == alphas[i / attacks.size()]);
        CHECK(r.rows[i].attack.kind == attacks[i % attacks.size()].kind);
        CHECK(r.rows[i].nc_extracted >= -1.0);
        CHECK(r.rows[i].nc_extracted <= 1.0);
        if (i % attacks.size() == 0)
            CHECK(r.rows[i].nc_extracted >= 0.9999);
        if (i >= attacks.size())
            CHECK(r.rows[i].psnr_marked <= r.rows[i - attacks.size()].psnr_marked + 0.1);
    }
    const std::string csv = to_csv(r);
    CHECK(csv.rfind("alpha,attack,params,seed,psnr_db,nc\n", 0) == 0);
    CHECK(csv == to_csv(robustness_sweep(cover, w, alphas, attacks)));
    CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(r.rows.size() + 1));
    CHECK(csv.find("0.050000,gaussian_noise,sigma=2.000000,42,") != std::string::npos);
    CHECK(csv.find("0.100000,crop,rect=0:0:16:16,0,") != std::string::npos);
    CHECK_THROWS_AS(robustness_sweep(cover, w, {}, attacks), Error);
}

} // TEST_SUITE
