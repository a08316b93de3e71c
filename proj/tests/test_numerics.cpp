#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "blockenc/eig.hpp"
#include "blockenc/error.hpp"
#include "blockenc/matrix.hpp"
#include "blockenc/random.hpp"
#include "support/oracles.hpp"

using namespace blockenc;
using testsupport::max_abs_diff;

namespace {

Matrix random_hermitian(std::size_t n, Rng& rng) {
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = cplx(rng.gaussian(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            a(i, j) = cplx(rng.gaussian(), rng.gaussian());
            a(j, i) = std::conj(a(i, j));
        }
    }
    return a;
}

Matrix random_complex(std::size_t r, std::size_t c, Rng& rng) {
    Matrix a(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) a(i, j) = cplx(rng.gaussian(), rng.gaussian());
    return a;
}

} // namespace

TEST_CASE("vector helpers: conjugate-linear dot, kron ordering, phase fixing") {
    const Vector a = {cplx(0.0, 1.0), cplx(2.0, 0.0)};
    const Vector b = {cplx(1.0, 0.0), cplx(0.0, 3.0)};
    // <a, b> conjugates the first argument.
    CHECK(std::abs(dot(a, b) - cplx(0.0, 5.0)) < 1e-15);

    const Vector k = kron(a, b);
    REQUIRE(k.size() == 4);
    CHECK(std::abs(k[0] - cplx(0.0, 1.0)) < 1e-15); // a0*b0
    CHECK(std::abs(k[3] - cplx(0.0, 6.0)) < 1e-15); // a1*b1

    const Vector fixed = phase_fixed({cplx(0.0, -2.0), cplx(1.0, 0.0)});
    CHECK(fixed[0].real() == doctest::Approx(2.0));
    CHECK(std::abs(fixed[0].imag()) < 1e-15);
}

TEST_CASE("matrix arithmetic matches the longhand oracle") {
    Rng rng(11);
    const Matrix a = random_complex(5, 7, rng);
    const Matrix b = random_complex(7, 4, rng);
    CHECK(max_abs_diff(a * b, testsupport::matmul_oracle(a, b)) < 1e-12);
    CHECK(max_abs_diff(kron(a, b), testsupport::kron_oracle(a, b)) < 1e-12);

    const Matrix h = random_hermitian(6, rng);
    CHECK(h.is_hermitian(1e-12));
    CHECK(max_abs_diff(h.adjoint(), h) < 1e-15);
    CHECK(std::abs(h.trace().imag()) < 1e-12);
}

TEST_CASE("hermitian_eig reconstructs the matrix and orders values descending") {
    Rng rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        const Matrix h = random_hermitian(8, rng);
        const EigenDecomposition eig = hermitian_eig(h);
        REQUIRE(eig.values.size() == 8);
        for (std::size_t i = 0; i + 1 < 8; ++i) CHECK(eig.values[i] >= eig.values[i + 1] - 1e-12);
        Matrix recon(8, 8);
        for (std::size_t i = 0; i < 8; ++i) {
            CHECK(norm(eig.vectors[i]) == doctest::Approx(1.0).epsilon(1e-10));
            recon += eig.values[i] * Matrix::outer(eig.vectors[i], eig.vectors[i]);
            const Vector hv = h * eig.vectors[i];
            const Vector lv = cplx(eig.values[i], 0.0) * eig.vectors[i];
            CHECK(max_abs_diff(hv, lv) < 1e-9);
        }
        CHECK(max_abs_diff(recon, h) < 1e-9);
        const Matrix v = eig.vectors_as_columns();
        CHECK(max_abs_diff(v.adjoint() * v, Matrix::identity(8)) < 1e-10);
    }
}

TEST_CASE("hermitian_eig recovers a planted spectrum") {
    Rng rng(3);
    const std::vector<double> spectrum = {2.5, 1.0, 0.25, -0.5, -1.75};
    const Matrix h = planted_hermitian(spectrum, rng);
    const EigenDecomposition eig = hermitian_eig(h);
    for (std::size_t i = 0; i < spectrum.size(); ++i)
        CHECK(eig.values[i] == doctest::Approx(spectrum[i]).epsilon(1e-10));
}

TEST_CASE("hermitian_eig rejects bad input") {
    CHECK_THROWS_AS(hermitian_eig(Matrix(2, 3)), Error);
    Matrix nh(2, 2);
    nh(0, 1) = cplx(1.0, 0.0);
    nh(1, 0) = cplx(0.5, 0.0);
    CHECK_THROWS_AS(hermitian_eig(nh), Error);
}

TEST_CASE("svd reconstructs rectangular matrices") {
    Rng rng(19);
    for (const auto [r, c] : {std::pair<std::size_t, std::size_t>{5, 7}, {7, 5}, {6, 6}}) {
        const Matrix a = random_complex(r, c, rng);
        const SingularDecomposition s = svd(a);
        const std::size_t k = std::min(r, c);
        REQUIRE(s.s.size() == k);
        for (std::size_t i = 0; i + 1 < k; ++i) CHECK(s.s[i] >= s.s[i + 1] - 1e-12);
        for (double sv : s.s) CHECK(sv >= 0.0);
        Matrix recon(r, c);
        for (std::size_t i = 0; i < k; ++i) {
            Vector ui(r), vi(c);
            for (std::size_t x = 0; x < r; ++x) ui[x] = s.u(x, i);
            for (std::size_t x = 0; x < c; ++x) vi[x] = s.v(x, i);
            recon += cplx(s.s[i], 0.0) * Matrix::outer(ui, vi);
        }
        CHECK(max_abs_diff(recon, a) < 1e-9);
    }
}

TEST_CASE("expm_oracle: diagonal phases, unitarity, group property") {
    const Matrix h = Matrix::diagonal({cplx(0.5, 0.0), cplx(-1.25, 0.0)});
    const Matrix u = expm_oracle(h, 2.0);
    CHECK(std::abs(u(0, 0) - std::exp(cplx(0.0, -1.0))) < 1e-12);
    CHECK(std::abs(u(1, 1) - std::exp(cplx(0.0, 2.5))) < 1e-12);

    Rng rng(23);
    const Matrix g = random_hermitian(6, rng);
    const Matrix u1 = expm_oracle(g, 0.7);
    const Matrix u2 = expm_oracle(g, 1.6);
    CHECK(max_abs_diff(u1.adjoint() * u1, Matrix::identity(6)) < 1e-10);
    CHECK(max_abs_diff(u1 * u2, expm_oracle(g, 2.3)) < 1e-9);
}

TEST_CASE("inverse_oracle and cond_number") {
    Rng rng(31);
    const Matrix a = random_complex(6, 6, rng);
    CHECK(max_abs_diff(a * inverse_oracle(a), Matrix::identity(6)) < 1e-8);

    const Matrix d = Matrix::diagonal({cplx(1.0, 0.0), cplx(0.5, 0.0)});
    CHECK(cond_number(d) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(spectral_norm(d) == doctest::Approx(1.0).epsilon(1e-12));

    Matrix singular(2, 2);
    singular(0, 0) = cplx(1.0, 0.0);
    CHECK_THROWS_AS(inverse_oracle(singular), Error);
}

TEST_CASE("spectral_norm_estimate tracks the exact spectral norm") {
    Rng rng(41);
    for (int trial = 0; trial < 4; ++trial) {
        const Matrix a = random_complex(12, 12, rng);
        const double exact = spectral_norm(a);
        const double est = spectral_norm_estimate(a);
        CHECK(std::abs(est - exact) < 1e-6 * exact);
    }
}

TEST_CASE("planted spectra have the advertised shape") {
    Rng rng(5);
    const auto def = planted_spectrum(8, 16.0, 1.0, false, rng);
    REQUIRE(def.size() == 8);
    CHECK(def.front() == doctest::Approx(1.0));
    CHECK(def.back() == doctest::Approx(1.0 / 16.0));
    for (std::size_t i = 0; i + 1 < def.size(); ++i) CHECK(def[i] > def[i + 1]);

    bool saw_negative = false;
    for (int trial = 0; trial < 8; ++trial) {
        const auto ind = planted_spectrum(8, 16.0, 1.0, true, rng);
        CHECK(ind.front() == doctest::Approx(1.0)); // leading value stays positive
        for (double v : ind) {
            CHECK(std::abs(v) >= 1.0 / 16.0 - 1e-12);
            CHECK(std::abs(v) <= 1.0 + 1e-12);
            if (v < 0.0) saw_negative = true;
        }
    }
    CHECK(saw_negative);
}

TEST_CASE("random unit vectors and unitaries are what they claim") {
    Rng rng(13);
    const Vector v = random_unit_vector(9, rng);
    CHECK(norm(v) == doctest::Approx(1.0).epsilon(1e-12));
    const Vector w = random_real_unit_vector(9, rng);
    for (const cplx& c : w) CHECK(c.imag() == 0.0);
    const Matrix u = random_unitary(5, rng);
    CHECK(max_abs_diff(u.adjoint() * u, Matrix::identity(5)) < 1e-10);
}
