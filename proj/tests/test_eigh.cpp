#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "graphlim/eigh.hpp"
#include "graphlim/graph.hpp"
#include "graphlim/rng.hpp"

using namespace graphlim;

namespace {

Matrix<double> random_symmetric(std::size_t n, Rng& rng) {
    Matrix<double> a(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i <= j; ++i) a(i, j) = a(j, i) = rng.gaussian();
    return a;
}

Matrix<cplx> random_hermitian(std::size_t n, Rng& rng) {
    Matrix<cplx> a(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            a(i, j) = cplx(rng.gaussian(), rng.gaussian());
            a(j, i) = std::conj(a(i, j));
        }
        a(j, j) = rng.gaussian();
    }
    return a;
}

double spectral_scale(const EigenDecomposition<double>& d) {
    return std::max(std::abs(d.values.front()), std::abs(d.values.back()));
}

}  // namespace

TEST_CASE("diagonal input is permuted to ascending order") {
    Matrix<double> a(3, 3);
    a(0, 0) = 3;
    a(1, 1) = 1;
    a(2, 2) = 2;
    auto dec = eigh(a);
    CHECK(dec.values[0] == doctest::Approx(1.0));
    CHECK(dec.values[1] == doctest::Approx(2.0));
    CHECK(dec.values[2] == doctest::Approx(3.0));
    // eigenvectors are coordinate vectors, phase-fixed positive
    CHECK(dec.vectors(1, 0) == doctest::Approx(1.0));
    CHECK(dec.vectors(2, 1) == doctest::Approx(1.0));
    CHECK(dec.vectors(0, 2) == doctest::Approx(1.0));
}

TEST_CASE("2x2 swap matrix") {
    Matrix<double> a(2, 2);
    a(0, 1) = a(1, 0) = 1.0;
    auto dec = eigh(a);
    CHECK(dec.values[0] == doctest::Approx(-1.0));
    CHECK(dec.values[1] == doctest::Approx(1.0));
}

TEST_CASE("cube graph Laplacian spectrum: 2k with binomial multiplicity") {
    auto dec = eigh(laplacian(cube_graph(3)));
    const double want[] = {0, 2, 2, 2, 4, 4, 4, 6};
    REQUIRE(dec.values.size() == 8);
    for (int i = 0; i < 8; ++i) CHECK(std::abs(dec.values[i] - want[i]) <= 1e-10);
}

TEST_CASE("random symmetric matrices: residual, orthonormality, reconstruction") {
    Rng rng(101);
    for (std::size_t n : {5, 40, 137, 500}) {
        auto a = random_symmetric(n, rng);
        auto dec = eigh(a);
        const double scale = spectral_scale(dec);
        CHECK(dec.residual_norm <= 1e-9 * (1.0 + scale));
        CHECK(max_dev_from_identity(gram(dec.vectors)) <= 1e-10);

        // || A - V diag V^T ||_max <= 1e-8 (1 + ||A||)
        Matrix<double> vl = dec.vectors;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) vl(i, j) *= dec.values[j];
        const auto rec = multiply(vl, conjugate_transpose(dec.vectors));
        double dev = 0;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) dev = std::max(dev, std::abs(rec(i, j) - a(i, j)));
        CHECK(dev <= 1e-8 * (1.0 + scale));
    }
}

TEST_CASE("random Hermitian matrices: residual and orthonormality") {
    Rng rng(202);
    for (std::size_t n : {4, 60, 300}) {
        auto a = random_hermitian(n, rng);
        auto dec = eigh(a);
        const double scale = std::max(std::abs(dec.values.front()), std::abs(dec.values.back()));
        CHECK(dec.residual_norm <= 1e-9 * (1.0 + scale));
        CHECK(max_dev_from_identity(gram(dec.vectors)) <= 1e-10);
    }
}

TEST_CASE("PSD matrices have eigenvalues above -1e-10 ||A||") {
    Rng rng(7);
    Matrix<double> b(30, 18);
    for (std::size_t j = 0; j < b.cols(); ++j)
        for (std::size_t i = 0; i < b.rows(); ++i) b(i, j) = rng.gaussian();
    auto g = gram(b);
    auto dec = eigh(g);
    const double scale = dec.values.back();
    for (double v : dec.values) CHECK(v >= -1e-10 * scale);
}

TEST_CASE("spectrum is invariant under symmetric permutation") {
    Rng rng(11);
    const std::size_t n = 48;
    auto a = random_symmetric(n, rng);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i-- > 1;) std::swap(perm[i], perm[rng.next_raw() % (i + 1)]);
    Matrix<double> b(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) b(i, j) = a(perm[i], perm[j]);
    auto da = eigh(a), db = eigh(b);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(da.values[i] - db.values[i]) <= 1e-10);
}

TEST_CASE("deterministic output: same input, same bits") {
    Rng rng(3);
    auto a = random_hermitian(25, rng);
    auto d1 = eigh(a);
    auto d2 = eigh(a);
    CHECK(d1.values == d2.values);
    bool same = true;
    for (std::size_t j = 0; j < d1.vectors.cols(); ++j)
        for (std::size_t i = 0; i < d1.vectors.rows(); ++i)
            same = same && d1.vectors(i, j) == d2.vectors(i, j);
    CHECK(same);
}

TEST_CASE("complex phase convention: largest entry real positive") {
    Rng rng(5);
    auto a = random_hermitian(17, rng);
    auto dec = eigh(a);
    for (std::size_t j = 0; j < dec.vectors.cols(); ++j) {
        std::size_t best = 0;
        double mag = 0;
        for (std::size_t i = 0; i < dec.vectors.rows(); ++i)
            if (std::abs(dec.vectors(i, j)) > mag) {
                mag = std::abs(dec.vectors(i, j));
                best = i;
            }
        CHECK(dec.vectors(best, j).imag() == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(dec.vectors(best, j).real() > 0.0);
    }
}

TEST_CASE("non-Hermitian input is rejected; HermitianMatrix symmetrizes") {
    Matrix<double> a(2, 2);
    a(0, 1) = 1.0;
    a(1, 0) = 0.25;
    CHECK_THROWS_AS(eigh(a), std::invalid_argument);
    auto dec = eigh(HermitianMatrix<double>(a));  // works on (A + A^T)/2
    CHECK(dec.values[1] == doctest::Approx(0.625));
}

TEST_CASE("group_eigenvalues: greedy merge with mean representative") {
    const double vals[] = {0.0, 1e-12, 2.0};
    auto cl = group_eigenvalues(vals, 1e-9);
    REQUIRE(cl.size() == 2);
    CHECK(cl[0].count == 2);
    CHECK(cl[0].value == doctest::Approx(5e-13));
    CHECK(cl[1].count == 1);
    CHECK(cl[1].value == doctest::Approx(2.0));

    auto dec = eigh(laplacian(cube_graph(7)), EighOptions{.compute_residual = false});
    auto clusters = group_eigenvalues(dec.values, 1e-8);
    REQUIRE(clusters.size() == 8);
    const std::size_t want[] = {1, 7, 21, 35, 35, 21, 7, 1};
    for (int i = 0; i < 8; ++i) CHECK(clusters[i].count == want[i]);

    CHECK(group_eigenvalues(std::span<const double>{}, 1.0).empty());
    CHECK_THROWS_AS(group_eigenvalues(vals, -1.0), std::invalid_argument);
    const double bad[] = {1.0, 0.5};
    CHECK_THROWS_AS(group_eigenvalues(bad, 1e-9), std::invalid_argument);
}
