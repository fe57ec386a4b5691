#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "graphlim/eigh.hpp"
#include "graphlim/graph.hpp"
#include "graphlim/rng.hpp"
#include "graphlim/structured.hpp"

using namespace graphlim;

namespace {

double max_col_residual(const Matrix<cplx>& l, const Matrix<cplx>& vecs,
                        std::span<const double> vals) {
    double worst = 0;
    for (std::size_t j = 0; j < vecs.cols(); ++j) {
        auto v = vecs.col_copy(j);
        auto lv = matvec(l, std::span<const cplx>(v));
        double r = 0;
        for (std::size_t i = 0; i < v.size(); ++i) r += std::norm(lv[i] - vals[j] * v[i]);
        worst = std::max(worst, std::sqrt(r));
    }
    return worst;
}

}  // namespace

TEST_CASE("hadamard vectors") {
    const int N = 3;
    const double base = std::pow(2.0, -N / 2.0);

    auto h0 = hadamard_vector(N, 0);
    for (double v : h0) CHECK(v == doctest::Approx(base));

    for (std::uint32_t g = 0; g < 8; ++g) {
        auto h = hadamard_vector(N, g);
        CHECK(h[cube_vertex_zero(N)] == doctest::Approx(base));
        const int K = std::popcount(g);
        CHECK(h[cube_vertex_one(N)] == doctest::Approx(K % 2 ? -base : base));
        // eigenvector of the cube Laplacian with eigenvalue 2|gamma|
        auto l = laplacian(cube_graph(N));
        auto lh = matvec(l, std::span<const double>(h));
        for (std::size_t i = 0; i < h.size(); ++i)
            CHECK(std::abs(lh[i] - 2.0 * K * h[i]) <= 1e-12);
    }

    // pairwise orthonormal
    Matrix<double> all(8, 8);
    for (std::uint32_t g = 0; g < 8; ++g) all.set_col(g, hadamard_vector(N, g));
    CHECK(max_dev_from_identity(gram(all)) <= 1e-14);

    CHECK_THROWS_AS(hadamard_vector(2, 4u), std::invalid_argument);
}

TEST_CASE("dirichlet basis") {
    // N=2, K=1: the single vector, proportional to h_{10} - h_{01}
    auto d = dirichlet_basis(2, 1);
    REQUIRE(d.cols() == 1);
    CHECK(std::abs(d(0, 0)) <= 1e-14);  // vanishes at 00
    CHECK(std::abs(d(3, 0)) <= 1e-14);  // vanishes at 11
    auto h10 = hadamard_vector(2, 2), h01 = hadamard_vector(2, 1);
    double dev_plus = 0, dev_minus = 0;
    for (int i = 0; i < 4; ++i) {
        const double t = (h10[i] - h01[i]) / std::sqrt(2.0);
        dev_plus = std::max(dev_plus, std::abs(d(i, 0) - t));
        dev_minus = std::max(dev_minus, std::abs(d(i, 0) + t));
    }
    CHECK(std::min(dev_plus, dev_minus) <= 1e-12);

    // N=7: counts 6, 20, 34 and the eigenvector/vanishing contract
    const std::size_t counts[] = {6, 20, 34};
    auto l = to_complex(laplacian(cube_graph(7)));
    for (int K : {1, 2, 3}) {
        auto basis = dirichlet_basis(7, K);
        CHECK(basis.cols() == counts[K - 1]);
        CHECK(max_dev_from_identity(gram(basis)) <= 1e-12);
        std::vector<double> vals(basis.cols(), 2.0 * K);
        CHECK(max_col_residual(l, to_complex(basis), vals) <= 1e-10);
        for (std::size_t j = 0; j < basis.cols(); ++j) {
            CHECK(std::abs(basis(0, j)) <= 1e-12);
            CHECK(std::abs(basis(127, j)) <= 1e-12);
        }
    }

    CHECK_THROWS_AS(dirichlet_basis(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(dirichlet_basis(3, 3), std::invalid_argument);
}

TEST_CASE("neumann vectors") {
    const int N = 5;
    auto h0 = neumann_vector(N, 0);
    for (double v : h0) CHECK(v == doctest::Approx(std::pow(2.0, -N / 2.0)));

    auto hb = neumann_basis(N);
    CHECK(max_dev_from_identity(gram(hb)) <= 1e-13);

    for (int K = 1; K < N; ++K) {
        auto d = dirichlet_basis(N, K);
        auto hk = neumann_vector(N, K);
        for (std::size_t j = 0; j < d.cols(); ++j) {
            double ip = 0;
            for (std::size_t i = 0; i < hk.size(); ++i) ip += hk[i] * d(i, j);
            CHECK(std::abs(ip) <= 1e-13);
        }
    }
}

TEST_CASE("augmented laplacian") {
    const int N = 3, m = 5;
    Rng rng(9);
    for (int nu : {0, 1, 3}) {
        auto aug = augmented_laplacian(N, nu, m);
        CHECK(hermitian_deviation(aug.matrix) <= 1e-15);

        // (L_alpha f)(v_0) = (L f)(v_0) + f(v_0) - f(v_1)/alpha on random f
        std::vector<cplx> f(8);
        for (auto& x : f) x = cplx(rng.gaussian(), rng.gaussian());
        auto lf = matvec(to_complex(laplacian(cube_graph(N))), std::span<const cplx>(f));
        auto laf = matvec(aug.matrix, std::span<const cplx>(f));
        CHECK(std::abs(laf[0] - (lf[0] + f[0] - f[7] / aug.alpha)) <= 1e-12);
        CHECK(std::abs(laf[7] - (lf[7] + f[7] - aug.alpha * f[0])) <= 1e-12);

        // Dirichlet eigenvectors keep their eigenvalue
        for (int K = 1; K < N; ++K) {
            auto d = to_complex(dirichlet_basis(N, K));
            std::vector<double> vals(d.cols(), 2.0 * K);
            CHECK(max_col_residual(aug.matrix, d, vals) <= 1e-12);
        }
    }

    // alpha = 1: the constant stays in the kernel
    auto aug0 = augmented_laplacian(N, 0, m);
    std::vector<cplx> ones(8, cplx(1.0));
    auto y = matvec(aug0.matrix, std::span<const cplx>(ones));
    for (const auto& v : y) CHECK(std::abs(v) <= 1e-15);

    CHECK_THROWS_AS(augmented_laplacian(3, 5, 5), std::invalid_argument);
}

TEST_CASE("neumann_type_eigen: N=1 closed form 2 -+ |1+alpha|") {
    for (auto [nu, m] : {std::pair{0, 3}, {1, 3}, {2, 5}, {4, 7}}) {
        auto sys = neumann_type_eigen(1, nu, m);
        const double a = std::abs(1.0 + sys.alpha);
        REQUIRE(sys.eigenvalues.size() == 2);
        CHECK(sys.eigenvalues[0] == doctest::Approx(2.0 - a).epsilon(1e-12));
        CHECK(sys.eigenvalues[1] == doctest::Approx(2.0 + a).epsilon(1e-12));
    }
}

TEST_CASE("neumann_type_eigen: nu = 0 has the zero mode") {
    auto sys = neumann_type_eigen(4, 0, 7);
    CHECK(std::abs(sys.eigenvalues[0]) <= 1e-12);
}

TEST_CASE("neumann_type_eigen: one eigenvalue per band, profiles are true eigenvectors") {
    const int N = 7, m = 21;
    for (int nu = 0; nu < m; ++nu) {
        auto sys = neumann_type_eigen(N, nu, m);
        REQUIRE(sys.eigenvalues.size() == std::size_t(N + 1));
        for (int K = 0; K <= N; ++K) {
            CHECK(sys.eigenvalues[K] >= 2.0 * K - 1e-12);
            CHECK(sys.eigenvalues[K] < 2.0 * K + 2.0);
        }
        if (nu % 5 == 0) {  // spot-check the full 2^N eigenproblem
            auto aug = augmented_laplacian(N, nu, m);
            CHECK(max_col_residual(aug.matrix, sys.cube_profiles, sys.eigenvalues) <= 1e-10);
        }
    }
}

TEST_CASE("substitution eigenbasis matches the dense oracle at small size") {
    auto basis = substitution_eigenbasis(2, 3);
    REQUIRE(basis.vectors.cols() == 12);
    std::size_t dirichlet = 0, neumann = 0;
    for (const auto& mo : basis.modes)
        (mo.type == ModeType::dirichlet ? dirichlet : neumann)++;
    CHECK(dirichlet == 3);
    CHECK(neumann == 9);

    auto oracle = eigh(laplacian(vertex_substitution(2, 3)));
    auto vals = basis.eigenvalues();
    std::sort(vals.begin(), vals.end());
    for (std::size_t i = 0; i < vals.size(); ++i)
        CHECK(std::abs(vals[i] - oracle.values[i]) <= 1e-9);

    CHECK(max_dev_from_identity(gram(basis.vectors)) <= 1e-9);

    auto l = to_complex(laplacian(vertex_substitution(2, 3)));
    CHECK(max_col_residual(l, basis.vectors, basis.eigenvalues()) <= 1e-9);
}

TEST_CASE("substitution spectrum (1,5) equals the 10-cycle spectrum") {
    auto vals = substitution_eigenbasis(1, 5).eigenvalues();
    std::sort(vals.begin(), vals.end());
    auto c10 = eigh(laplacian(cycle_graph(10))).values;
    for (std::size_t i = 0; i < vals.size(); ++i) CHECK(std::abs(vals[i] - c10[i]) <= 1e-9);
}

TEST_CASE("substitution_modes agrees with the full basis annotations") {
    auto basis = substitution_eigenbasis(3, 5);
    auto modes = substitution_modes(3, 5);
    REQUIRE(modes.size() == basis.modes.size());
    for (std::size_t i = 0; i < modes.size(); ++i) {
        CHECK(modes[i].type == basis.modes[i].type);
        CHECK(modes[i].K == basis.modes[i].K);
        CHECK(modes[i].eigenvalue == doctest::Approx(basis.modes[i].eigenvalue).epsilon(1e-14));
    }
}

TEST_CASE("dirichlet kernels") {
    CHECK(dirichlet_kernel(9, 3)[0] == doctest::Approx(7.0));  // 2n+1 at zero

    // norm^2 = m (2n+1); closed sine form away from zero
    auto d5 = dirichlet_kernel(21, 5);
    double n2 = 0;
    for (double v : d5) n2 += v * v;
    CHECK(n2 == doctest::Approx(231.0).epsilon(1e-12));
    for (int l : {1, 4, 10}) {
        const double s = std::sin(2.0 * std::numbers::pi * 5.5 * l / 21.0) /
                         std::sin(std::numbers::pi * l / 21.0);
        CHECK(d5[l] == doctest::Approx(s).epsilon(1e-10));
    }

    // m = 4m'+1: normalized center value sqrt(1/2 + 1/(2m))
    auto dbar = dirichlet_kernel_normalized(21, 5);
    CHECK(dbar[0] == doctest::Approx(std::sqrt(0.5 + 1.0 / 42.0)).epsilon(1e-13));
    double nrm = 0;
    for (double v : dbar) nrm += v * v;
    CHECK(nrm == doctest::Approx(1.0).epsilon(1e-13));

    // spectral support: no Fourier coefficient beyond frequency n
    for (int k = 0; k < 21; ++k) {
        cplx ip = 0;
        for (int l = 0; l < 21; ++l)
            ip += cplx(d5[l]) * std::polar(1.0, -2.0 * std::numbers::pi * k * l / 21.0);
        const bool inside = std::min(k, 21 - k) <= 5;
        if (!inside) CHECK(std::abs(ip) <= 1e-10);
    }

    CHECK_THROWS_AS(dirichlet_kernel(9, 5), std::invalid_argument);
    CHECK_THROWS_AS(dirichlet_kernel(9, -1), std::invalid_argument);
}

TEST_CASE("cycle low band size") {
    CHECK(cycle_low_band_size(21) == 11);  // floor((m+1)/2) when m = 1 mod 4
    CHECK(cycle_low_band_size(5) == 3);
    CHECK(cycle_low_band_size(7) == 3);    // not floor((m+1)/2) = 4
    CHECK(cycle_low_band_size(8) == 5);    // the band boundary 4sin^2 = 2 is included
}

TEST_CASE("cartesian PW decomposition at (7,21,3)") {
    auto dec = cartesian_pw_basis(7, 21, 3);
    CHECK(dec.slice_local.cols() == 168);
    CHECK(dec.level_band.cols() == 231);
    CHECK(dec.level_top.cols() == 35);
    CHECK(dec.dim() == 434);
    CHECK(dec.shift_system.cols() == 231);

    // concatenation is column-orthonormal (components mutually orthogonal)
    Matrix<cplx> all(dec.slice_local.rows(), dec.dim());
    std::size_t col = 0;
    for (const auto* comp : {&dec.slice_local, &dec.level_band, &dec.level_top})
        for (std::size_t j = 0; j < comp->cols(); ++j) all.set_col(col++, comp->col_span(j));
    CHECK(max_dev_from_identity(gram(all)) <= 1e-10);

    CHECK_THROWS_AS(cartesian_pw_basis(7, 21, 0), std::invalid_argument);
    CHECK_THROWS_AS(cartesian_pw_basis(7, 21, 7), std::invalid_argument);
}

TEST_CASE("all decomposition columns are Laplacian-bandlimited to 2K") {
    const int N = 3, m = 5, K = 2;
    auto dec = cartesian_pw_basis(N, m, K);
    auto l = to_complex(laplacian(cartesian_product(cube_graph(N), cycle_graph(m))));
    for (const auto* comp : {&dec.slice_local, &dec.level_band, &dec.level_top})
        for (std::size_t j = 0; j < comp->cols(); ++j) {
            auto v = comp->col_copy(j);
            auto lv = matvec(l, std::span<const cplx>(v));
            // Rayleigh quotient and norm growth both bounded by 2K
            cplx rq = inner(std::span<const cplx>(v), std::span<const cplx>(lv));
            CHECK(rq.real() <= 2.0 * K + 1e-10);
            // project onto the orthogonal complement of PW_{2K} via the oracle
            auto spec = graph_fourier(cartesian_product(cube_graph(N), cycle_graph(m)));
            double leak = 0;
            for (std::size_t i = 0; i < spec.eigen.values.size(); ++i) {
                if (spec.eigen.values[i] <= 2.0 * K + 1e-9) continue;
                cplx ip = 0;
                for (std::size_t r = 0; r < v.size(); ++r)
                    ip += spec.eigen.vectors(r, i) * v[r];
                leak += std::norm(ip);
            }
            CHECK(leak <= 1e-18);
        }
}

TEST_CASE("shift system spans component (ii)") {
    const int N = 3, m = 5, K = 2;
    auto dec = cartesian_pw_basis(N, m, K);
    REQUIRE(dec.shift_system.cols() == dec.level_band.cols());

    // every shift lies in span(level_band): residual after projection is zero
    for (std::size_t j = 0; j < dec.shift_system.cols(); ++j) {
        auto v = dec.shift_system.col_copy(j);
        auto coef = adjoint_matvec(dec.level_band, std::span<const cplx>(v));
        auto back = matvec(dec.level_band, std::span<const cplx>(coef));
        double res = 0;
        for (std::size_t i = 0; i < v.size(); ++i) res += std::norm(v[i] - back[i]);
        CHECK(std::sqrt(res) <= 1e-12);
    }
    // and the shifts are linearly independent (Gram nonsingular)
    auto g = eigh(gram(dec.shift_system));
    CHECK(g.values.front() > 1e-6);
}

TEST_CASE("predicted cartesian PQ spectrum") {
    auto pred = cartesian_pq_spectrum(7, 21, 3);
    REQUIRE(pred.size() == 64);
    CHECK(std::count_if(pred.begin(), pred.end(), [](double v) { return v == 1.0; }) == 8);
    CHECK(std::count_if(pred.begin(), pred.end(),
                        [](double v) { return std::abs(v - 11.0 / 21.0) < 1e-15; }) == 21);
    CHECK(std::count_if(pred.begin(), pred.end(),
                        [](double v) { return std::abs(v - 1.0 / 21.0) < 1e-15; }) == 35);

    // K = 1: no slice-localized modes survive; middle constant, then 1/m
    auto k1 = cartesian_pq_spectrum(3, 5, 1);
    REQUIRE(k1.size() == 4);
    CHECK(k1[0] == doctest::Approx(0.6));
    for (int i = 1; i < 4; ++i) CHECK(k1[i] == doctest::Approx(0.2));
}

TEST_CASE("computed cartesian PQ spectrum matches the prediction (dense oracle)") {
    for (auto [N, m, K] : {std::tuple{3, 5, 1}, {3, 5, 2}, {3, 7, 2}}) {
        auto spec = graph_fourier(cartesian_product(cube_graph(N), cycle_graph(m)));
        auto pw = pw_space(spec, 2.0 * K);
        auto rep = ssl_eigen(pw, block_mask(N, m, 0));
        auto pred = cartesian_pq_spectrum(N, m, K);
        std::vector<double> nz;
        for (double v : rep.values)
            if (v > 1e-8) nz.push_back(v);
        REQUIRE(nz.size() == pred.size());
        for (std::size_t i = 0; i < nz.size(); ++i) CHECK(std::abs(nz[i] - pred[i]) <= 1e-8);
    }
}

TEST_CASE("measurement identities hold per regime") {
    auto rep = cartesian_identity_check(3, 5, 2, 25, 12345);
    CHECK(rep.constants[0] == doctest::Approx(1.0));
    CHECK(rep.constants[1] == doctest::Approx(0.6));
    CHECK(rep.constants[2] == doctest::Approx(0.2));
    for (double e : rep.max_error) CHECK(e <= 1e-12);
}
