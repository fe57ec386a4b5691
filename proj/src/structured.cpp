#include "graphlim/structured.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "graphlim/graph.hpp"
#include "graphlim/rng.hpp"

namespace graphlim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::size_t r = 1;
    for (int i = 0; i < k; ++i) r = r * std::size_t(n - i) / std::size_t(i + 1);
    return r;
}

std::vector<std::uint32_t> weight_k_gammas(int N, int K) {
    std::vector<std::uint32_t> out;
    out.reserve(binom(N, K));
    for (std::uint32_t g = 0; g < (1u << N); ++g)
        if (std::popcount(g) == K) out.push_back(g);
    return out;  // ascending by integer value
}

void check_cube_level(int N, int K, const char* who) {
    if (N < 1) throw std::invalid_argument(std::string(who) + ": N must be at least 1");
    if (K < 0 || K > N) throw std::invalid_argument(std::string(who) + ": K out of range");
}

cplx cycle_phase(int nu, int m) { return std::polar(1.0, kTwoPi * nu / m); }

}  // namespace

std::size_t hamming_ball_volume(int N, int K) {
    std::size_t s = 0;
    for (int k = 0; k <= K; ++k) s += binom(N, k);
    return s;
}

std::vector<double> hadamard_vector(int N, std::uint32_t gamma) {
    if (N < 1 || N > 30) throw std::invalid_argument("hadamard_vector: bad N");
    if (gamma >> N) throw std::invalid_argument("hadamard_vector: gamma has more than N bits");
    const std::size_t n = std::size_t(1) << N;
    const double scale = std::pow(2.0, -0.5 * N);
    std::vector<double> h(n);
    for (std::uint32_t v = 0; v < n; ++v)
        h[v] = (std::popcount(v & gamma) & 1) ? -scale : scale;
    return h;
}

Matrix<double> dirichlet_basis(int N, int K) {
    check_cube_level(N, K, "dirichlet_basis");
    if (K == 0 || K == N)
        throw std::invalid_argument("dirichlet_basis: no Dirichlet vectors at K = 0 or K = N");
    const auto gammas = weight_k_gammas(N, K);
    const std::size_t b = gammas.size();
    const std::size_t n = std::size_t(1) << N;

    Matrix<double> had(n, b);
    for (std::size_t j = 0; j < b; ++j) had.set_col(j, hadamard_vector(N, gammas[j]));

    Matrix<double> out(n, b - 1);
    for (std::size_t j = 1; j < b; ++j) {
        // Helmert row: j leading ones then -j, normalized.
        const double s = 1.0 / std::sqrt(double(j) * double(j + 1));
        double* col = out.col(j - 1);
        for (std::size_t k = 0; k < j; ++k) {
            const double* hk = had.col(k);
            for (std::size_t i = 0; i < n; ++i) col[i] += s * hk[i];
        }
        const double* hj = had.col(j);
        for (std::size_t i = 0; i < n; ++i) col[i] -= double(j) * s * hj[i];
    }
    return out;
}

std::vector<double> neumann_vector(int N, int K) {
    check_cube_level(N, K, "neumann_vector");
    const auto gammas = weight_k_gammas(N, K);
    const std::size_t n = std::size_t(1) << N;
    const double c = 1.0 / std::sqrt(double(gammas.size()));
    std::vector<double> h(n, 0.0);
    for (std::uint32_t g : gammas) {
        const auto hg = hadamard_vector(N, g);
        for (std::size_t i = 0; i < n; ++i) h[i] += c * hg[i];
    }
    return h;
}

Matrix<double> neumann_basis(int N) {
    const std::size_t n = std::size_t(1) << N;
    Matrix<double> out(n, N + 1);
    for (int k = 0; k <= N; ++k) out.set_col(k, neumann_vector(N, k));
    return out;
}

AugmentedLaplacian augmented_laplacian(int N, int nu, int m) {
    if (m < 3) throw std::invalid_argument("augmented_laplacian: m must be at least 3");
    if (nu < 0 || nu >= m) throw std::invalid_argument("augmented_laplacian: nu out of range");
    AugmentedLaplacian out;
    out.N = N;
    out.alpha = cycle_phase(nu, m);
    out.matrix = to_complex(laplacian(cube_graph(N)));
    const std::size_t last = (std::size_t(1) << N) - 1;
    out.matrix(0, 0) += 1.0;
    out.matrix(last, last) += 1.0;
    out.matrix(0, last) += -1.0 / out.alpha;
    out.matrix(last, 0) += -out.alpha;
    return out;
}

NeumannTypeSystem neumann_type_eigen(int N, int nu, int m) {
    const auto aug = augmented_laplacian(N, nu, m);
    const Matrix<cplx> hn = to_complex(neumann_basis(N));

    // The Neumann subspace is invariant: compress and solve (N+1) x (N+1).
    const Matrix<cplx> compressed = adjoint_multiply(hn, multiply(aug.matrix, hn));
    auto dec = eigh(compressed);

    NeumannTypeSystem out;
    out.N = N;
    out.nu = nu;
    out.m = m;
    out.alpha = aug.alpha;
    out.eigenvalues = std::move(dec.values);
    out.coefficients = std::move(dec.vectors);
    out.cube_profiles = multiply(hn, out.coefficients);
    return out;
}

SubstitutionEigenbasis substitution_eigenbasis(int N, int m) {
    if (N < 1) throw std::invalid_argument("substitution_eigenbasis: N must be at least 1");
    if (m < 3) throw std::invalid_argument("substitution_eigenbasis: m must be at least 3");
    const std::size_t side = std::size_t(1) << N;
    const std::size_t total = std::size_t(m) * side;

    SubstitutionEigenbasis out;
    out.N = N;
    out.m = m;
    out.vectors = Matrix<cplx>(total, total);
    out.modes.reserve(total);
    std::size_t col = 0;

    // Dirichlet type: zero-extensions of per-block Dirichlet vectors.
    for (int K = 1; K < N; ++K) {
        const Matrix<double> d = dirichlet_basis(N, K);
        for (int k = 0; k < m; ++k) {
            for (std::size_t j = 0; j < d.cols(); ++j) {
                cplx* v = out.vectors.col(col);
                const double* dj = d.col(j);
                for (std::size_t u = 0; u < side; ++u) v[std::size_t(k) * side + u] = dj[u];
                out.modes.push_back({ModeType::dirichlet, K, k, -1, 2.0 * K});
                ++col;
            }
        }
    }

    // Neumann type: cycle-modulated augmented-Laplacian eigenvectors.
    const double inv_sqrt_m = 1.0 / std::sqrt(double(m));
    for (int nu = 0; nu < m; ++nu) {
        const auto sys = neumann_type_eigen(N, nu, m);
        for (int K = 0; K <= N; ++K) {
            cplx* v = out.vectors.col(col);
            const cplx* phi = sys.cube_profiles.col(K);
            for (int k = 0; k < m; ++k) {
                const cplx w = std::polar(inv_sqrt_m, kTwoPi * nu * k / m);
                for (std::size_t u = 0; u < side; ++u) v[std::size_t(k) * side + u] = w * phi[u];
            }
            out.modes.push_back({ModeType::neumann, K, -1, nu, sys.eigenvalues[K]});
            ++col;
        }
    }
    return out;
}

std::vector<SubstitutionMode> substitution_modes(int N, int m) {
    if (N < 1) throw std::invalid_argument("substitution_modes: N must be at least 1");
    if (m < 3) throw std::invalid_argument("substitution_modes: m must be at least 3");
    std::vector<SubstitutionMode> modes;
    modes.reserve(std::size_t(m) << N);
    for (int K = 1; K < N; ++K) {
        const std::size_t count = binom(N, K) - 1;
        for (int k = 0; k < m; ++k)
            for (std::size_t j = 0; j < count; ++j)
                modes.push_back({ModeType::dirichlet, K, k, -1, 2.0 * K});
    }
    for (int nu = 0; nu < m; ++nu) {
        const auto sys = neumann_type_eigen(N, nu, m);
        for (int K = 0; K <= N; ++K)
            modes.push_back({ModeType::neumann, K, -1, nu, sys.eigenvalues[K]});
    }
    return modes;
}

PaleyWienerSpace<cplx> substitution_pw_space(const SubstitutionEigenbasis& basis, double omega,
                                             double tol) {
    const auto values = basis.eigenvalues();
    return pw_space_from_basis(basis.vectors, values, omega, tol);
}

std::vector<double> dirichlet_kernel(int m, int n) {
    if (m < 3) throw std::invalid_argument("dirichlet_kernel: m must be at least 3");
    if (n < 0 || 2 * n > m - 1)
        throw std::invalid_argument("dirichlet_kernel: need 0 <= n <= (m-1)/2");
    std::vector<double> d(m);
    for (int l = 0; l < m; ++l) {
        double s = 1.0;
        for (int k = 1; k <= n; ++k) s += 2.0 * std::cos(kTwoPi * k * l / m);
        d[l] = s;
    }
    return d;
}

std::vector<double> dirichlet_kernel_normalized(int m, int n) {
    auto d = dirichlet_kernel(m, n);
    const double scale = 1.0 / std::sqrt(double(m) * double(2 * n + 1));
    for (double& x : d) x *= scale;
    return d;
}

int cycle_low_band_size(int m) {
    int count = 0;
    for (int k = 0; k < m; ++k)
        if (4 * std::min(k, m - k) <= m) ++count;  // 4 sin^2(pi k/m) <= 2
    return count;
}

namespace {

// Columns of the tensor f(u, l) = cube[u] * cyc[l] under slice-major
// indexing (u, l) -> l * 2^N + u.
void fill_tensor(cplx* out, std::span<const double> cube, std::span<const cplx> cyc) {
    std::size_t idx = 0;
    for (const cplx& c : cyc)
        for (const double& b : cube) out[idx++] = c * b;
}

std::vector<cplx> cycle_exponential(int m, int k) {
    std::vector<cplx> e(m);
    const double scale = 1.0 / std::sqrt(double(m));
    for (int l = 0; l < m; ++l) e[l] = std::polar(scale, kTwoPi * k * l / m);
    return e;
}

std::vector<int> low_band_frequencies(int m) {
    std::vector<int> ks;
    for (int k = 0; k < m; ++k)
        if (4 * std::min(k, m - k) <= m) ks.push_back(k);
    return ks;
}

}  // namespace

CartesianPWDecomposition cartesian_pw_basis(int N, int m, int K) {
    if (K < 1 || K >= N)
        throw std::invalid_argument("cartesian_pw_basis: need 1 <= K < N");
    if (m < 3) throw std::invalid_argument("cartesian_pw_basis: m must be at least 3");
    const std::size_t side = std::size_t(1) << N;
    const std::size_t total = std::size_t(m) * side;

    CartesianPWDecomposition out;
    out.N = N;
    out.m = m;
    out.K = K;

    // (i) levels <= K-2 localized on each slice; delta spikes span l^2(C_m).
    const std::size_t dim1 = std::size_t(m) * hamming_ball_volume(N, K - 2);
    out.slice_local = Matrix<cplx>(total, dim1);
    std::size_t col = 0;
    for (int kappa = 0; kappa <= K - 2; ++kappa)
        for (std::uint32_t g : weight_k_gammas(N, kappa)) {
            const auto h = hadamard_vector(N, g);
            for (int l = 0; l < m; ++l) {
                cplx* v = out.slice_local.col(col++);
                for (std::size_t u = 0; u < side; ++u) v[std::size_t(l) * side + u] = h[u];
            }
        }

    // (ii) level K-1 tensor the low band of the cycle.
    const auto band = low_band_frequencies(m);
    const auto gammas_mid = weight_k_gammas(N, K - 1);
    out.level_band = Matrix<cplx>(total, gammas_mid.size() * band.size());
    col = 0;
    for (std::uint32_t g : gammas_mid) {
        const auto h = hadamard_vector(N, g);
        for (int k : band) {
            const auto e = cycle_exponential(m, k);
            fill_tensor(out.level_band.col(col++), h, e);
        }
    }

    // (iii) level K tensor the cycle constant.
    const auto gammas_top = weight_k_gammas(N, K);
    out.level_top = Matrix<cplx>(total, gammas_top.size());
    col = 0;
    const std::vector<cplx> ones(m, cplx(1.0 / std::sqrt(double(m))));
    for (std::uint32_t g : gammas_top)
        fill_tensor(out.level_top.col(col++), hadamard_vector(N, g), ones);

    // Explicit shift form of (ii) when m = 4m'+1: even cyclic shifts of the
    // normalized Dirichlet kernel. A basis, not orthogonal.
    if (m % 4 == 1) {
        const int mp = (m - 1) / 4;
        const auto dbar = dirichlet_kernel_normalized(m, mp);
        const int shifts = (m + 1) / 2;
        out.shift_system = Matrix<cplx>(total, gammas_mid.size() * std::size_t(shifts));
        col = 0;
        for (std::uint32_t g : gammas_mid) {
            const auto h = hadamard_vector(N, g);
            for (int sft = 0; sft < shifts; ++sft) {
                std::vector<cplx> shifted(m);
                for (int l = 0; l < m; ++l) shifted[l] = dbar[((l - 2 * sft) % m + m) % m];
                fill_tensor(out.shift_system.col(col++), h, shifted);
            }
        }
    }
    return out;
}

std::vector<double> cartesian_pq_spectrum(int N, int m, int K) {
    if (K < 1 || K >= N)
        throw std::invalid_argument("cartesian_pq_spectrum: need 1 <= K < N");
    std::vector<double> out;
    const double mid = double(cycle_low_band_size(m)) / double(m);
    out.insert(out.end(), hamming_ball_volume(N, K - 2), 1.0);
    out.insert(out.end(), binom(N, K - 1), mid);
    out.insert(out.end(), binom(N, K), 1.0 / double(m));
    return out;
}

CartesianIdentityReport cartesian_identity_check(int N, int m, int K, int trials,
                                                 std::uint64_t seed) {
    const auto dec = cartesian_pw_basis(N, m, K);
    const std::size_t side = std::size_t(1) << N;
    Rng rng(seed);

    CartesianIdentityReport rep;
    rep.trials = trials;
    rep.constants[0] = 1.0;
    rep.constants[1] = double(cycle_low_band_size(m)) / double(m);
    rep.constants[2] = 1.0 / double(m);

    // Measurement vectors restricted to the zero slice. Component (i):
    // levels <= K-2; (ii): level K-1 scaled by the kernel's center value;
    // (iii): level K scaled by 1/sqrt(m). These are Q applied to the unit
    // PQ eigenvectors of the corresponding regime.
    std::vector<std::vector<std::vector<double>>> meas(3);
    for (int kappa = 0; kappa <= K - 2; ++kappa)
        for (std::uint32_t g : weight_k_gammas(N, kappa))
            meas[0].push_back(hadamard_vector(N, g));
    const double center = std::sqrt(rep.constants[1]);  // Dbar(0) for m = 1 mod 4
    for (std::uint32_t g : weight_k_gammas(N, K - 1)) {
        auto h = hadamard_vector(N, g);
        for (double& x : h) x *= center;
        meas[1].push_back(std::move(h));
    }
    for (std::uint32_t g : weight_k_gammas(N, K)) {
        auto h = hadamard_vector(N, g);
        for (double& x : h) x /= std::sqrt(double(m));
        meas[2].push_back(std::move(h));
    }

    const Matrix<cplx>* comps[3] = {&dec.slice_local, &dec.level_band, &dec.level_top};
    for (int c = 0; c < 3; ++c) {
        rep.max_error[c] = 0.0;
        const Matrix<cplx>& comp = *comps[c];
        for (int t = 0; t < trials; ++t) {
            std::vector<cplx> f(comp.rows(), cplx(0.0));
            for (std::size_t j = 0; j < comp.cols(); ++j) {
                const cplx coef(rng.gaussian(), rng.gaussian());
                const cplx* bj = comp.col(j);
                for (std::size_t i = 0; i < f.size(); ++i) f[i] += coef * bj[i];
            }
            const double nrm = norm2(std::span<const cplx>(f));
            for (auto& x : f) x /= nrm;

            double q2 = 0.0;
            for (std::size_t u = 0; u < side; ++u) q2 += std::norm(f[u]);
            double sum = 0.0;
            for (const auto& psi : meas[c]) {
                cplx ip = 0.0;
                for (std::size_t u = 0; u < side; ++u) ip += f[u] * psi[u];
                sum += std::norm(ip);
            }
            rep.max_error[c] = std::max(rep.max_error[c], std::abs(rep.constants[c] * q2 - sum));
        }
    }
    return rep;
}

}  // namespace graphlim
