#include "graphlim/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "graphlim/rng.hpp"
#include "graphlim/structured.hpp"

namespace graphlim {

namespace {

constexpr double kRankCutoff = 1e-8;  // relative singular-value threshold

std::size_t rank_from_gram_eigenvalues(const std::vector<double>& lam) {
    double lmax = 0.0;
    for (double l : lam) lmax = std::max(lmax, l);
    if (lmax <= 0.0) return 0;
    const double smax = std::sqrt(lmax);
    std::size_t r = 0;
    for (double l : lam)
        if (l > 0.0 && std::sqrt(l) > kRankCutoff * smax) ++r;
    return r;
}

}  // namespace

template <typename T>
FrameReport frame_bounds(const Matrix<T>& vectors, const PaleyWienerSpace<T>& subspace) {
    if (vectors.rows() != subspace.basis.rows())
        throw std::invalid_argument("frame_bounds: vectors live on a different space");
    // Coefficients of each frame vector in the subspace basis.
    const Matrix<T> coef = adjoint_multiply(subspace.basis, vectors);  // d x nvec
    const Matrix<T> s = multiply(coef, conjugate_transpose(coef));     // frame operator, d x d
    auto dec = eigh(s, EighOptions{.compute_residual = false});

    FrameReport rep;
    rep.dim = subspace.dim;
    rep.lower = dec.values.empty() ? 0.0 : dec.values.front();
    rep.upper = dec.values.empty() ? 0.0 : dec.values.back();
    rep.rank = rank_from_gram_eigenvalues(dec.values);
    return rep;
}

template <typename T>
std::vector<T> cyclic_shift(std::span<const T> f, int k0, const FamilyTag& tag) {
    if (tag.family != GraphFamily::substitution && tag.family != GraphFamily::cartesian_cube_cycle)
        throw std::invalid_argument("cyclic_shift: unsupported graph family");
    const std::size_t side = std::size_t(1) << tag.N;
    if (f.size() != side * std::size_t(tag.m))
        throw std::invalid_argument("cyclic_shift: vector length does not match the family");
    const int m = tag.m;
    std::vector<T> out(f.size());
    for (int k = 0; k < m; ++k) {
        const std::size_t src = std::size_t(k) * side;
        const std::size_t dst = std::size_t(((k + k0) % m + m) % m) * side;
        std::copy(f.begin() + src, f.begin() + src + side, out.begin() + dst);
    }
    return out;
}

template <typename T>
ConjectureReport conjecture_tally(const PaleyWienerSpace<T>& pw, const SSLReport<T>& ssl,
                                  int N, int K, int m) {
    ConjectureReport rep;
    rep.N = N;
    rep.K = K;
    rep.m = m;
    rep.pw_dim = pw.dim;
    rep.count_one = ssl.count_one;
    rep.count_mid = ssl.count_mid;
    rep.count_small = ssl.count_small;

    const std::size_t side = std::size_t(1) << N;
    const std::size_t nsel = ssl.count_one + ssl.count_mid;

    // All m cyclic shifts of the above-1/2 eigenvectors.
    const FamilyTag tag{GraphFamily::substitution, N, m};
    Matrix<T> shifts(pw.basis.rows(), nsel * std::size_t(m));
    std::size_t col = 0;
    for (int k0 = 0; k0 < m; ++k0)
        for (std::size_t j = 0; j < nsel; ++j)
            shifts.set_col(col++,
                           cyclic_shift(std::span<const T>(ssl.vectors.col_span(j)), k0, tag));
    auto gdec = eigh(gram(shifts), EighOptions{.compute_residual = false});
    rep.shift_rank = rank_from_gram_eigenvalues(gdec.values);

    // Strided-sample cardinality of each mid eigenvector.
    for (std::size_t j = ssl.count_one; j < nsel; ++j) {
        const T* phi = ssl.vectors.col(j);
        double best = 0.0;
        for (std::size_t v = 0; v < side; ++v) {
            double total = 0.0;
            for (int k = 0; k < m; ++k) total += std::norm(cplx(phi[std::size_t(k) * side + v]));
            if (total > 0.0) best = std::max(best, std::norm(cplx(phi[v])) / total);
        }
        rep.cardinality_ratios.push_back(best);
    }

    const std::size_t dim_k = hamming_ball_volume(N, K);
    rep.satisfied = rep.count_one == dim_k - std::size_t(K + 1) &&
                    rep.count_mid == std::size_t(K) &&
                    rep.shift_rank == std::size_t(m) * (dim_k - 1);
    return rep;
}

namespace {

template <typename T>
ConcentrationCheckReport concentration_core(const PaleyWienerSpace<T>& pw, const SSLReport<T>& ssl,
                                            int N, int K, int m, int trials, std::uint64_t seed) {
    const std::size_t side = std::size_t(1) << N;
    const std::size_t nsel = ssl.count_one + ssl.count_mid;

    ConcentrationCheckReport rep;
    rep.N = N;
    rep.K = K;
    rep.m = m;
    rep.trials = trials;
    rep.conjecture_ok = ssl.count_mid == std::size_t(K);
    rep.mu_K = nsel > 0 ? ssl.values[nsel - 1] : 0.0;

    // Block-k measurement family: shift the above-1/2 eigenvectors by k,
    // truncate to the block, Gram-Schmidt there.
    const FamilyTag tag{GraphFamily::substitution, N, m};
    std::vector<Matrix<T>> block_meas(m);
    for (int k = 0; k < m; ++k) {
        Matrix<T> q(side, nsel);
        for (std::size_t j = 0; j < nsel; ++j) {
            const auto shifted = cyclic_shift(std::span<const T>(ssl.vectors.col_span(j)), k, tag);
            for (std::size_t u = 0; u < side; ++u) q(u, j) = shifted[std::size_t(k) * side + u];
        }
        for (std::size_t j = 0; j < nsel; ++j) {
            auto qj = q.col_span(j);
            for (std::size_t i = 0; i < j; ++i) {
                auto qi = q.col_span(i);
                const T c = inner(std::span<const T>(qi), std::span<const T>(qj));
                for (std::size_t u = 0; u < side; ++u) qj[u] -= c * qi[u];
            }
            const double nrm = norm2(std::span<const T>(qj));
            if (nrm > 1e-12)
                for (auto& x : qj) x /= nrm;
        }
        block_meas[k] = std::move(q);
    }

    Rng rng(seed);
    double worst_lower = 1e300, worst_upper = 1e300;
    std::vector<T> f(pw.basis.rows());
    for (int t = 0; t < trials; ++t) {
        std::fill(f.begin(), f.end(), T{});
        for (std::size_t j = 0; j < pw.dim; ++j) {
            const double coef = rng.gaussian();
            const T* bj = pw.basis.col(j);
            for (std::size_t i = 0; i < f.size(); ++i) f[i] += coef * bj[i];
        }
        const double nrm = norm2(std::span<const T>(f));
        for (auto& x : f) x /= nrm;

        for (int k = 0; k < m; ++k) {
            double q2 = 0.0;
            for (std::size_t u = 0; u < side; ++u) q2 += std::norm(cplx(f[std::size_t(k) * side + u]));
            double sum = 0.0;
            for (std::size_t j = 0; j < nsel; ++j) {
                const T* psi = block_meas[k].col(j);
                T ip{};
                for (std::size_t u = 0; u < side; ++u)
                    ip += conj_if(psi[u]) * f[std::size_t(k) * side + u];
                sum += std::norm(cplx(ip));
            }
            worst_lower = std::min(worst_lower, sum - rep.mu_K * q2);
            worst_upper = std::min(worst_upper, q2 - sum);
        }
    }
    rep.worst_lower_margin = worst_lower;
    rep.worst_upper_margin = worst_upper;
    rep.passed = worst_lower >= -1e-10 && worst_upper >= -1e-10;
    return rep;
}

}  // namespace

ConjectureReport conjecture_check(int N, int K, int m, double tol, PwRoute route) {
    if (K <= 0 || K >= N) throw std::invalid_argument("conjecture_check: need 0 < K < N");
    const auto mask = block_mask(N, m, 0);
    const EighOptions fast{.compute_residual = false};
    if (route == PwRoute::structural) {
        const auto basis = substitution_eigenbasis(N, m);
        const auto pw = substitution_pw_space(basis, 2.0 * K, tol);
        const auto ssl = ssl_eigen(pw, mask, fast);
        return conjecture_tally(pw, ssl, N, K, m);
    }
    const auto spec = graph_fourier(vertex_substitution(N, m), 1e-8, fast);
    const auto pw = pw_space(spec, 2.0 * K, tol);
    const auto ssl = ssl_eigen(pw, mask, fast);
    return conjecture_tally(pw, ssl, N, K, m);
}

ConcentrationCheckReport concentration_check(int N, int K, int m, int trials, std::uint64_t seed,
                                             PwRoute route) {
    if (K <= 0 || K >= N) throw std::invalid_argument("concentration_check: need 0 < K < N");
    const auto mask = block_mask(N, m, 0);
    const EighOptions fast{.compute_residual = false};
    if (route == PwRoute::structural) {
        const auto basis = substitution_eigenbasis(N, m);
        const auto pw = substitution_pw_space(basis, 2.0 * K);
        const auto ssl = ssl_eigen(pw, mask, fast);
        return concentration_core(pw, ssl, N, K, m, trials, seed);
    }
    const auto spec = graph_fourier(vertex_substitution(N, m), 1e-8, fast);
    const auto pw = pw_space(spec, 2.0 * K);
    const auto ssl = ssl_eigen(pw, mask, fast);
    return concentration_core(pw, ssl, N, K, m, trials, seed);
}

PesensonReport pesenson_report(const Graph& g,
                               const std::vector<std::vector<std::uint32_t>>& partition,
                               SamplingChoice choice, double omega, double epsilon, int trials,
                               std::uint64_t seed) {
    if (omega < 0) throw std::invalid_argument("pesenson_report: omega must be nonnegative");
    if (epsilon <= 0) throw std::invalid_argument("pesenson_report: epsilon must be positive");

    std::vector<int> owner(g.n, -1);
    for (std::size_t j = 0; j < partition.size(); ++j)
        for (std::uint32_t v : partition[j]) {
            if (v >= g.n || owner[v] != -1)
                throw std::invalid_argument("pesenson_report: invalid partition");
            owner[v] = int(j);
        }
    for (std::size_t v = 0; v < g.n; ++v)
        if (owner[v] == -1) throw std::invalid_argument("pesenson_report: partition must cover V");

    PesensonReport rep;
    rep.omega = omega;
    rep.epsilon = epsilon;
    rep.trials = trials;

    // Sampling vectors, supported each on its own cluster.
    Matrix<double> psi(g.n, partition.size());
    rep.lambda_min = 1e300;
    rep.theta_max = 0.0;
    for (std::size_t j = 0; j < partition.size(); ++j) {
        const auto& cluster = partition[j];
        const auto sub = induced_subgraph(g, cluster);
        const auto dec = eigh(laplacian(sub.graph), EighOptions{.compute_residual = false});
        const double lambda1 = cluster.size() > 1 ? dec.values[1] : 0.0;
        rep.cluster_lambda1.push_back(lambda1);
        rep.lambda_min = std::min(rep.lambda_min, lambda1);

        const double phi0 = 1.0 / std::sqrt(double(cluster.size()));
        if (choice == SamplingChoice::cluster_average) {
            for (std::uint32_t v : cluster) psi(v, j) = phi0;
        } else {
            const std::uint32_t v = *std::min_element(cluster.begin(), cluster.end());
            psi(v, j) = 1.0;
        }
        double ip = 0.0;
        for (std::uint32_t v : cluster) ip += phi0 * psi(v, j);
        const double theta = 1.0 / (ip * ip);
        rep.cluster_theta.push_back(theta);
        rep.theta_max = std::max(rep.theta_max, theta);
    }

    rep.hypothesis_ok = rep.lambda_min > 0 && omega < rep.lambda_min / rep.theta_max;
    rep.mu = rep.lambda_min > 0 ? (1.0 + epsilon) * rep.theta_max / rep.lambda_min * omega : 1e300;
    rep.admissible = rep.mu < 1.0;
    rep.lower_constant =
        rep.admissible ? (1.0 - rep.mu) * epsilon / ((1.0 + epsilon) * rep.theta_max) : 0.0;

    const auto spec = graph_fourier(g, 1e-8, EighOptions{.compute_residual = false});
    const auto pw = pw_space(spec, omega);
    rep.pw_dim = pw.dim;

    Rng rng(seed);
    double emin = 1e300, emax = -1e300;
    std::vector<double> f(g.n);
    for (int t = 0; t < trials; ++t) {
        std::fill(f.begin(), f.end(), 0.0);
        for (std::size_t j = 0; j < pw.dim; ++j) {
            const double coef = rng.gaussian();
            const double* bj = pw.basis.col(j);
            for (std::size_t i = 0; i < g.n; ++i) f[i] += coef * bj[i];
        }
        const double nrm = norm2(std::span<const double>(f));
        if (nrm == 0.0) continue;
        for (auto& x : f) x /= nrm;
        double s = 0.0;
        for (std::size_t j = 0; j < partition.size(); ++j) {
            double ip = 0.0;
            const double* pj = psi.col(j);
            for (std::size_t i = 0; i < g.n; ++i) ip += pj[i] * f[i];
            s += ip * ip;
        }
        emin = std::min(emin, s);
        emax = std::max(emax, s);
    }
    rep.empirical_min = emin;
    rep.empirical_max = emax;
    rep.passed = rep.admissible && emin >= rep.lower_constant - 1e-10;
    return rep;
}

template FrameReport frame_bounds(const Matrix<double>&, const PaleyWienerSpace<double>&);
template FrameReport frame_bounds(const Matrix<cplx>&, const PaleyWienerSpace<cplx>&);
template std::vector<double> cyclic_shift(std::span<const double>, int, const FamilyTag&);
template std::vector<cplx> cyclic_shift(std::span<const cplx>, int, const FamilyTag&);
template ConjectureReport conjecture_tally(const PaleyWienerSpace<double>&,
                                           const SSLReport<double>&, int, int, int);
template ConjectureReport conjecture_tally(const PaleyWienerSpace<cplx>&, const SSLReport<cplx>&,
                                           int, int, int);

}  // namespace graphlim
