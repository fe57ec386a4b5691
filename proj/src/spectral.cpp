#include "graphlim/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace graphlim {

Spectrum graph_fourier(const Graph& g, double cluster_tol, const EighOptions& opts) {
    if (!is_connected(g)) throw std::invalid_argument("graph_fourier: graph must be connected");
    Spectrum s;
    s.eigen = eigh(laplacian(g), opts);
    s.cluster_tol = cluster_tol;
    s.clusters = group_eigenvalues(s.eigen.values, cluster_tol);
    return s;
}

PaleyWienerSpace<double> pw_space(const Spectrum& spec, double omega, double tol) {
    if (omega < 0) throw std::invalid_argument("pw_space: omega must be nonnegative");
    std::size_t dim = 0;
    for (const auto& c : spec.clusters)
        if (c.value <= omega + tol) dim += c.count;

    PaleyWienerSpace<double> pw;
    pw.omega = omega;
    pw.dim = dim;
    pw.basis = Matrix<double>(spec.eigen.vectors.rows(), dim);
    pw.values.assign(spec.eigen.values.begin(), spec.eigen.values.begin() + dim);
    for (std::size_t j = 0; j < dim; ++j) pw.basis.set_col(j, spec.eigen.vectors.col_span(j));
    return pw;
}

template <typename T>
PaleyWienerSpace<T> pw_space_from_basis(const Matrix<T>& basis, std::span<const double> values,
                                        double omega, double tol) {
    if (omega < 0) throw std::invalid_argument("pw_space_from_basis: omega must be nonnegative");
    if (values.size() != basis.cols())
        throw std::invalid_argument("pw_space_from_basis: value/column count mismatch");
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < values.size(); ++j)
        if (values[j] <= omega + tol) keep.push_back(j);
    std::stable_sort(keep.begin(), keep.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    PaleyWienerSpace<T> pw;
    pw.omega = omega;
    pw.dim = keep.size();
    pw.basis = Matrix<T>(basis.rows(), keep.size());
    pw.values.resize(keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j) {
        pw.basis.set_col(j, basis.col_span(keep[j]));
        pw.values[j] = values[keep[j]];
    }
    return pw;
}

SpatialMask block_mask(int N, int m, int block) {
    if (block < 0 || block >= m) throw std::invalid_argument("block_mask: block out of range");
    SpatialMask mask;
    const std::uint32_t side = 1u << N;
    mask.vertices.resize(side);
    for (std::uint32_t u = 0; u < side; ++u) mask.vertices[u] = std::uint32_t(block) * side + u;
    return mask;
}

namespace {

constexpr double kOneTol = 1e-8;

void validate_mask(const SpatialMask& mask, std::size_t n) {
    if (mask.vertices.empty()) throw std::invalid_argument("mask must be nonempty");
    for (std::uint32_t v : mask.vertices)
        if (v >= n) throw std::invalid_argument("mask vertex out of range");
}

}  // namespace

template <typename T>
SSLReport<T> ssl_eigen(const PaleyWienerSpace<T>& pw, const SpatialMask& mask,
                       const EighOptions& opts) {
    const std::size_t n = pw.basis.rows();
    const std::size_t d = pw.dim;
    validate_mask(mask, n);

    // Rows of the basis restricted to the mask; M = Bq^H Bq = B^H Q B.
    Matrix<T> bq(mask.vertices.size(), d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t r = 0; r < mask.vertices.size(); ++r)
            bq(r, j) = pw.basis(mask.vertices[r], j);
    const Matrix<T> m = gram(bq);
    auto dec = eigh(m, opts);

    SSLReport<T> rep;
    rep.values.assign(dec.values.rbegin(), dec.values.rend());
    rep.vectors = Matrix<T>(n, d);
    for (std::size_t j = 0; j < d; ++j) {
        const auto w = dec.vectors.col_span(d - 1 - j);
        T* out = rep.vectors.col(j);
        for (std::size_t k = 0; k < d; ++k) {
            const T wk = w[k];
            const T* bk = pw.basis.col(k);
            for (std::size_t i = 0; i < n; ++i) out[i] += bk[i] * wk;
        }
    }
    for (double v : rep.values) {
        if (v >= 1.0 - kOneTol)
            ++rep.count_one;
        else if (v > 0.5 + kOneTol)
            ++rep.count_mid;
        else
            ++rep.count_small;
    }
    return rep;
}

template <typename T>
double concentration(std::span<const T> f, const SpatialMask& mask) {
    validate_mask(mask, f.size());
    double total = 0.0;
    for (const auto& v : f) total += std::norm(cplx(v));
    if (total == 0.0) throw std::invalid_argument("concentration: zero vector");
    double inside = 0.0;
    for (std::uint32_t v : mask.vertices) inside += std::norm(cplx(f[v]));
    return inside / total;
}

template PaleyWienerSpace<double> pw_space_from_basis(const Matrix<double>&,
                                                      std::span<const double>, double, double);
template PaleyWienerSpace<cplx> pw_space_from_basis(const Matrix<cplx>&, std::span<const double>,
                                                    double, double);
template SSLReport<double> ssl_eigen(const PaleyWienerSpace<double>&, const SpatialMask&,
                                     const EighOptions&);
template SSLReport<cplx> ssl_eigen(const PaleyWienerSpace<cplx>&, const SpatialMask&,
                                   const EighOptions&);
template double concentration(std::span<const double>, const SpatialMask&);
template double concentration(std::span<const cplx>, const SpatialMask&);

}  // namespace graphlim
