#include "graphlim/eigh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

// Householder reduction to tridiagonal form followed by implicit-shift QL
// with Wilkinson shifts (tred2/tql2 lineage, adapted to column-major storage).
// The complex Hermitian path reduces to a complex tridiagonal, rescales the
// subdiagonal to be real by a diagonal unitary, and runs the same QL sweep
// with rotations applied to the accumulated complex transform.

namespace graphlim {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Real symmetric Householder tridiagonalization with accumulation.
// On exit `a` holds the accumulated orthogonal transform Z, `d` the diagonal
// and `e` the subdiagonal (e[0] = 0). Upper triangle is the working copy;
// reflector i lives in column i during stage one.
void tridiagonalize_real(Matrix<double>& a, std::vector<double>& d, std::vector<double>& e) {
    const std::size_t n = a.rows();
    d.assign(n, 0.0);
    e.assign(n, 0.0);
    if (n == 1) {
        d[0] = a(0, 0);
        a(0, 0) = 1.0;
        return;
    }

    std::vector<double> p(n);
    for (std::size_t i = n - 1; i >= 1; --i) {
        const std::size_t l = i - 1;
        double h = 0.0;
        double scale = 0.0;
        if (l > 0) {
            double* ui = a.col(i);
            for (std::size_t k = 0; k <= l; ++k) scale += std::abs(ui[k]);
            if (scale == 0.0) {
                e[i] = ui[l];
            } else {
                for (std::size_t k = 0; k <= l; ++k) {
                    ui[k] /= scale;
                    h += ui[k] * ui[k];
                }
                double f = ui[l];
                double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                ui[l] = f - g;

                // p = A u over the leading block, reading the upper triangle
                // column-wise so every inner loop is contiguous.
                std::fill(p.begin(), p.begin() + l + 1, 0.0);
                for (std::size_t j = 0; j <= l; ++j) {
                    const double uj = ui[j];
                    const double* colj = a.col(j);
                    double s = 0.0;
                    for (std::size_t k = 0; k < j; ++k) {
                        s += colj[k] * ui[k];
                        p[k] += colj[k] * uj;
                    }
                    p[j] += s + colj[j] * uj;
                }
                double f2 = 0.0;
                for (std::size_t j = 0; j <= l; ++j) {
                    a(i, j) = ui[j] / h;  // u/h kept in row i for accumulation
                    p[j] /= h;
                    f2 += p[j] * ui[j];
                }
                const double hh = f2 / (h + h);
                for (std::size_t j = 0; j <= l; ++j) p[j] -= hh * ui[j];
                for (std::size_t j = 0; j <= l; ++j) {
                    const double fj = ui[j];
                    const double qj = p[j];
                    double* colj = a.col(j);
                    for (std::size_t k = 0; k <= j; ++k) colj[k] -= fj * p[k] + qj * ui[k];
                }
            }
        } else {
            e[i] = a(0, i);
        }
        d[i] = h;
    }

    // Accumulate the product of the reflectors into `a`.
    std::vector<double> uoh(n);
    d[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t l = i == 0 ? 0 : i - 1;
        if (i > 0 && d[i] != 0.0) {
            const double* ui = a.col(i);
            for (std::size_t k = 0; k <= l; ++k) uoh[k] = a(i, k);
            for (std::size_t j = 0; j <= l; ++j) {
                double* zj = a.col(j);
                double g = 0.0;
                for (std::size_t k = 0; k <= l; ++k) g += ui[k] * zj[k];
                for (std::size_t k = 0; k <= l; ++k) zj[k] -= g * uoh[k];
            }
        }
        d[i] = a(i, i);
        a(i, i) = 1.0;
        if (i > 0) {
            for (std::size_t k = 0; k <= l; ++k) {
                a(k, i) = 0.0;
                a(i, k) = 0.0;
            }
        }
    }
}

// Complex Hermitian Householder tridiagonalization. Returns the accumulated
// unitary in `u`; on exit d/e hold a REAL symmetric tridiagonal equivalent
// (the subdiagonal phases are folded into `u`).
void tridiagonalize_hermitian(Matrix<cplx>& a, Matrix<cplx>& u, std::vector<double>& d,
                              std::vector<double>& e) {
    const std::size_t n = a.rows();
    u = Matrix<cplx>::identity(n);
    d.assign(n, 0.0);
    e.assign(n, 0.0);

    std::vector<cplx> v(n), p(n), q(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t len = n - k - 1;
        double sigma2 = 0.0;
        for (std::size_t i = 0; i < len; ++i) sigma2 += std::norm(a(k + 1 + i, k));
        const double sigma = std::sqrt(sigma2);
        if (sigma == 0.0) continue;
        const cplx alpha0 = a(k + 1, k);
        const double a0 = std::abs(alpha0);
        const cplx phase = a0 == 0.0 ? cplx(1.0) : alpha0 / a0;
        for (std::size_t i = 0; i < len; ++i) v[i] = a(k + 1 + i, k);
        v[0] += phase * sigma;
        const double beta = 1.0 / (sigma * (sigma + a0));

        // Two-sided update of the trailing block: B -= q v^H + v q^H.
        for (std::size_t i = 0; i < len; ++i) {
            cplx s = 0.0;
            for (std::size_t j = 0; j < len; ++j) s += a(k + 1 + i, k + 1 + j) * v[j];
            p[i] = beta * s;
        }
        cplx vhp = 0.0;
        for (std::size_t i = 0; i < len; ++i) vhp += std::conj(v[i]) * p[i];
        const cplx kappa = 0.5 * beta * vhp;
        for (std::size_t i = 0; i < len; ++i) q[i] = p[i] - kappa * v[i];
        for (std::size_t j = 0; j < len; ++j) {
            const cplx vj = std::conj(v[j]);
            const cplx qj = std::conj(q[j]);
            for (std::size_t i = 0; i < len; ++i)
                a(k + 1 + i, k + 1 + j) -= q[i] * vj + v[i] * qj;
        }
        a(k + 1, k) = -phase * sigma;
        a(k, k + 1) = std::conj(a(k + 1, k));
        for (std::size_t i = 1; i < len; ++i) {
            a(k + 1 + i, k) = 0.0;
            a(k, k + 1 + i) = 0.0;
        }

        // U <- U H with H acting on coordinates k+1..n-1.
        for (std::size_t r = 0; r < n; ++r) {
            cplx s = 0.0;
            for (std::size_t i = 0; i < len; ++i) s += u(r, k + 1 + i) * v[i];
            s *= beta;
            for (std::size_t i = 0; i < len; ++i) u(r, k + 1 + i) -= s * std::conj(v[i]);
        }
    }

    // Fold subdiagonal phases into u so the tridiagonal is real.
    std::vector<cplx> dphase(n, cplx(1.0));
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const cplx b = a(j + 1, j);
        const double ab = std::abs(b);
        e[j + 1] = ab;
        const cplx ph = ab == 0.0 ? cplx(1.0) : b / ab;
        dphase[j + 1] = dphase[j] * ph;
    }
    for (std::size_t j = 0; j < n; ++j) {
        d[j] = a(j, j).real();
        if (dphase[j] != cplx(1.0))
            for (std::size_t r = 0; r < n; ++r) u(r, j) *= dphase[j];
    }
}

// Implicit-shift QL on a real symmetric tridiagonal, rotations accumulated
// into the columns of `z`. e[0] is ignored.
template <typename T>
void tql2(std::vector<double>& d, std::vector<double>& e, Matrix<T>& z) {
    const std::size_t n = d.size();
    if (n <= 1) return;
    for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    for (std::size_t l = 0; l < n; ++l) {
        const std::size_t max_rotations = 30 * n;
        std::size_t rotations = 0;
        for (;;) {
            std::size_t m = l;
            while (m + 1 < n) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= kEps * dd) break;
                ++m;
            }
            if (m == l) break;
            if (rotations >= max_rotations)
                throw ConvergenceError(l, rotations,
                                       "eigh: QL iteration exceeded " +
                                           std::to_string(max_rotations) +
                                           " rotations at eigenvalue index " + std::to_string(l));
            // Wilkinson shift from the leading 2x2.
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            bool underflow = false;
            for (std::size_t i = m; i-- > l;) {
                double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                ++rotations;
                T* zi = z.col(i);
                T* zi1 = z.col(i + 1);
                for (std::size_t k = 0; k < z.rows(); ++k) {
                    const T h = zi1[k];
                    zi1[k] = s * zi[k] + c * h;
                    zi[k] = c * zi[k] - s * h;
                }
            }
            if (underflow) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

template <typename T>
void sort_ascending(std::vector<double>& d, Matrix<T>& z) {
    const std::size_t n = d.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
    std::vector<double> dn(n);
    Matrix<T> zn(z.rows(), n);
    for (std::size_t j = 0; j < n; ++j) {
        dn[j] = d[perm[j]];
        zn.set_col(j, z.col_span(perm[j]));
    }
    d = std::move(dn);
    z = std::move(zn);
}

// Largest-magnitude entry of each column made real positive.
void fix_phases(Matrix<double>& z) {
    for (std::size_t j = 0; j < z.cols(); ++j) {
        double* col = z.col(j);
        std::size_t best = 0;
        double mag = 0.0;
        for (std::size_t i = 0; i < z.rows(); ++i) {
            const double m = std::abs(col[i]);
            if (m > mag) {
                mag = m;
                best = i;
            }
        }
        if (col[best] < 0.0)
            for (std::size_t i = 0; i < z.rows(); ++i) col[i] = -col[i];
    }
}

void fix_phases(Matrix<cplx>& z) {
    for (std::size_t j = 0; j < z.cols(); ++j) {
        cplx* col = z.col(j);
        std::size_t best = 0;
        double mag = 0.0;
        for (std::size_t i = 0; i < z.rows(); ++i) {
            const double m = std::abs(col[i]);
            if (m > mag) {
                mag = m;
                best = i;
            }
        }
        if (mag == 0.0) continue;
        const cplx rot = std::conj(col[best]) / mag;
        for (std::size_t i = 0; i < z.rows(); ++i) col[i] *= rot;
    }
}

// Modified Gram-Schmidt inside each eigenvalue cluster. Vectors arrive
// orthonormal to machine precision already; this pins the within-cluster
// basis down deterministically.
template <typename T>
void reorthonormalize_clusters(const std::vector<double>& d, Matrix<T>& z, double cluster_tol) {
    double scale = 1.0;
    for (double v : d) scale = std::max(scale, std::abs(v));
    const double tol = cluster_tol * scale;
    std::size_t start = 0;
    while (start < d.size()) {
        std::size_t end = start + 1;
        while (end < d.size() && d[end] - d[end - 1] <= tol) ++end;
        for (std::size_t j = start; j < end; ++j) {
            auto zj = z.col_span(j);
            for (std::size_t k = start; k < j; ++k) {
                auto zk = z.col_span(k);
                const T c = inner(std::span<const T>(zk), std::span<const T>(zj));
                for (std::size_t i = 0; i < zj.size(); ++i) zj[i] -= c * zk[i];
            }
            const double nrm = norm2(std::span<const T>(zj));
            if (nrm > 0)
                for (auto& v : zj) v /= nrm;
        }
        start = end;
    }
}

template <typename T>
double residual_norm(const Matrix<T>& a, const std::vector<double>& d, const Matrix<T>& z) {
    double worst = 0.0;
    std::vector<T> av(a.rows());
    for (std::size_t j = 0; j < z.cols(); ++j) {
        std::fill(av.begin(), av.end(), T{});
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T xk = z(k, j);
            const T* ak = a.col(k);
            for (std::size_t i = 0; i < a.rows(); ++i) av[i] += ak[i] * xk;
        }
        double r = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) r += std::norm(cplx(av[i]) - d[j] * cplx(z(i, j)));
        worst = std::max(worst, std::sqrt(r));
    }
    return worst;
}

template <typename T>
void check_hermitian(const Matrix<T>& a, double tol) {
    if (a.rows() != a.cols()) throw std::invalid_argument("eigh: matrix must be square");
    const double dev = hermitian_deviation(a);
    const double scale = std::max(1.0, max_abs(a));
    if (dev > tol * scale)
        throw std::invalid_argument("eigh: input is not Hermitian (deviation " +
                                    std::to_string(dev) + ")");
}

}  // namespace

EigenDecomposition<double> eigh(const Matrix<double>& a, const EighOptions& opts) {
    check_hermitian(a, opts.hermitian_tol);
    const std::size_t n = a.rows();
    EigenDecomposition<double> out;
    if (n == 0) return out;

    Matrix<double> work = symmetrized(a);
    std::vector<double> d, e;
    tridiagonalize_real(work, d, e);
    tql2(d, e, work);
    sort_ascending(d, work);
    reorthonormalize_clusters(d, work, opts.cluster_tol);
    fix_phases(work);
    out.values = std::move(d);
    out.vectors = std::move(work);
    if (opts.compute_residual) out.residual_norm = residual_norm(a, out.values, out.vectors);
    return out;
}

EigenDecomposition<cplx> eigh(const Matrix<cplx>& a, const EighOptions& opts) {
    check_hermitian(a, opts.hermitian_tol);
    const std::size_t n = a.rows();
    EigenDecomposition<cplx> out;
    if (n == 0) return out;

    Matrix<cplx> work = symmetrized(a);
    Matrix<cplx> u;
    std::vector<double> d, e;
    tridiagonalize_hermitian(work, u, d, e);
    tql2(d, e, u);
    sort_ascending(d, u);
    reorthonormalize_clusters(d, u, opts.cluster_tol);
    fix_phases(u);
    out.values = std::move(d);
    out.vectors = std::move(u);
    if (opts.compute_residual) out.residual_norm = residual_norm(a, out.values, out.vectors);
    return out;
}

std::vector<EigenvalueCluster> group_eigenvalues(std::span<const double> values, double tol) {
    if (tol < 0) throw std::invalid_argument("group_eigenvalues: negative tolerance");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] < values[i - 1])
            throw std::invalid_argument("group_eigenvalues: values must be ascending");
    std::vector<EigenvalueCluster> out;
    std::size_t start = 0;
    while (start < values.size()) {
        std::size_t end = start + 1;
        double sum = values[start];
        while (end < values.size() && values[end] - values[end - 1] <= tol) {
            sum += values[end];
            ++end;
        }
        out.push_back({sum / double(end - start), start, end - start});
        start = end;
    }
    return out;
}

}  // namespace graphlim
