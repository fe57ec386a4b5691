#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphlim/matrix.hpp"

namespace graphlim {

/// Thrown when the tridiagonal QL iteration exceeds its rotation budget.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(std::size_t eigenvalue_index, std::size_t rotations, std::string what)
        : std::runtime_error(std::move(what)),
          eigenvalue_index(eigenvalue_index),
          rotations(rotations) {}
    std::size_t eigenvalue_index;
    std::size_t rotations;
};

/// Full spectral decomposition of a Hermitian matrix.
///
/// `values` are ascending. `vectors` is column-orthonormal with a fixed phase
/// convention: the largest-magnitude entry of each column is real positive.
/// `residual_norm` is max_j ||A v_j - lambda_j v_j||_2.
template <typename T>
struct EigenDecomposition {
    std::vector<double> values;
    Matrix<T> vectors;
    double residual_norm = 0.0;
};

struct EighOptions {
    /// Reject input whose relative Hermitian deviation exceeds this.
    double hermitian_tol = 1e-10;
    /// Compute residual_norm (costs one extra n^3 pass).
    bool compute_residual = true;
    /// Re-orthonormalize eigenvector groups whose eigenvalues agree to this
    /// relative tolerance. Spans are contractual inside a cluster, individual
    /// vectors are not.
    double cluster_tol = 1e-8;
};

EigenDecomposition<double> eigh(const Matrix<double>& a, const EighOptions& opts = {});
EigenDecomposition<cplx> eigh(const Matrix<cplx>& a, const EighOptions& opts = {});

inline EigenDecomposition<double> eigh(const HermitianMatrix<double>& a, const EighOptions& opts = {}) {
    return eigh(a.matrix(), opts);
}
inline EigenDecomposition<cplx> eigh(const HermitianMatrix<cplx>& a, const EighOptions& opts = {}) {
    return eigh(a.matrix(), opts);
}

/// One group of numerically coincident eigenvalues.
struct EigenvalueCluster {
    double value;       // mean of the members
    std::size_t first;  // index of the first member in the ascending list
    std::size_t count;
};

/// Greedy clustering of an ascending list: consecutive values within `tol`
/// are merged; the representative is the cluster mean.
std::vector<EigenvalueCluster> group_eigenvalues(std::span<const double> values, double tol);

}  // namespace graphlim
