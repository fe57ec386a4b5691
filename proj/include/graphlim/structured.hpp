#pragma once

#include <cstdint>
#include <vector>

#include "graphlim/eigh.hpp"
#include "graphlim/matrix.hpp"
#include "graphlim/spectral.hpp"

namespace graphlim {

/// Hadamard character h_gamma(v) = 2^(-N/2) (-1)^<v,gamma>; eigenvector of
/// the cube Laplacian with eigenvalue twice the Hamming weight of gamma.
std::vector<double> hadamard_vector(int N, std::uint32_t gamma);

/// Orthonormal basis (binom(N,K) - 1 columns) of the weight-K Hadamard
/// combinations with coefficients summing to zero. Every column vanishes at
/// the all-zeros and all-ones vertices and satisfies L f = 2K f. Helmert
/// coefficient rows over the lexicographically ordered gammas make the
/// construction deterministic.
Matrix<double> dirichlet_basis(int N, int K);

/// Unit sum of all weight-K Hadamard characters; the 2K-eigenvector of the
/// cube Laplacian orthogonal to the Dirichlet ones.
std::vector<double> neumann_vector(int N, int K);

/// Columns h_{n,0}, ..., h_{n,N}.
Matrix<double> neumann_basis(int N);

/// L(B_N) + C_alpha where the corner matrix C_alpha couples the all-zeros
/// and all-ones vertices with the cycle phase alpha = e^(2 pi i nu / m).
struct AugmentedLaplacian {
    int N = 0;
    cplx alpha{1.0};
    Matrix<cplx> matrix;
};

AugmentedLaplacian augmented_laplacian(int N, int nu, int m);

/// Eigenstructure of the augmented Laplacian compressed to the Neumann
/// subspace (which it leaves invariant). The K-th eigenvalue lies in
/// [2K, 2K + 2); the coefficient columns are the c_kappa(alpha, K).
struct NeumannTypeSystem {
    int N = 0, nu = 0, m = 0;
    cplx alpha{1.0};
    std::vector<double> eigenvalues;  // ascending, N+1 of them
    Matrix<cplx> coefficients;        // (N+1) x (N+1)
    Matrix<cplx> cube_profiles;       // 2^N x (N+1), unit columns
};

NeumannTypeSystem neumann_type_eigen(int N, int nu, int m);

enum class ModeType { dirichlet, neumann };

/// Annotation of one eigenvector of L(B_N |- C_m): Dirichlet-type vectors are
/// supported in a single block, Neumann-type vectors are a fixed augmented-
/// Laplacian eigenvector per block modulated by a cycle exponential.
struct SubstitutionMode {
    ModeType type;
    int K;           // level: eigenvalue is 2K (dirichlet) or in [2K, 2K+2)
    int block;       // dirichlet only, else -1
    int nu;          // neumann only, else -1
    double eigenvalue;
};

struct SubstitutionEigenbasis {
    int N = 0, m = 0;
    Matrix<cplx> vectors;  // m 2^N orthonormal columns
    std::vector<SubstitutionMode> modes;

    std::vector<double> eigenvalues() const {
        std::vector<double> v;
        v.reserve(modes.size());
        for (const auto& mo : modes) v.push_back(mo.eigenvalue);
        return v;
    }
};

/// Complete orthonormal eigenbasis of L(B_N |- C_m): m(2^N - N - 1)
/// Dirichlet-type vectors plus m(N+1) Neumann-type vectors.
SubstitutionEigenbasis substitution_eigenbasis(int N, int m);

/// The mode annotations alone (same order as substitution_eigenbasis) without
/// materializing the vectors; enough for spectra and dimension counts.
std::vector<SubstitutionMode> substitution_modes(int N, int m);

/// Paley-Wiener space of the substitution graph assembled from the analytic
/// eigenbasis instead of a dense decomposition.
PaleyWienerSpace<cplx> substitution_pw_space(const SubstitutionEigenbasis& basis, double omega,
                                             double tol = 1e-9);

/// Finite Dirichlet kernel D_n(l) = sum_{k=-n..n} e^(2 pi i k l / m) on the
/// cycle; real-valued. Requires 0 <= n <= (m-1)/2.
std::vector<double> dirichlet_kernel(int m, int n);

/// D_n / sqrt(m (2n+1)), unit norm.
std::vector<double> dirichlet_kernel_normalized(int m, int n);

/// Orthogonal decomposition of PW_{2K}(B_N [] C_m) into (i) cube functions of
/// level <= K-2 on any single slice, (ii) level K-1 tensored with the low
/// band of the cycle, (iii) level K tensored with cycle constants.
struct CartesianPWDecomposition {
    int N = 0, m = 0, K = 0;
    Matrix<cplx> slice_local;   // component (i), m * dim_{K-2} columns
    Matrix<cplx> level_band;    // component (ii), orthonormal exponential form
    Matrix<cplx> level_top;     // component (iii), binom(N,K) columns
    /// Cyclic even shifts of the normalized Dirichlet kernel tensored with
    /// level K-1 cube vectors; a (non-orthogonal) basis of component (ii).
    /// Only populated when m = 1 (mod 4).
    Matrix<cplx> shift_system;

    std::size_t dim() const {
        return slice_local.cols() + level_band.cols() + level_top.cols();
    }
};

CartesianPWDecomposition cartesian_pw_basis(int N, int m, int K);

/// Predicted nonzero PQ spectrum for the slice mask: dim_{K-2} ones, then
/// binom(N,K-1) copies of dim(PW_2(C_m))/m, then binom(N,K) copies of 1/m.
/// Descending. For m = 1 (mod 4) the middle value is 1/2 + 1/(2m).
std::vector<double> cartesian_pq_spectrum(int N, int m, int K);

/// Verifies the three per-regime measurement identities
///   c * ||Q f||^2 = sum_j |<f, Q psi_j>|^2
/// on seeded random f from each component, where psi_j are the unit PQ
/// eigenvectors extending the slice-localized cube eigenvectors and c is the
/// regime constant (1, dim PW_2(C_m)/m, 1/m).
struct CartesianIdentityReport {
    double constants[3];
    double max_error[3];  // worst |c*||Qf||^2 - sum| per component
    int trials = 0;
};

CartesianIdentityReport cartesian_identity_check(int N, int m, int K, int trials,
                                                 std::uint64_t seed);

/// sum_{kappa<=K} binom(N,kappa): the volume of the Hamming ball. Negative K
/// gives zero.
std::size_t hamming_ball_volume(int N, int K);

/// Number of cycle frequencies with Laplacian eigenvalue at most 2, i.e. the
/// dimension of PW_2(C_m).
int cycle_low_band_size(int m);

}  // namespace graphlim
