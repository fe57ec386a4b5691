#pragma once

#include <cstdint>
#include <vector>

#include "graphlim/graph.hpp"
#include "graphlim/matrix.hpp"
#include "graphlim/spectral.hpp"

namespace graphlim {

/// Frame bounds of a vector system over a subspace: extreme eigenvalues of
/// the frame operator compressed to the subspace basis.
struct FrameReport {
    double lower = 0.0;   // A
    double upper = 0.0;   // B
    std::size_t rank = 0; // numerical rank of the coefficient matrix
    std::size_t dim = 0;  // subspace dimension
};

template <typename T>
FrameReport frame_bounds(const Matrix<T>& vectors, const PaleyWienerSpace<T>& subspace);

/// Rotate the block (slice) coordinate of a vertex function by k0. Valid for
/// the substitution and Cartesian cube-on-cycle families, where it is a graph
/// automorphism. Norm preserving and commutes with the Laplacian.
template <typename T>
std::vector<T> cyclic_shift(std::span<const T> f, int k0, const FamilyTag& tag);

enum class PwRoute { dense, structural };

/// Numerical check of the shifted-PQ-eigenvector basis conjecture at
/// (N, K, m): tallies the PQ spectrum over PW_{2K} with the block-0 mask,
/// the rank of all cyclic shifts of the above-1/2 eigenvectors, and the
/// strided-sample cardinality diagnostic of the mid eigenvectors.
struct ConjectureReport {
    int N = 0, K = 0, m = 0;
    std::size_t pw_dim = 0;
    std::size_t count_one = 0;
    std::size_t count_mid = 0;
    std::size_t count_small = 0;
    std::size_t shift_rank = 0;
    /// Per mid eigenvector (descending): max over cube vertices of
    /// |block-0 sample|^2 / ||strided sample vector||^2.
    std::vector<double> cardinality_ratios;
    bool satisfied = false;  // count_one = dim_K-(K+1), count_mid = K, full shift rank
};

ConjectureReport conjecture_check(int N, int K, int m, double tol = 1e-9,
                                  PwRoute route = PwRoute::dense);

/// Same tally from precomputed pieces (lets callers reuse an expensive
/// decomposition).
template <typename T>
ConjectureReport conjecture_tally(const PaleyWienerSpace<T>& pw, const SSLReport<T>& ssl,
                                  int N, int K, int m);

/// Two-sided per-block measurement bounds with the shifted above-1/2 PQ
/// eigenvectors, orthonormalized on their block:
///   mu_K ||Q^(k) f||^2 <= sum_j |<Q^(k) f, psi_{j,k}>|^2 <= ||Q^(k) f||^2.
struct ConcentrationCheckReport {
    int N = 0, K = 0, m = 0;
    double mu_K = 0.0;          // smallest PQ eigenvalue in (1/2, 1)
    bool conjecture_ok = true;  // count_mid == K; reported, not asserted
    int trials = 0;
    double worst_lower_margin = 0.0;  // min over f, k of sum - mu_K ||Qf||^2
    double worst_upper_margin = 0.0;  // min over f, k of ||Qf||^2 - sum
    bool passed = false;
};

ConcentrationCheckReport concentration_check(int N, int K, int m, int trials = 50,
                                             std::uint64_t seed = 1,
                                             PwRoute route = PwRoute::dense);

enum class SamplingChoice { cluster_average, point_sample };

/// Plancherel-Polya lower-bound checker for cluster sampling. With the
/// default choice psi_j = phi_{0,j} (unit constant on the cluster), theta_j
/// is exactly one.
struct PesensonReport {
    double lambda_min = 0.0;  // inf_j lambda_{1,j}
    double theta_max = 0.0;   // sup_j theta_j
    double omega = 0.0;
    double epsilon = 0.0;
    double mu = 0.0;                // (1+eps) (Theta/Lambda) Omega
    bool hypothesis_ok = false;     // Omega < Lambda/Theta
    bool admissible = false;        // mu < 1
    double lower_constant = 0.0;    // (1-mu) eps / ((1+eps) Theta)
    double empirical_min = 0.0;     // min_f sum_j |<f,psi_j>|^2 over unit f in PW
    double empirical_max = 0.0;
    std::size_t pw_dim = 0;
    int trials = 0;
    bool passed = false;  // empirical_min >= lower_constant - 1e-10 (when admissible)
    std::vector<double> cluster_lambda1;
    std::vector<double> cluster_theta;
};

PesensonReport pesenson_report(const Graph& g,
                               const std::vector<std::vector<std::uint32_t>>& partition,
                               SamplingChoice choice, double omega, double epsilon, int trials,
                               std::uint64_t seed = 1);

extern template FrameReport frame_bounds(const Matrix<double>&, const PaleyWienerSpace<double>&);
extern template FrameReport frame_bounds(const Matrix<cplx>&, const PaleyWienerSpace<cplx>&);
extern template std::vector<double> cyclic_shift(std::span<const double>, int, const FamilyTag&);
extern template std::vector<cplx> cyclic_shift(std::span<const cplx>, int, const FamilyTag&);
extern template ConjectureReport conjecture_tally(const PaleyWienerSpace<double>&,
                                                  const SSLReport<double>&, int, int, int);
extern template ConjectureReport conjecture_tally(const PaleyWienerSpace<cplx>&,
                                                  const SSLReport<cplx>&, int, int, int);

}  // namespace graphlim
