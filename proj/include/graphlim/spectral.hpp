#pragma once

#include <cstdint>
#include <vector>

#include "graphlim/eigh.hpp"
#include "graphlim/graph.hpp"
#include "graphlim/matrix.hpp"

namespace graphlim {

/// Graph Fourier transform: the Laplacian eigenbasis ordered by ascending
/// eigenvalue, together with its tolerance-clustered eigenvalue groups.
struct Spectrum {
    EigenDecomposition<double> eigen;
    std::vector<EigenvalueCluster> clusters;
    double cluster_tol = 1e-8;
};

Spectrum graph_fourier(const Graph& g, double cluster_tol = 1e-8,
                       const EighOptions& opts = {});

/// Span of the Laplacian eigenvectors with eigenvalue at most omega,
/// assembled whole-cluster (a cluster belongs iff its representative is
/// at most omega + tol).
template <typename T>
struct PaleyWienerSpace {
    double omega = 0.0;
    Matrix<T> basis;             // n x dim, column-orthonormal
    std::vector<double> values;  // eigenvalue of each basis column, ascending
    std::size_t dim = 0;
};

PaleyWienerSpace<double> pw_space(const Spectrum& spec, double omega, double tol = 1e-9);

/// Builds a PW space from an explicit orthonormal eigenbasis (any column
/// order); columns with eigenvalue <= omega + tol are kept, sorted ascending.
template <typename T>
PaleyWienerSpace<T> pw_space_from_basis(const Matrix<T>& basis, std::span<const double> values,
                                        double omega, double tol = 1e-9);

/// Vertex truncation set.
struct SpatialMask {
    std::vector<std::uint32_t> vertices;
};

SpatialMask block_mask(int N, int m, int block);

/// Eigenstructure of the spatio-spectral limiting operator PQ, computed
/// through the Hermitian compression B^H Q B whose nonzero spectrum agrees
/// with PQ's. Eigenvalues descending in [0,1]; eigenvectors mapped back to
/// unit vectors in the PW space.
template <typename T>
struct SSLReport {
    std::vector<double> values;  // descending, one per PW dimension
    Matrix<T> vectors;           // n x dim, embedded in l^2(G)
    std::size_t count_one = 0;   // values >= 1 - 1e-8
    std::size_t count_mid = 0;   // values strictly inside (1/2, 1) at the same tolerance
    std::size_t count_small = 0; // values <= 1/2 + 1e-8
};

template <typename T>
SSLReport<T> ssl_eigen(const PaleyWienerSpace<T>& pw, const SpatialMask& mask,
                       const EighOptions& opts = {});

/// ||Q f||^2 / ||f||^2.
template <typename T>
double concentration(std::span<const T> f, const SpatialMask& mask);

extern template PaleyWienerSpace<double> pw_space_from_basis(const Matrix<double>&,
                                                             std::span<const double>, double,
                                                             double);
extern template PaleyWienerSpace<cplx> pw_space_from_basis(const Matrix<cplx>&,
                                                           std::span<const double>, double,
                                                           double);
extern template SSLReport<double> ssl_eigen(const PaleyWienerSpace<double>&, const SpatialMask&,
                                            const EighOptions&);
extern template SSLReport<cplx> ssl_eigen(const PaleyWienerSpace<cplx>&, const SpatialMask&,
                                          const EighOptions&);
extern template double concentration(std::span<const double>, const SpatialMask&);
extern template double concentration(std::span<const cplx>, const SpatialMask&);

}  // namespace graphlim
