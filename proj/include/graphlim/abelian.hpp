#pragma once

#include <cstdint>
#include <vector>

#include "graphlim/matrix.hpp"

namespace graphlim {

/// Finite abelian group as a product of cycles; elements are mixed-radix
/// tuples of residues, flattened with the first factor most significant.
/// The dual group is represented by the same tuples.
struct AbelianGroup {
    std::vector<int> factors;

    explicit AbelianGroup(std::vector<int> fs);
    std::size_t order() const;
    std::vector<int> tuple(std::size_t index) const;
    std::size_t index(std::span<const int> tuple) const;
    std::size_t negate(std::size_t index) const;
};

/// Unitary character table F(s, sigma), the tensor product of normalized
/// cycle exponentials. |F(s, sigma)|^2 = 1/|G| entrywise.
Matrix<cplx> abelian_fourier(const AbelianGroup& g);

/// Element set with s in S iff -s in S.
struct SymmetricSubset {
    std::vector<std::uint32_t> elements;  // sorted, unique
};

SymmetricSubset make_symmetric_subset(const AbelianGroup& g,
                                      std::span<const std::uint32_t> elements);

/// Eigenpairs of PQ where P projects onto the Fourier vectors indexed by
/// Sigma and Q truncates to S, via the |Sigma| x |Sigma| Hermitian
/// compression F_Sigma^H 1_S F_Sigma.
struct AbelianPQResult {
    std::vector<double> values;  // descending, |Sigma| of them
    Matrix<cplx> vectors;        // |G| x |Sigma|, unit columns in range(P)
    bool rank_warning = false;   // |S| < |Sigma|: rank may drop
};

AbelianPQResult abelian_pq_eigen(const AbelianGroup& g, const SymmetricSubset& s,
                                 const SymmetricSubset& sigma);

/// The spectral accumulation map sigma -> sum_nu mu_nu |(F^H phi_nu)(sigma)|^2
/// together with its max deviation from (|S|/|G|) 1_Sigma. Zero modes are
/// excluded from the sum; they contribute nothing.
struct AccumulationReport {
    std::vector<double> accumulation;  // indexed by sigma
    double max_deviation = 0.0;
    double expected = 0.0;  // |S|/|G|
};

AccumulationReport spectral_accumulation(const AbelianGroup& g, const SymmetricSubset& s,
                                         const SymmetricSubset& sigma);

}  // namespace graphlim
