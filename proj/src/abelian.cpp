#include "graphlim/abelian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "graphlim/eigh.hpp"

namespace graphlim {

AbelianGroup::AbelianGroup(std::vector<int> fs) : factors(std::move(fs)) {
    if (factors.empty()) throw std::invalid_argument("AbelianGroup: no factors");
    for (int f : factors)
        if (f < 2) throw std::invalid_argument("AbelianGroup: factors must be at least 2");
}

std::size_t AbelianGroup::order() const {
    std::size_t o = 1;
    for (int f : factors) o *= std::size_t(f);
    return o;
}

std::vector<int> AbelianGroup::tuple(std::size_t index) const {
    std::vector<int> t(factors.size());
    for (std::size_t i = factors.size(); i-- > 0;) {
        t[i] = int(index % std::size_t(factors[i]));
        index /= std::size_t(factors[i]);
    }
    return t;
}

std::size_t AbelianGroup::index(std::span<const int> t) const {
    if (t.size() != factors.size()) throw std::invalid_argument("AbelianGroup: tuple length");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const int r = ((t[i] % factors[i]) + factors[i]) % factors[i];
        idx = idx * std::size_t(factors[i]) + std::size_t(r);
    }
    return idx;
}

std::size_t AbelianGroup::negate(std::size_t idx) const {
    auto t = tuple(idx);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = (factors[i] - t[i]) % factors[i];
    return index(t);
}

Matrix<cplx> abelian_fourier(const AbelianGroup& g) {
    const std::size_t n = g.order();
    Matrix<cplx> f(n, n);
    const double scale = 1.0 / std::sqrt(double(n));
    for (std::size_t sigma = 0; sigma < n; ++sigma) {
        const auto st = g.tuple(sigma);
        for (std::size_t s = 0; s < n; ++s) {
            const auto tt = g.tuple(s);
            double angle = 0.0;
            for (std::size_t i = 0; i < g.factors.size(); ++i)
                angle += double(tt[i]) * double(st[i]) / double(g.factors[i]);
            f(s, sigma) = std::polar(scale, 2.0 * std::numbers::pi * angle);
        }
    }
    return f;
}

SymmetricSubset make_symmetric_subset(const AbelianGroup& g,
                                      std::span<const std::uint32_t> elements) {
    std::vector<std::uint32_t> e(elements.begin(), elements.end());
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    if (e.empty()) throw std::invalid_argument("SymmetricSubset: empty set");
    for (std::uint32_t x : e) {
        if (x >= g.order()) throw std::invalid_argument("SymmetricSubset: element out of range");
        if (!std::binary_search(e.begin(), e.end(), std::uint32_t(g.negate(x))))
            throw std::invalid_argument("SymmetricSubset: set is not symmetric");
    }
    return SymmetricSubset{std::move(e)};
}

AbelianPQResult abelian_pq_eigen(const AbelianGroup& g, const SymmetricSubset& s,
                                 const SymmetricSubset& sigma) {
    const Matrix<cplx> f = abelian_fourier(g);
    const std::size_t nsig = sigma.elements.size();

    // Rows of F_Sigma restricted to S; compression C = F_Sigma^H 1_S F_Sigma.
    Matrix<cplx> fs(s.elements.size(), nsig);
    for (std::size_t j = 0; j < nsig; ++j)
        for (std::size_t r = 0; r < s.elements.size(); ++r)
            fs(r, j) = f(s.elements[r], sigma.elements[j]);
    auto dec = eigh(gram(fs));

    AbelianPQResult out;
    out.rank_warning = s.elements.size() < nsig;
    out.values.assign(dec.values.rbegin(), dec.values.rend());
    out.vectors = Matrix<cplx>(g.order(), nsig);
    for (std::size_t j = 0; j < nsig; ++j) {
        const auto w = dec.vectors.col_span(nsig - 1 - j);
        cplx* col = out.vectors.col(j);
        for (std::size_t k = 0; k < nsig; ++k) {
            const cplx wk = w[k];
            for (std::size_t i = 0; i < g.order(); ++i) col[i] += f(i, sigma.elements[k]) * wk;
        }
    }
    return out;
}

AccumulationReport spectral_accumulation(const AbelianGroup& g, const SymmetricSubset& s,
                                         const SymmetricSubset& sigma) {
    const auto pq = abelian_pq_eigen(g, s, sigma);
    const Matrix<cplx> f = abelian_fourier(g);
    const std::size_t n = g.order();

    AccumulationReport rep;
    rep.expected = double(s.elements.size()) / double(n);
    rep.accumulation.assign(n, 0.0);
    for (std::size_t j = 0; j < pq.values.size(); ++j) {
        if (pq.values[j] <= 1e-12) continue;  // zero mode
        const auto hat = adjoint_matvec(f, std::span<const cplx>(pq.vectors.col_span(j)));
        for (std::size_t sg = 0; sg < n; ++sg)
            rep.accumulation[sg] += pq.values[j] * std::norm(hat[sg]);
    }
    for (std::size_t sg = 0; sg < n; ++sg) {
        const bool in_sigma = std::binary_search(sigma.elements.begin(), sigma.elements.end(),
                                                 std::uint32_t(sg));
        const double want = in_sigma ? rep.expected : 0.0;
        rep.max_deviation = std::max(rep.max_deviation, std::abs(rep.accumulation[sg] - want));
    }
    return rep;
}

}  // namespace graphlim
