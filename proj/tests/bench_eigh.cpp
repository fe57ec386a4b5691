// Scratch benchmark for the dense eigensolver at the sizes the toolkit uses.
#include <chrono>
#include <cstdio>

#include "graphlim/eigh.hpp"
#include "graphlim/graph.hpp"
#include "graphlim/rng.hpp"

using namespace graphlim;

int main() {
    Rng rng(42);

    {
        const int n = 500;
        Matrix<double> a(n, n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i <= j; ++i) a(i, j) = a(j, i) = rng.gaussian();
        auto t0 = std::chrono::steady_clock::now();
        auto dec = eigh(a);
        auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        double nrm = std::max(std::abs(dec.values.front()), std::abs(dec.values.back()));
        std::printf("real n=500: %.2fs residual=%.3e ortho=%.3e scale=%.3e\n", dt,
                    dec.residual_norm, max_dev_from_identity(gram(dec.vectors)), nrm);
    }
    {
        const int n = 500;
        Matrix<cplx> a(n, n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < j; ++i) {
                a(i, j) = cplx(rng.gaussian(), rng.gaussian());
                a(j, i) = std::conj(a(i, j));
            }
        for (int j = 0; j < n; ++j) a(j, j) = rng.gaussian();
        auto t0 = std::chrono::steady_clock::now();
        auto dec = eigh(a);
        auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("cplx n=500: %.2fs residual=%.3e ortho=%.3e\n", dt, dec.residual_norm,
                    max_dev_from_identity(gram(dec.vectors)));
    }
    {
        auto l = laplacian(vertex_substitution(7, 21));
        auto t0 = std::chrono::steady_clock::now();
        auto dec = eigh(l);
        auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        int eq4 = 0, c1323 = 0;
        for (double v : dec.values) {
            if (std::abs(v - 4.0) <= 1e-8) ++eq4;
            if (v <= 6.0 + 1e-9) ++c1323;
        }
        std::printf("subst n=2688: %.2fs residual=%.3e ortho=%.3e  #|v-4|<=1e-8=%d  dimPW6=%d\n",
                    dt, dec.residual_norm, max_dev_from_identity(gram(dec.vectors)), eq4, c1323);
    }
    return 0;
}
