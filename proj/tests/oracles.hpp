// Test-only brute-force oracles, independent of the library's evaluation
// paths: fixed-window sums and fixed-count products with no adaptivity, plus
// raw index-loop tensor contractions.
#ifndef ELLW_TEST_ORACLES_HPP
#define ELLW_TEST_ORACLES_HPP

#include <complex>
#include <vector>

#include "ellw/types.hpp"

namespace oracles {

using ellw::cplx;
using ellw::pi;

// Direct theta sum over a fixed symmetric window.
inline cplx theta_window(double g1, double g2, cplx xi, cplx tau, int window = 200) {
    cplx sum = 0.0;
    for (int m = -window; m <= window; ++m) {
        const cplx mg = static_cast<double>(m) + g1;
        sum += std::exp(cplx(0.0, pi) * (mg * mg * tau + 2.0 * mg * (xi + g2)));
    }
    return sum;
}

// Fixed 60x60 double product.
inline cplx triple_pochhammer_grid(cplx x, cplx a, cplx b, int nj = 60, int nk = 60) {
    cplx val = 1.0;
    cplx aj = 1.0;
    for (int j = 0; j < nj; ++j) {
        cplx bk = 1.0;
        for (int k = 0; k < nk; ++k) {
            val *= (1.0 - x * aj * bk);
            bk *= b;
        }
        aj *= a;
    }
    return val;
}

// Fixed 200-term single products.
inline cplx poch_fixed(cplx x, cplx t, int terms = 200) {
    cplx val = 1.0;
    cplx xt = x;
    for (int k = 0; k < terms; ++k) {
        val *= (1.0 - xt);
        xt *= t;
    }
    return val;
}

inline cplx big_theta_fixed(cplx x, cplx t, int terms = 200) {
    return poch_fixed(x, t, terms) * poch_fixed(t / x, t, terms) * poch_fixed(t, t, terms);
}

// Dense matrix as nested vectors for raw index arithmetic, flat row-major on
// s legs of dimension N, leg 1 slowest.
using Flat = std::vector<std::vector<cplx>>;

inline int opow(int b, int e) {
    int r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

// Apply an s-leg operator built by placing M (two legs) on slots (i, j) to a
// vector, by explicit digit bookkeeping.
inline std::vector<cplx> embed_apply(const Flat& m2, int N, int s, int i, int j,
                                     const std::vector<cplx>& v) {
    const int n = opow(N, s);
    std::vector<cplx> out(n, 0.0);
    std::vector<int> rd(s), cd(s);
    for (int r = 0; r < n; ++r) {
        for (int l = 0; l < s; ++l) rd[l] = (r / opow(N, s - 1 - l)) % N;
        for (int c = 0; c < n; ++c) {
            for (int l = 0; l < s; ++l) cd[l] = (c / opow(N, s - 1 - l)) % N;
            bool diag = true;
            for (int l = 0; l < s; ++l)
                if (l != i - 1 && l != j - 1 && rd[l] != cd[l]) diag = false;
            if (!diag) continue;
            out[r] += m2[rd[i - 1] * N + rd[j - 1]][cd[i - 1] * N + cd[j - 1]] * v[c];
        }
    }
    return out;
}

}  // namespace oracles

#endif
