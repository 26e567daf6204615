#ifndef ELLW_RMATRIX_HPP
#define ELLW_RMATRIX_HPP

#include "ellw/legmatrix.hpp"
#include "ellw/types.hpp"

namespace ellw {

// Desk-scale guard on the rank.
inline constexpr int max_rank = 6;

// Clock-and-shift generators of the finite Heisenberg group, indices 0..N-1:
//   g_ij = omega^i delta_ij,  h_ij = delta_{i+1,j mod N},  omega = e^{2 i pi / N},
// with hg = omega gh and g^N = h^N = 1. sqrt_g = diag(e^{i pi j / N}) is the
// principal branch used consistently in the gauge transform and in a.
// a = sqrt_g h sqrt_g satisfies a^N = lambda * identity.
struct HeisenbergSet {
    int N = 0;
    cplx omega{};
    LegMatrix g, h, sqrt_g, a;
};

HeisenbergSet build_heisenberg(int N);

// I_{(a1,a2)} = g^{a2} h^{a1}, 0 <= a1, a2 < N.
LegMatrix build_I(const HeisenbergSet& hs, int a1, int a2);
// Exact inverse h^{-a1} g^{-a2}, built entrywise.
LegMatrix build_I_inverse(const HeisenbergSet& hs, int a1, int a2);

// Weight W_{(a1,a2)}(xi, zeta, tau): theta ratio with characteristics
// (1/2 + a1/N, 1/2 + a2/N) at xi + zeta/N over zeta/N, divided by N.
cplx w_coeff(int a1, int a2, cplx xi, cplx zeta, cplx tau, int N,
             const TruncationPolicy& trunc = {});

// The Z_N-symmetric matrix: prefactor z^{2/N-2} kappa^{-1}(z^2)
// theta[1/2,1/2](zeta)/theta[1/2,1/2](xi+zeta) times
// sum_{(a1,a2)} W_{(a1,a2)} I_{(a1,a2)} (x) I_{(a1,a2)}^{-1}.
LegMatrix build_r_tilde(SpectralPoint z, const LogParams& params,
                        const TruncationPolicy& trunc = {});

// Gauge-transformed matrix (sqrt_g (x) sqrt_g) r_tilde (sqrt_g (x) sqrt_g)^{-1};
// satisfies Yang-Baxter, unitarity, crossing, antisymmetry, quasi-periodicity.
LegMatrix build_r(SpectralPoint z, const LogParams& params, const TruncationPolicy& trunc = {});

// tau_N(q^{1/2} x^{-1}) R(x), evaluated at nome p, or at p^* = p q^{-2c} when
// starred (requires params.c).
LegMatrix build_r_hat(SpectralPoint z, const LogParams& params, bool starred,
                      const TruncationPolicy& trunc = {});

}  // namespace ellw

#endif
