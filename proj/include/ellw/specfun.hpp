#ifndef ELLW_SPECFUN_HPP
#define ELLW_SPECFUN_HPP

#include "ellw/types.hpp"

namespace ellw {

// Value together with the largest intermediate magnitude seen while it was
// accumulated. Near-pole guards compare |value| against pole_eps * scale.
struct Scaled {
    cplx value{1.0, 0.0};
    double scale = 1.0;
};

// Jacobi theta with rational characteristics (g1, g2):
//   sum_m exp( i pi (m+g1)^2 tau + 2 i pi (m+g1)(xi+g2) ).
// Adaptive symmetric window; stops once the next +/-m pair drops below
// tail_eps * (|partial| + 1). Im tau <= 0 is a divergent nome.
cplx theta_char(double g1, double g2, cplx xi, cplx tau, const TruncationPolicy& trunc = {});
Scaled theta_char_scaled(double g1, double g2, cplx xi, cplx tau, const TruncationPolicy& trunc = {});

// Double-index q-Pochhammer product (x; a, b)_inf = prod_{j,k>=0} (1 - x a^j b^k),
// truncated where |x a^j b^k| < tail_eps. Requires |a| < 1 and |b| < 1.
cplx triple_pochhammer(cplx x, cplx a, cplx b, const TruncationPolicy& trunc = {});
Scaled triple_pochhammer_scaled(cplx x, cplx a, cplx b, const TruncationPolicy& trunc = {});

// Theta_t(x) = (x; t)_inf (t/x; t)_inf (t; t)_inf. Vanishes exactly on the
// lattice x = t^m. Requires |t| < 1 and x != 0.
cplx big_theta(cplx x, cplx t, const TruncationPolicy& trunc = {});
Scaled big_theta_scaled(cplx x, cplx t, const TruncationPolicy& trunc = {});

// Theta_{q^{2N}} evaluated at e^{i pi u}; u is the log coordinate of the
// argument. This is the one code path behind every structure-function factor.
Scaled big_theta_log(cplx u, cplx zeta, int N, const TruncationPolicy& trunc = {});

// tau_N(z) = z^{2/N-2} Theta_{q^{2N}}(q z^2) / Theta_{q^{2N}}(q z^{-2}), with
// the prefactor taken from the log coordinate: e^{i pi xi (2/N - 2)}.
// Refuses when the denominator is within pole_eps of a lattice zero.
cplx tau_n(SpectralPoint z, cplx zeta, int N, const TruncationPolicy& trunc = {});

// 1/kappa(z^2): the eight-triple-product ratio normalizing the R-matrix.
// xi2 is the log coordinate of z^2.
cplx kappa_inv(cplx xi2, cplx zeta, cplx tau, int N, const TruncationPolicy& trunc = {});

// Guarded division num/den; throws NearPoleError mentioning `what` when
// |den.value| < pole_eps * den.scale.
cplx guarded_ratio(const Scaled& num, const Scaled& den, const TruncationPolicy& trunc, const char* what);

}  // namespace ellw

#endif
