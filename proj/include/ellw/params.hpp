#ifndef ELLW_PARAMS_HPP
#define ELLW_PARAMS_HPP

#include "ellw/types.hpp"

namespace ellw {

// Central charge on Sigma_{N,n}: the principal-log solution of
// (-p^{1/2})^n = q^{-c-N}, i.e. c = -N - n (tau+1) / zeta.
// No 2 pi i / ln q multiples are added; every identity check uses this same
// branch, so a convention mismatch would show up as a residual.
cplx solve_surface_c(int N, int n, cplx zeta, cplx tau);

// tau on the classical line q^{Nh} = p^{1-beta}: tau = N h zeta / (2 (1-beta)).
// beta = 0 enforces p = q^{Nh} exactly in log coordinates.
cplx classical_tau(int N, int h, cplx zeta, double beta);

// Nome shift of the starred matrix, p^* = p q^{-2c}: tau^* = tau - c zeta.
cplx p_star_tau(cplx tau, cplx zeta, cplx c);

// Throws DomainError naming each violated bound: |q| >= 1, |p| >= 1, and when
// need_star, missing c or |p^*| >= 1.
void validate(const LogParams& params, bool need_star = false);

// LogParams with tau moved to the starred nome. Requires c to be set.
LogParams starred(const LogParams& params);

}  // namespace ellw

#endif
