#ifndef ELLW_POISSON_HPP
#define ELLW_POISSON_HPP

#include <vector>

#include "ellw/report.hpp"
#include "ellw/types.hpp"

namespace ellw {

// Arguments of the classical structure function f_h. n is the surface label
// (it enters through the floor coefficients E(n/2), E((n+1)/2)); the parity
// of h selects the branch. x is the ratio variable in log coordinates.
struct PoissonArgs {
    int N = 2;
    int n = 0;
    int h = 1;
    SpectralPoint x{};
    cplx zeta{};
    TruncationPolicy trunc{};
};

// Poisson structure function f_h(x). Both branches are antisymmetrized by
// -(x <-> x^{-1}); E(.) is floor, under which the n = -1 degeneracy matches
// Y_N(-1, .) = 1 on both branches. The l-sum truncates when the increment
// falls below tail_eps * running scale; summand poles within pole_eps are
// refused with the lattice point named.
cplx f_h(const PoissonArgs& args);

// Bracket factor of the spin-(i,j) Poisson bracket:
// sum_{u,v} f_h(q^{v-u} x), u over -(i-1)/2 .. (i-1)/2 step 1, v likewise.
cplx bracket_factor(int N, int i, int j, int n, int h, SpectralPoint x, cplx zeta,
                    const TruncationPolicy& trunc = {});

// Extrapolation diagnostics of the finite-difference limit.
struct PoissonDiagnostics {
    std::vector<double> betas;
    std::vector<cplx> d_minus;       // (1 - Y^{-1}) / beta
    std::vector<cplx> d_plus;        // (Y - 1) / beta
    cplx extrapolated_minus{};       // Richardson limit of d_minus
    cplx extrapolated_plus{};        // Richardson limit of d_plus
    cplx f_h_value{};
    double alt_residual = 0.0;       // residual of the (Y-1)/beta normalization
    double tableau_step = 0.0;       // |last - previous| diagonal entries, scaled
    std::vector<double> second_difference_ratios;  // expect ~ the step ratio
};

// Certifies the classical limit: for each beta, tau(beta) = classical_tau,
// D(beta) = (1 - Y_N(n, x; tau(beta))^{-1}) / beta, Richardson-extrapolated to
// beta -> 0 and compared against f_h(x). Default betas follow ratio-2 steps;
// a non-settling tableau (successive extrapolants differing by more than
// 10 x tol, scaled) raises ConvergenceError.
CheckReport check_poisson_limit(int N, int n, int h, SpectralPoint x, cplx zeta,
                                const std::vector<double>& beta_seq = {1e-2, 5e-3, 2.5e-3},
                                const TruncationPolicy& trunc = {}, double tol = 1e-5,
                                PoissonDiagnostics* diag = nullptr);

}  // namespace ellw

#endif
