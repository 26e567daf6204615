#ifndef ELLW_STRUCTFN_HPP
#define ELLW_STRUCTFN_HPP

#include "ellw/report.hpp"
#include "ellw/types.hpp"

namespace ellw {

// Arguments of the scalar structure functions. r_or_n is the label r of
// F_N(r, x) / Y_N(r, x), equal to the surface label n when used on Sigma_{N,n}.
// x is the ratio variable in log coordinates.
struct StructArgs {
    int N = 2;
    int r_or_n = 0;
    SpectralPoint x{};
    cplx zeta{};
    cplx tau{};
    TruncationPolicy trunc{};
};

// F_N(r, x): prefactor q^{+/-2|r|(1-1/N)} times the k-indexed product of
// Theta_{q^{2N}} ratios (k = 0..r-1 for r > 0, k = 1..|r| for r < 0);
// F_N(0, x) = 1.
cplx f_struct(const StructArgs& args);

// Y_N(r, x): quadratic-exchange structure function; k = 1..r for r > 0 and
// k = 0..|r|-1 for r < 0 over one and the same factor; Y_N(0, x) = 1.
// The k = 0 factor cancels identically, which makes Y_N(-1, x) = 1.
cplx y_struct(const StructArgs& args);

// G_N(n, z): the tau_N product accumulated by iterating the quasi-periodicity
// shift n times; G_N(0, z) = 1. The shift (-p^{1/2})^{+/-k} adds +/-k (tau+1)
// to the log coordinate.
cplx g_struct(const StructArgs& args, SpectralPoint z);

// F_N^{(s)}(n, x) = prod_{i=1..s} F_N(n, x / q^{i-(s+1)/2}).
cplx f_multi(const StructArgs& args, int s);

// Exchange factor of the spin-(i,j) generators:
// prod_{u,v} Y_N(n, q^{v-u} x), u over -(i-1)/2 .. (i-1)/2 step 1, v likewise
// for j. The half-integer shifts are applied as exact rationals in the log.
cplx w_exchange_factor(int N, int i, int j, int n, SpectralPoint x, cplx zeta, cplx tau,
                       const TruncationPolicy& trunc = {});

// G-F duality on Sigma_{N,n}:
//   G_N^{-1}(n, q^{c/2} (-p^{1/2})^n x^{-1}) = F_N(n, q^{c/2} x).
CheckReport check_fg_duality(const SurfaceSpec& surface, const LogParams& params, SpectralPoint x,
                             const TruncationPolicy& trunc = {}, double tol = 1e-9);

// Ratio identity on Sigma_{N,n}:
//   F^{(s)}_N(n, q^c x) / F^{(s)}_N(n, -p^{1/2} x)
//     = prod_{i=1..s} Y_N(n, x / q^{i-(s+1)/2}).
CheckReport check_fy_ratio(const SurfaceSpec& surface, const LogParams& params, int s,
                           SpectralPoint x, const TruncationPolicy& trunc = {}, double tol = 1e-9);

// Y_N(n, x) = 1 on the classical line p = q^{Nh} (tau = classical_tau(N,h,zeta,0)),
// and the (i,j) = (2,3) exchange factor likewise; residual is the larger of
// |Y - 1| and |factor - 1|. For the n = -1 case, which holds at any nome,
// tau_override skips the classical line and evaluates at the given tau.
CheckReport check_abelian(int N, int n, int h, cplx zeta, SpectralPoint x,
                          const TruncationPolicy& trunc = {}, double tol = 1e-9,
                          std::optional<cplx> tau_override = {});

}  // namespace ellw

#endif
