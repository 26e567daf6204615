#include "ellw/structfn.hpp"

#include <cmath>
#include <string>

#include "ellw/params.hpp"
#include "ellw/specfun.hpp"

namespace ellw {

namespace {

void check_args(const StructArgs& a, const char* who) {
    if (a.N < 2) throw DomainError(std::string(who) + ": rank N must be >= 2");
    if (!(a.zeta.imag() > 0.0)) throw DomainError(std::string(who) + ": |q| >= 1");
    if (!(a.tau.imag() > 0.0)) throw DomainError(std::string(who) + ": |p| >= 1");
}

// Theta_{q^{2N}} ratio factor num/den with both arguments in log coordinates.
cplx theta_ratio(cplx u_num, cplx u_den, const StructArgs& a, const char* who) {
    const Scaled num = big_theta_log(u_num, a.zeta, a.N, a.trunc);
    const Scaled den = big_theta_log(u_den, a.zeta, a.N, a.trunc);
    return guarded_ratio(num, den, a.trunc, who);
}

}  // namespace

cplx f_struct(const StructArgs& args) {
    check_args(args, "f_struct");
    const int r = args.r_or_n;
    if (r == 0) return 1.0;

    const cplx x2 = 2.0 * args.x.xi;  // log of x^2
    const cplx z2 = 2.0 * args.zeta;  // log of q^2
    const cplx p2 = 2.0 * args.tau;   // log of p
    cplx val = expi(2.0 * std::abs(r) * (1.0 - 1.0 / args.N) * args.zeta * (r > 0 ? 1.0 : -1.0));
    if (r > 0) {
        for (int k = 0; k < r; ++k) {
            const cplx pk = static_cast<double>(k) * p2;
            val *= theta_ratio(-x2 - pk, -x2 + z2 - pk, args, "f_struct factor");
            val *= theta_ratio(x2 + pk, x2 + z2 + pk, args, "f_struct factor");
        }
    } else {
        for (int k = 1; k <= -r; ++k) {
            const cplx pk = static_cast<double>(k) * p2;
            val *= theta_ratio(-x2 + z2 + pk, -x2 + pk, args, "f_struct factor");
            val *= theta_ratio(x2 + z2 - pk, x2 - pk, args, "f_struct factor");
        }
    }
    return val;
}

cplx y_struct(const StructArgs& args) {
    check_args(args, "y_struct");
    const int r = args.r_or_n;
    if (r == 0) return 1.0;

    const cplx x2 = 2.0 * args.x.xi;
    const cplx z2 = 2.0 * args.zeta;
    const cplx p2 = 2.0 * args.tau;
    const int k_lo = (r > 0) ? 1 : 0;
    const int k_hi = (r > 0) ? r : -r - 1;
    cplx val = 1.0;
    for (int k = k_lo; k <= k_hi; ++k) {
        if (k == 0) continue;  // every factor pairs with itself: identically 1
        const cplx pk = static_cast<double>(k) * p2;
        const cplx sq = theta_ratio(x2 - pk, x2 + pk, args, "y_struct factor");
        val *= sq * sq;
        val *= theta_ratio(x2 + z2 + pk, x2 + z2 - pk, args, "y_struct factor");
        val *= theta_ratio(x2 - z2 + pk, x2 - z2 - pk, args, "y_struct factor");
    }
    return val;
}

cplx g_struct(const StructArgs& args, SpectralPoint z) {
    check_args(args, "g_struct");
    const int n = args.r_or_n;
    if (n == 0) return 1.0;

    const cplx half_q = args.zeta / 2.0;       // log of q^{1/2}
    const cplx mshalf = args.tau + 1.0;        // log of -p^{1/2}
    cplx val = 1.0;
    if (n > 0) {
        for (int k = 0; k < n; ++k) {
            const cplx sh = static_cast<double>(k) * mshalf;
            val *= tau_n(SpectralPoint{z.xi + half_q - sh}, args.zeta, args.N, args.trunc);
            val *= tau_n(SpectralPoint{-z.xi + half_q + sh}, args.zeta, args.N, args.trunc);
        }
    } else {
        for (int k = 1; k <= -n; ++k) {
            const cplx sh = static_cast<double>(k) * mshalf;
            val /= tau_n(SpectralPoint{z.xi + half_q + sh}, args.zeta, args.N, args.trunc);
            val /= tau_n(SpectralPoint{-z.xi + half_q - sh}, args.zeta, args.N, args.trunc);
        }
    }
    return val;
}

cplx f_multi(const StructArgs& args, int s) {
    if (s < 1) throw DomainError("f_multi: s must be >= 1");
    cplx val = 1.0;
    for (int i = 1; i <= s; ++i) {
        StructArgs shifted = args;
        // x / q^{i-(s+1)/2}: the exponent is a half-integer, kept rational.
        const double expo = (2.0 * i - (s + 1.0)) / 2.0;
        shifted.x = args.x.shifted(-expo * args.zeta);
        val *= f_struct(shifted);
    }
    return val;
}

cplx w_exchange_factor(int N, int i, int j, int n, SpectralPoint x, cplx zeta, cplx tau,
                       const TruncationPolicy& trunc) {
    if (i < 1 || j < 1) throw DomainError("w_exchange_factor: i, j must be >= 1");
    StructArgs args{N, n, x, zeta, tau, trunc};
    cplx val = 1.0;
    for (int ui = 0; ui < i; ++ui) {
        for (int vi = 0; vi < j; ++vi) {
            // u = ui - (i-1)/2, v = vi - (j-1)/2; v - u in exact half-integers.
            const int two_vu = (2 * vi - (j - 1)) - (2 * ui - (i - 1));
            args.x = x.shifted(static_cast<double>(two_vu) / 2.0 * zeta);
            val *= y_struct(args);
        }
    }
    return val;
}

CheckReport check_fg_duality(const SurfaceSpec& surface, const LogParams& params, SpectralPoint x,
                             const TruncationPolicy& trunc, double tol) {
    if (surface.N != params.N) throw DomainError("check_fg_duality: surface.N != params.N");
    const cplx c = solve_surface_c(surface.N, surface.n, params.zeta, params.tau);

    StructArgs args{params.N, surface.n, x, params.zeta, params.tau, trunc};
    const cplx g_arg = c * params.zeta / 2.0 + static_cast<double>(surface.n) * (params.tau + 1.0) -
                       x.xi;
    const cplx lhs = 1.0 / g_struct(args, SpectralPoint{g_arg});
    args.x = x.shifted(c * params.zeta / 2.0);
    const cplx rhs = f_struct(args);

    CheckReport rep;
    rep.name = "fg_duality";
    rep.N = params.N;
    rep.n = surface.n;
    rep.zeta = params.zeta;
    rep.tau = params.tau;
    rep.c = c;
    rep.points = {x.xi};
    double scale = 1.0;
    rep.set_residual(scaled_residual(lhs, rhs, &scale), scale, tol);
    return rep;
}

CheckReport check_fy_ratio(const SurfaceSpec& surface, const LogParams& params, int s,
                           SpectralPoint x, const TruncationPolicy& trunc, double tol) {
    if (surface.N != params.N) throw DomainError("check_fy_ratio: surface.N != params.N");
    if (s < 1) throw DomainError("check_fy_ratio: s must be >= 1");
    const cplx c = solve_surface_c(surface.N, surface.n, params.zeta, params.tau);

    StructArgs args{params.N, surface.n, x, params.zeta, params.tau, trunc};
    args.x = x.shifted(c * params.zeta);
    const cplx num = f_multi(args, s);
    args.x = x.shifted(params.tau + 1.0);
    const cplx den = f_multi(args, s);

    cplx prod_y = 1.0;
    for (int i = 1; i <= s; ++i) {
        const double expo = (2.0 * i - (s + 1.0)) / 2.0;
        args.x = x.shifted(-expo * params.zeta);
        prod_y *= y_struct(args);
    }

    CheckReport rep;
    rep.name = "fy_ratio";
    rep.N = params.N;
    rep.n = surface.n;
    rep.zeta = params.zeta;
    rep.tau = params.tau;
    rep.c = c;
    rep.points = {x.xi};
    double scale = 1.0;
    rep.set_residual(scaled_residual(num / den, prod_y, &scale), scale, tol);
    return rep;
}

CheckReport check_abelian(int N, int n, int h, cplx zeta, SpectralPoint x,
                          const TruncationPolicy& trunc, double tol,
                          std::optional<cplx> tau_override) {
    const cplx tau = tau_override ? *tau_override : classical_tau(N, h, zeta, 0.0);
    StructArgs args{N, n, x, zeta, tau, trunc};
    const cplx y = y_struct(args);
    const cplx wf = w_exchange_factor(N, 2, 3, n, x, zeta, tau, trunc);

    CheckReport rep;
    rep.name = "abelian";
    rep.N = N;
    rep.n = n;
    rep.h = h;
    rep.zeta = zeta;
    rep.tau = tau;
    rep.points = {x.xi};
    const double ry = std::abs(y - 1.0);
    const double rw = std::abs(wf - 1.0);
    rep.set_residual(std::max(ry, rw), 1.0, tol);
    return rep;
}

}  // namespace ellw
