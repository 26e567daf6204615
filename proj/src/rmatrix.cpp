#include "ellw/rmatrix.hpp"

#include <cmath>

#include "ellw/params.hpp"
#include "ellw/specfun.hpp"

namespace ellw {

namespace {

void check_rank(int N, const char* who) {
    if (N < 2 || N > max_rank)
        throw DomainError(std::string(who) + ": rank N must lie in [2, " +
                          std::to_string(max_rank) + "]");
}

}  // namespace

HeisenbergSet build_heisenberg(int N) {
    check_rank(N, "build_heisenberg");
    HeisenbergSet hs;
    hs.N = N;
    hs.omega = std::polar(1.0, 2.0 * pi / N);
    hs.g = LegMatrix::zero(N, 1);
    hs.h = LegMatrix::zero(N, 1);
    hs.sqrt_g = LegMatrix::zero(N, 1);
    for (int j = 0; j < N; ++j) {
        hs.g.mat(j, j) = std::polar(1.0, 2.0 * pi * j / N);
        hs.sqrt_g.mat(j, j) = std::polar(1.0, pi * j / N);
        hs.h.mat(j, (j + 1) % N) = 1.0;
    }
    hs.a = hs.sqrt_g * hs.h * hs.sqrt_g;
    return hs;
}

LegMatrix build_I(const HeisenbergSet& hs, int a1, int a2) {
    const int N = hs.N;
    if (a1 < 0 || a1 >= N || a2 < 0 || a2 >= N)
        throw DomainError("build_I: indices must satisfy 0 <= a1, a2 < N");
    // (g^{a2} h^{a1})_{ij} = omega^{i a2} delta_{i+a1, j mod N}
    LegMatrix out = LegMatrix::zero(N, 1);
    for (int i = 0; i < N; ++i)
        out.mat(i, (i + a1) % N) = std::polar(1.0, 2.0 * pi * i * a2 / N);
    return out;
}

LegMatrix build_I_inverse(const HeisenbergSet& hs, int a1, int a2) {
    const int N = hs.N;
    if (a1 < 0 || a1 >= N || a2 < 0 || a2 >= N)
        throw DomainError("build_I_inverse: indices must satisfy 0 <= a1, a2 < N");
    // (h^{-a1} g^{-a2})_{ij} = omega^{-j a2} delta_{i, j+a1 mod N}
    LegMatrix out = LegMatrix::zero(N, 1);
    for (int j = 0; j < N; ++j)
        out.mat((j + a1) % N, j) = std::polar(1.0, -2.0 * pi * j * a2 / N);
    return out;
}

cplx w_coeff(int a1, int a2, cplx xi, cplx zeta, cplx tau, int N, const TruncationPolicy& trunc) {
    check_rank(N, "w_coeff");
    if (a1 < 0 || a1 >= N || a2 < 0 || a2 >= N)
        throw DomainError("w_coeff: indices must satisfy 0 <= a1, a2 < N");
    const double g1 = 0.5 + static_cast<double>(a1) / N;
    const double g2 = 0.5 + static_cast<double>(a2) / N;
    const Scaled num = theta_char_scaled(g1, g2, xi + zeta / static_cast<double>(N), tau, trunc);
    const Scaled den = theta_char_scaled(g1, g2, zeta / static_cast<double>(N), tau, trunc);
    return guarded_ratio(num, den, trunc, "w_coeff") / static_cast<double>(N);
}

LegMatrix build_r_tilde(SpectralPoint z, const LogParams& params, const TruncationPolicy& trunc) {
    check_rank(params.N, "build_r_tilde");
    validate(params);
    const int N = params.N;
    const cplx xi = z.xi, zeta = params.zeta, tau = params.tau;

    const Scaled th_num = theta_char_scaled(0.5, 0.5, zeta, tau, trunc);
    const Scaled th_den = theta_char_scaled(0.5, 0.5, xi + zeta, tau, trunc);
    const cplx pref = expi(xi * (2.0 / N - 2.0)) * kappa_inv(2.0 * xi, zeta, tau, N, trunc) *
                      guarded_ratio(th_num, th_den, trunc, "build_r_tilde theta prefactor");

    const HeisenbergSet hs = build_heisenberg(N);
    LegMatrix sum = LegMatrix::zero(N, 2);
    for (int a1 = 0; a1 < N; ++a1)
        for (int a2 = 0; a2 < N; ++a2) {
            const cplx w = w_coeff(a1, a2, xi, zeta, tau, N, trunc);
            sum = sum + w * tensor(build_I(hs, a1, a2), build_I_inverse(hs, a1, a2));
        }
    return pref * sum;
}

LegMatrix build_r(SpectralPoint z, const LogParams& params, const TruncationPolicy& trunc) {
    const HeisenbergSet hs = build_heisenberg(params.N);
    const LegMatrix gg = tensor(hs.sqrt_g, hs.sqrt_g);
    // sqrt_g is diagonal unitary: its inverse is the conjugate, exact.
    LegMatrix gg_inv = gg;
    gg_inv.mat = gg.mat.conjugate();
    return gg * build_r_tilde(z, params, trunc) * gg_inv;
}

LegMatrix build_r_hat(SpectralPoint z, const LogParams& params, bool starred,
                      const TruncationPolicy& trunc) {
    LogParams eff = params;
    if (starred) {
        if (!params.c) throw DomainError("build_r_hat: starred matrix requested but c is not set");
        eff = ellw::starred(params);
    }
    validate(eff);
    // tau_N carries no p dependence, so the starred factor is the same.
    const cplx factor = tau_n(SpectralPoint{eff.zeta / 2.0 - z.xi}, eff.zeta, eff.N, trunc);
    return factor * build_r(z, eff, trunc);
}

}  // namespace ellw
