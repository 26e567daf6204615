#include <doctest.h>

#include <tuple>

#include "ellw/params.hpp"
#include "ellw/rng.hpp"
#include "ellw/specfun.hpp"
#include "ellw/structfn.hpp"
#include "oracles.hpp"

using namespace ellw;

namespace {
const cplx kZeta(0.05, 0.40);
const cplx kTau(0.10, 0.90);
const SpectralPoint kX{cplx(0.07, -0.11)};

StructArgs args_at(int N, int r, SpectralPoint x = kX) { return {N, r, x, kZeta, kTau, {}}; }

// Theta_{q^{2N}} at a log-coordinate argument, via the fixed-product oracle.
cplx TH(cplx u, cplx zeta, int N) {
    return oracles::big_theta_fixed(expi(u), expi(2.0 * N * zeta));
}
}  // namespace

TEST_CASE("f_struct: base cases, frozen value, telescoping") {
    CHECK(f_struct(args_at(2, 0)) == cplx(1.0));

    // r = 1, N = 2: q Theta(x^-2) Theta(x^2) / (Theta(x^-2 q^2) Theta(x^2 q^2)),
    // frozen from the hand-composed big_theta oracle.
    const cplx v = f_struct(args_at(2, 1));
    CHECK(std::abs(v - cplx(-0.0034263453825301815, -0.2638400748032046)) < 1e-12);
    const cplx x2 = 2.0 * kX.xi;
    const cplx want = expi(kZeta) * TH(-x2, kZeta, 2) * TH(x2, kZeta, 2) /
                      (TH(-x2 + 2.0 * kZeta, kZeta, 2) * TH(x2 + 2.0 * kZeta, kZeta, 2));
    CHECK(std::abs(v - want) / std::abs(want) < 1e-12);

    // Telescoping: F(r+1, x)/F(r, x) equals the single k = r factor.
    Rng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        StructArgs a = args_at(2 + static_cast<int>(rng.word() % 2), 0, draw_xi(rng));
        a.zeta = draw_zeta(rng);
        a.tau = draw_tau(rng);
        for (int r : {1, 2}) {
            a.r_or_n = r;
            const cplx fr = f_struct(a);
            a.r_or_n = r + 1;
            const cplx fr1 = f_struct(a);
            const cplx xx = 2.0 * a.x.xi, zz = 2.0 * a.zeta, pp = 2.0 * a.tau;
            const cplx pk = static_cast<double>(r) * pp;
            const cplx factor = expi(2.0 * (1.0 - 1.0 / a.N) * a.zeta) *
                                TH(-xx - pk, a.zeta, a.N) * TH(xx + pk, a.zeta, a.N) /
                                (TH(-xx + zz - pk, a.zeta, a.N) * TH(xx + zz + pk, a.zeta, a.N));
            CHECK(std::abs(fr1 / fr - factor) / std::abs(factor) < 1e-10);
        }
    }
}

TEST_CASE("y_struct: r = -1 is exactly 1; frozen generic value") {
    CHECK(y_struct(args_at(2, -1)) == cplx(1.0));
    CHECK(y_struct(args_at(3, -1, SpectralPoint{cplx(0.02, 0.13)})) == cplx(1.0));
    CHECK(y_struct(args_at(3, 0)) == cplx(1.0));

    const cplx v = y_struct(args_at(2, 2));
    CHECK(std::abs(v - cplx(56.38500240862331, 187.98575023747975)) / std::abs(v) < 1e-12);

    // Hand-composed oracle for the same value.
    const cplx x2 = 2.0 * kX.xi, z2 = 2.0 * kZeta, p2 = 2.0 * kTau;
    cplx want = 1.0;
    for (int k = 1; k <= 2; ++k) {
        const cplx pk = static_cast<double>(k) * p2;
        const cplx r = TH(x2 - pk, kZeta, 2) / TH(x2 + pk, kZeta, 2);
        want *= r * r * TH(x2 + z2 + pk, kZeta, 2) / TH(x2 + z2 - pk, kZeta, 2) *
                TH(x2 - z2 + pk, kZeta, 2) / TH(x2 - z2 - pk, kZeta, 2);
    }
    CHECK(std::abs(v - want) / std::abs(want) < 1e-12);
}

TEST_CASE("y_struct: inversion consistency Y(n,x) Y(n,1/x) = 1") {
    Rng rng(42);
    for (int trial = 0; trial < 30; ++trial) {
        StructArgs a = args_at(2 + static_cast<int>(rng.word() % 2), 0, draw_xi(rng));
        a.zeta = draw_zeta(rng);
        a.tau = draw_tau(rng);
        for (int n : {-2, 1, 2}) {
            a.r_or_n = n;
            const cplx y1 = y_struct(a);
            StructArgs b = a;
            b.x = a.x.inverse();
            CHECK(std::abs(y1 * y_struct(b) - 1.0) < 1e-9);
        }
    }
}

TEST_CASE("y_struct: near-pole refusal") {
    // Denominator Theta(x^2 p) hits its zero lattice when 2 xi + 2 tau = 2 N zeta.
    StructArgs a = args_at(2, 1, SpectralPoint{2.0 * kZeta - kTau});
    CHECK_THROWS_AS(y_struct(a), NearPoleError);
}

TEST_CASE("g_struct: base cases and single factor") {
    StructArgs a = args_at(2, 0);
    CHECK(g_struct(a, kX) == cplx(1.0));

    a.r_or_n = 1;
    const cplx got = g_struct(a, kX);
    const cplx want = tau_n(SpectralPoint{kX.xi + kZeta / 2.0}, kZeta, 2) *
                      tau_n(SpectralPoint{-kX.xi + kZeta / 2.0}, kZeta, 2);
    CHECK(std::abs(got - want) == 0.0);
}

TEST_CASE("g_struct: backward iteration closes, G(-1,z) G(1, z(-p^1/2)) = 1") {
    Rng rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        StructArgs a = args_at(2 + static_cast<int>(rng.word() % 2), -1, draw_xi(rng));
        a.zeta = draw_zeta(rng);
        a.tau = draw_tau(rng);
        const SpectralPoint z = draw_xi(rng);
        const cplx g_minus = g_struct(a, z);
        a.r_or_n = 1;
        const cplx g_plus = g_struct(a, z.shifted(a.tau + 1.0));
        CHECK(std::abs(g_minus * g_plus - 1.0) < 1e-12);
    }
}

TEST_CASE("f_multi: reductions and 3-factor oracle") {
    StructArgs a = args_at(3, 1);
    CHECK(f_multi(a, 1) == f_struct(a));

    StructArgs zero = args_at(2, 0);
    CHECK(f_multi(zero, 2) == cplx(1.0));

    const cplx got = f_multi(a, 3);
    cplx want = 1.0;
    for (int i = 1; i <= 3; ++i) {
        StructArgs sh = a;
        sh.x = a.x.shifted(-(static_cast<double>(i) - 2.0) * a.zeta);  // (s+1)/2 = 2
        want *= f_struct(sh);
    }
    CHECK(std::abs(got - want) / std::abs(want) < 1e-13);
}

TEST_CASE("w_exchange_factor: single factor, n = -1, 2-factor oracle") {
    const cplx y = w_exchange_factor(2, 1, 1, 2, kX, kZeta, kTau);
    CHECK(y == y_struct(args_at(2, 2)));

    for (auto [i, j] : std::vector<std::pair<int, int>>{{1, 2}, {2, 3}, {3, 3}})
        CHECK(w_exchange_factor(3, i, j, -1, kX, kZeta, kTau) == cplx(1.0));

    const cplx got = w_exchange_factor(2, 2, 1, 1, kX, kZeta, kTau);
    StructArgs a = args_at(2, 1, kX.shifted(kZeta / 2.0));
    StructArgs b = args_at(2, 1, kX.shifted(-kZeta / 2.0));
    const cplx want = y_struct(a) * y_struct(b);
    CHECK(std::abs(got - want) / std::abs(want) < 1e-13);
}

TEST_CASE("check_fg_duality on random surface cells") {
    Rng rng(44);
    SUBCASE("n = 0 is trivial") {
        LogParams params{2, kZeta, kTau, {}};
        const CheckReport rep = check_fg_duality(SurfaceSpec{2, 0}, params, kX);
        CHECK(rep.pass);
        CHECK(rep.residual == 0.0);
    }
    for (auto [N, n] : std::vector<std::pair<int, int>>{{2, 1}, {3, -2}, {3, 3}, {2, -1}}) {
        LogParams params{N, draw_zeta(rng), draw_tau(rng), {}};
        const CheckReport rep = check_fg_duality(SurfaceSpec{N, n}, params, draw_xi(rng));
        CHECK(rep.pass);
        CHECK(rep.residual < 1e-9);
    }
}

TEST_CASE("check_fy_ratio across s") {
    Rng rng(45);
    SUBCASE("s = 1, n = -1: both sides are 1") {
        LogParams params{2, kZeta, kTau, {}};
        const CheckReport rep = check_fy_ratio(SurfaceSpec{2, -1}, params, 1, kX);
        CHECK(rep.pass);
        CHECK(rep.residual < 1e-12);
    }
    for (auto [N, n, s] :
         std::vector<std::tuple<int, int, int>>{std::tuple{2, 2, 1}, std::tuple{3, 1, 2}, std::tuple{3, -2, 3}, std::tuple{2, 3, 2}}) {
        LogParams params{N, draw_zeta(rng), draw_tau(rng), {}};
        const CheckReport rep = check_fy_ratio(SurfaceSpec{N, n}, params, s, draw_xi(rng));
        CHECK(rep.pass);
        CHECK(rep.residual < 1e-9);
    }
}

TEST_CASE("check_abelian: classical line and generic n = -1") {
    Rng rng(46);
    for (auto [N, n, h] : std::vector<std::tuple<int, int, int>>{std::tuple{2, 1, 1}, std::tuple{3, 2, 2}, std::tuple{3, -2, 3}}) {
        const CheckReport rep = check_abelian(N, n, h, draw_zeta(rng), draw_xi(rng));
        CHECK(rep.pass);
        CHECK(rep.residual < 1e-9);
    }
    // n = -1 at a nome far from any classical line.
    const CheckReport rep =
        check_abelian(2, -1, 1, kZeta, kX, {}, 1e-12, cplx(0.13, 1.03));
    CHECK(rep.pass);
    CHECK(rep.residual < 1e-12);
}
