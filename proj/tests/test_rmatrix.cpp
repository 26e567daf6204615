#include <doctest.h>

#include <sstream>

#include "ellw/params.hpp"
#include "ellw/rmatrix.hpp"
#include "ellw/rng.hpp"
#include "ellw/specfun.hpp"
#include "oracles.hpp"

using namespace ellw;

namespace {
const cplx kZeta(0.05, 0.40);
const cplx kTau(0.10, 0.90);

LegMatrix swap_legs(const LegMatrix& m) {
    const LegMatrix P = permutation_op(2, 1, 2, m.dim);
    return P * m * P;
}
}  // namespace

TEST_CASE("build_heisenberg: N = 2 explicitly, invariants exactly") {
    const HeisenbergSet hs = build_heisenberg(2);
    CHECK(hs.g.mat(0, 0) == cplx(1.0));
    CHECK(std::abs(hs.g.mat(1, 1) - cplx(-1.0)) < 1e-15);
    CHECK(hs.h.mat(0, 1) == cplx(1.0));
    CHECK(hs.h.mat(1, 0) == cplx(1.0));
    CHECK(scaled_residual(hs.h * hs.g, hs.omega * (hs.g * hs.h)) < 1e-15);

    // a = sqrt_g h sqrt_g = antidiag(i, i); a^2 = -1.
    CHECK(std::abs(hs.a.mat(0, 1) - cplx(0.0, 1.0)) < 1e-15);
    CHECK(std::abs(hs.a.mat(1, 0) - cplx(0.0, 1.0)) < 1e-15);
    CHECK(scaled_residual(hs.a * hs.a, cplx(-1.0) * LegMatrix::identity(2, 1)) < 1e-15);

    for (int N = 2; N <= 6; ++N) {
        const HeisenbergSet s = build_heisenberg(N);
        CHECK(scaled_residual(s.h * s.g, s.omega * (s.g * s.h)) < 1e-14);
        CHECK(scaled_residual(matrix_power(s.g, N), LegMatrix::identity(N, 1)) < 1e-14);
        CHECK(scaled_residual(matrix_power(s.h, N), LegMatrix::identity(N, 1)) < 1e-14);
        // a^N = lambda * identity for some scalar lambda.
        const LegMatrix aN = matrix_power(s.a, N);
        const cplx lambda = aN.mat(0, 0);
        CHECK(scaled_residual(aN, lambda * LegMatrix::identity(N, 1)) < 1e-14);
        CHECK(std::abs(std::abs(lambda) - 1.0) < 1e-14);
    }

    CHECK_THROWS_AS(build_heisenberg(1), DomainError);
    CHECK_THROWS_AS(build_heisenberg(7), DomainError);
}

TEST_CASE("build_I: identity case, N = 2 product, group law") {
    for (int N : {2, 3}) {
        const HeisenbergSet hs = build_heisenberg(N);
        CHECK(scaled_residual(build_I(hs, 0, 0), LegMatrix::identity(N, 1)) == 0.0);

        // Inverses are exact.
        for (int a1 = 0; a1 < N; ++a1)
            for (int a2 = 0; a2 < N; ++a2)
                CHECK(scaled_residual(build_I(hs, a1, a2) * build_I_inverse(hs, a1, a2),
                                      LegMatrix::identity(N, 1)) < 1e-15);

        // Group law I_a I_b = omega^{a1 b2} I_{a+b} by brute-force products.
        for (int a1 = 0; a1 < N; ++a1)
            for (int a2 = 0; a2 < N; ++a2)
                for (int b1 = 0; b1 < N; ++b1)
                    for (int b2 = 0; b2 < N; ++b2) {
                        const LegMatrix lhs = build_I(hs, a1, a2) * build_I(hs, b1, b2);
                        const cplx phase = std::pow(hs.omega, a1 * b2);
                        const LegMatrix rhs =
                            phase * build_I(hs, (a1 + b1) % N, (a2 + b2) % N);
                        CHECK(scaled_residual(lhs, rhs) < 1e-13);
                    }
    }
    const HeisenbergSet h2 = build_heisenberg(2);
    // g h = [[0, 1], [-1, 0]].
    const LegMatrix gh = build_I(h2, 1, 1);
    CHECK(std::abs(gh.mat(0, 1) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(gh.mat(1, 0) - cplx(-1.0)) < 1e-15);
    CHECK_THROWS_AS(build_I(h2, 2, 0), DomainError);
}

TEST_CASE("w_coeff: value 1/N at xi = 0, unit sum, theta composition") {
    for (int N : {2, 3}) {
        cplx sum = 0.0;
        for (int a1 = 0; a1 < N; ++a1)
            for (int a2 = 0; a2 < N; ++a2) {
                const cplx w = w_coeff(a1, a2, cplx(0.0), kZeta, kTau, N);
                CHECK(std::abs(w - 1.0 / N) < 1e-13);
                sum += w;
            }
        // N^2 coefficients of 1/N each.
        CHECK(std::abs(sum - static_cast<double>(N)) < 1e-12);
    }

    // Generic point against the fixed-window theta oracle composition.
    const cplx xi(0.1, 0.0), zeta(0.0, 0.3), tau(0.0, 0.9);
    const cplx got = w_coeff(1, 0, xi, zeta, tau, 2);
    const cplx want = oracles::theta_window(1.0, 0.5, xi + zeta / 2.0, tau) /
                      oracles::theta_window(1.0, 0.5, zeta / 2.0, tau) / 2.0;
    CHECK(std::abs(got - want) / std::abs(want) < 1e-13);
}

TEST_CASE("build_r: R(1) = P for N in {2,3,4}") {
    for (int N : {2, 3, 4}) {
        LogParams params{N, kZeta, kTau, {}};
        const LegMatrix r1 = build_r(SpectralPoint{}, params);
        CHECK(scaled_residual(r1, permutation_op(2, 1, 2, N)) < 1e-10);
    }
}

TEST_CASE("build_r_tilde: Z_N symmetry at random points") {
    Rng rng(31);
    for (int N : {2, 3}) {
        LogParams params{N, {}, {}, {}};
        for (int trial = 0; trial < 20; ++trial) {
            params.zeta = draw_zeta(rng);
            params.tau = draw_tau(rng);
            const LegMatrix rt = build_r_tilde(draw_xi(rng), params);
            const double scale = max_abs(rt);
            for (int s = 1; s < N; ++s)
                for (int a = 0; a < N; ++a)
                    for (int b = 0; b < N; ++b)
                        for (int c = 0; c < N; ++c)
                            for (int d = 0; d < N; ++d) {
                                const cplx lhs = rt.mat(((a + s) % N) * N + (b + s) % N,
                                                        ((c + s) % N) * N + (d + s) % N);
                                CHECK(std::abs(lhs - rt.mat(a * N + b, c * N + d)) / scale <
                                      1e-10);
                            }
        }
    }
}

TEST_CASE("build_r: unitarity and antisymmetry at random points") {
    Rng rng(32);
    for (int N : {2, 3}) {
        const HeisenbergSet hs = build_heisenberg(N);
        LogParams params{N, {}, {}, {}};
        for (int trial = 0; trial < 5; ++trial) {
            params.zeta = draw_zeta(rng);
            params.tau = draw_tau(rng);
            const SpectralPoint z = draw_xi(rng);
            const LegMatrix r = build_r(z, params);
            const LegMatrix ri = swap_legs(build_r(z.inverse(), params));
            CHECK(scaled_residual(r * ri, LegMatrix::identity(N, 2)) < 1e-9);

            // R(-z) = omega (g^{-1} x 1) R(z) (g x 1); -z realized as xi + 1.
            const LegMatrix lhs = build_r(z.shifted(1.0), params);
            const LegMatrix g1 = tensor(hs.g, LegMatrix::identity(N, 1));
            const LegMatrix rhs = hs.omega * (inverse(g1) * r * g1);
            CHECK(scaled_residual(lhs, rhs) < 1e-9);
        }
    }
}

TEST_CASE("build_r_hat: starred with c = 0 equals unstarred; definition") {
    LogParams params{2, kZeta, kTau, cplx(0.0)};
    const SpectralPoint z{cplx(0.07, -0.11)};
    const LegMatrix plain = build_r_hat(z, params, false);
    const LegMatrix star0 = build_r_hat(z, params, true);
    CHECK(scaled_residual(star0, plain) == 0.0);

    // Entrywise: Rhat = tau_N(q^{1/2} x^{-1}) R.
    const cplx factor = tau_n(SpectralPoint{kZeta / 2.0 - z.xi}, kZeta, 2);
    const LegMatrix r = build_r(z, params);
    CHECK(scaled_residual(plain, factor * r) == 0.0);

    // Rhat*_12(x) Rhat*_21(x^{-1}) = T * identity.
    LogParams star{3, kZeta, kTau, cplx(0.7, 0.0)};
    const cplx T = tau_n(SpectralPoint{star.zeta / 2.0 - z.xi}, star.zeta, 3) *
                   tau_n(SpectralPoint{star.zeta / 2.0 + z.xi}, star.zeta, 3);
    const LegMatrix a = build_r_hat(z, star, true);
    const LegMatrix b = swap_legs(build_r_hat(z.inverse(), star, true));
    CHECK(scaled_residual(a * b, T * LegMatrix::identity(3, 2)) < 1e-9);

    LogParams no_c{2, kZeta, kTau, {}};
    CHECK_THROWS_AS(build_r_hat(z, no_c, true), DomainError);
}

TEST_CASE("dump_matrix: header plus one line per entry") {
    const HeisenbergSet hs = build_heisenberg(2);
    std::ostringstream os;
    dump_matrix(hs.a, os);
    std::istringstream is(os.str());
    std::string line;
    int lines = 0;
    while (std::getline(is, line)) ++lines;
    CHECK(lines == 1 + 2 * 2);
    CHECK(os.str().substr(0, 1) == "%");
}
