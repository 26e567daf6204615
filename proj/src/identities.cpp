#include "ellw/identities.hpp"

#include <cmath>

#include "ellw/params.hpp"
#include "ellw/rmatrix.hpp"
#include "ellw/rng.hpp"
#include "ellw/specfun.hpp"
#include "ellw/structfn.hpp"

namespace ellw {

namespace {

// R_{21}(x) = P R_{12}(x) P on the two-leg space.
LegMatrix swap_legs(const LegMatrix& m) {
    const LegMatrix P = permutation_op(2, 1, 2, m.dim);
    return P * m * P;
}

LegMatrix a_on_leg1(const HeisenbergSet& hs, int power, double cond_limit = check_cond_limit) {
    return tensor(matrix_power(hs.a, power, cond_limit), LegMatrix::identity(hs.N, 1));
}

void require_points(std::size_t got, std::size_t want, const char* who) {
    if (got != want)
        throw DomainError(std::string(who) + ": expected " + std::to_string(want) +
                          " spectral point(s), got " + std::to_string(got));
}

void require_three_leg_rank(int N, const char* who) {
    if (N > max_rank_three_leg)
        throw GuardError(std::string(who) + ": three-leg checks are guarded to N <= " +
                         std::to_string(max_rank_three_leg));
}

CheckReport base_report(const char* name, const LogParams& params) {
    CheckReport rep;
    rep.name = name;
    rep.N = params.N;
    rep.zeta = params.zeta;
    rep.tau = params.tau;
    rep.c = params.c;
    return rep;
}

LegMatrix random_leg_matrix(int N, int legs, Rng& rng) {
    LegMatrix m = LegMatrix::zero(N, legs);
    for (int r = 0; r < m.size(); ++r)
        for (int c = 0; c < m.size(); ++c)
            m.mat(r, c) = rng.box(-1.0, 1.0, -1.0, 1.0);
    return m;
}

}  // namespace

const char* r_property_name(RProperty kind) {
    switch (kind) {
        case RProperty::ybe: return "ybe";
        case RProperty::unitarity: return "unitarity";
        case RProperty::crossing: return "crossing";
        case RProperty::antisymmetry: return "antisymmetry";
        case RProperty::zn_symmetry: return "zn_symmetry";
        case RProperty::quasi_periodicity: return "quasi_periodicity";
    }
    return "?";
}

CheckReport check_r_property(RProperty kind, const LogParams& params,
                             std::span<const SpectralPoint> points, const TruncationPolicy& trunc,
                             std::optional<double> tol) {
    validate(params);
    const int N = params.N;
    const double tolerance = tol.value_or(kind == RProperty::quasi_periodicity ? 1e-8 : 1e-9);

    CheckReport rep = base_report(r_property_name(kind), params);
    rep.tol = tolerance;
    for (const auto& pt : points) rep.points.push_back(pt.xi);

    double resid = 0.0, scale = 1.0;
    switch (kind) {
        case RProperty::ybe: {
            require_points(points.size(), 2, "ybe");
            require_three_leg_rank(N, "ybe");
            const SpectralPoint z = points[0], w = points[1];
            const LegMatrix r12 = embed(build_r(z, params, trunc), 3, 1, 2);
            const LegMatrix r13 = embed(build_r(w, params, trunc), 3, 1, 3);
            const LegMatrix r23 = embed(build_r(SpectralPoint{w.xi - z.xi}, params, trunc), 3, 2, 3);
            resid = scaled_residual(r12 * r13 * r23, r23 * r13 * r12, &scale);
            break;
        }
        case RProperty::unitarity: {
            require_points(points.size(), 1, "unitarity");
            const SpectralPoint z = points[0];
            const LegMatrix lhs = build_r(z, params, trunc) *
                                  swap_legs(build_r(z.inverse(), params, trunc));
            resid = scaled_residual(lhs, LegMatrix::identity(N, 2), &scale);
            break;
        }
        case RProperty::crossing: {
            require_points(points.size(), 1, "crossing");
            const SpectralPoint z = points[0];
            const LegMatrix lhs = partial_transpose(build_r(z, params, trunc), 2);
            const SpectralPoint arg{-z.xi - static_cast<double>(N) * params.zeta};
            const LegMatrix rhs = partial_transpose(swap_legs(build_r(arg, params, trunc)), 2);
            resid = scaled_residual(lhs * rhs, LegMatrix::identity(N, 2), &scale);
            break;
        }
        case RProperty::antisymmetry: {
            require_points(points.size(), 1, "antisymmetry");
            const SpectralPoint z = points[0];
            const HeisenbergSet hs = build_heisenberg(N);
            const LegMatrix lhs = build_r(z.shifted(1.0), params, trunc);  // -z is xi + 1
            const LegMatrix g1 = tensor(hs.g, LegMatrix::identity(N, 1));
            const LegMatrix rhs =
                hs.omega * (inverse(g1, check_cond_limit) * build_r(z, params, trunc) * g1);
            resid = scaled_residual(lhs, rhs, &scale);
            break;
        }
        case RProperty::zn_symmetry: {
            require_points(points.size(), 1, "zn_symmetry");
            const LegMatrix rt = build_r_tilde(points[0], params, trunc);
            // Entrywise shift of all four Z_N indices by every s.
            double diff = 0.0;
            for (int s = 1; s < N; ++s)
                for (int a = 0; a < N; ++a)
                    for (int b = 0; b < N; ++b)
                        for (int cc = 0; cc < N; ++cc)
                            for (int d = 0; d < N; ++d) {
                                const cplx lhs = rt.mat(((a + s) % N) * N + (b + s) % N,
                                                        ((cc + s) % N) * N + (d + s) % N);
                                const cplx rhs = rt.mat(a * N + b, cc * N + d);
                                diff = std::max(diff, std::abs(lhs - rhs));
                            }
            scale = std::max(1.0, max_abs(rt));
            resid = diff / scale;
            break;
        }
        case RProperty::quasi_periodicity: {
            require_points(points.size(), 1, "quasi_periodicity");
            const SpectralPoint z = points[0];
            const HeisenbergSet hs = build_heisenberg(N);
            const LegMatrix a1 = a_on_leg1(hs, 1);
            // -p^{1/2} z is xi + tau + 1 in log coordinates.
            const LegMatrix lhs = build_r_hat(z.shifted(params.tau + 1.0), params, false, trunc);
            double cond = 0.0;
            const LegMatrix inv =
                inverse(swap_legs(build_r_hat(z.inverse(), params, false, trunc)),
                        check_cond_limit, &cond);
            rep.cond = cond;
            const LegMatrix rhs = inverse(a1, check_cond_limit) * inv * a1;
            resid = scaled_residual(lhs, rhs, &scale);
            break;
        }
    }
    rep.set_residual(resid, scale, tolerance);
    return rep;
}

CheckReport check_r_permutation(const LogParams& params, const TruncationPolicy& trunc,
                                double tol) {
    validate(params);
    CheckReport rep = base_report("r_permutation", params);
    rep.points = {cplx(0.0, 0.0)};
    const LegMatrix r1 = build_r(SpectralPoint{}, params, trunc);
    double scale = 1.0;
    rep.set_residual(scaled_residual(r1, permutation_op(2, 1, 2, params.N), &scale), scale, tol);
    return rep;
}

CheckReport check_tau_properties(const LogParams& params, SpectralPoint z,
                                 const TruncationPolicy& trunc, double tol) {
    validate(params);
    CheckReport rep = base_report("tau_periodicity", params);
    rep.points = {z.xi};
    const cplx t0 = tau_n(z, params.zeta, params.N, trunc);
    const cplx t_per =
        tau_n(z.shifted(static_cast<double>(params.N) * params.zeta), params.zeta, params.N, trunc);
    const cplx t_inv = tau_n(z.inverse(), params.zeta, params.N, trunc);
    double s1 = 1.0, s2 = 1.0;
    const double r1 = scaled_residual(t0, t_per, &s1);
    const double r2 = scaled_residual(t0 * t_inv, cplx(1.0, 0.0), &s2);
    rep.set_residual(std::max(r1, r2), std::max(s1, s2), tol);
    return rep;
}

CheckReport check_t_relations(const LogParams& params, SpectralPoint z_over_w,
                              const TruncationPolicy& trunc, double tol) {
    validate(params, true);
    const int N = params.N;
    CheckReport rep = base_report("t_relations", params);
    rep.points = {z_over_w.xi};

    const SpectralPoint x = z_over_w;
    const cplx T = tau_n(SpectralPoint{params.zeta / 2.0 - x.xi}, params.zeta, N, trunc) *
                   tau_n(SpectralPoint{params.zeta / 2.0 + x.xi}, params.zeta, N, trunc);

    const LegMatrix rs12 = build_r_hat(x, params, true, trunc);
    const LegMatrix rs21 = swap_legs(build_r_hat(x.inverse(), params, true, trunc));
    double s1 = 1.0;
    const double r1 = scaled_residual(rs12 * rs21, T * LegMatrix::identity(N, 2), &s1);

    double cond = 0.0;
    const LegMatrix rh12_inv =
        inverse(build_r_hat(x, params, false, trunc), check_cond_limit, &cond);
    rep.cond = cond;
    const LegMatrix rh21 = swap_legs(build_r_hat(x.inverse(), params, false, trunc));
    double s2 = 1.0;
    const double r2 = scaled_residual(T * rh12_inv, rh21, &s2);

    rep.set_residual(std::max(r1, r2), std::max(s1, s2), tol);
    return rep;
}

CheckReport check_quasi_shift_n(const LogParams& params, int n, SpectralPoint z,
                                const TruncationPolicy& trunc, double tol) {
    if (n == 0) throw DomainError("check_quasi_shift_n: n must be nonzero");
    validate(params);
    CheckReport rep = base_report("quasi_shift", params);
    rep.n = n;
    rep.points = {z.xi};

    const HeisenbergSet hs = build_heisenberg(params.N);
    // z^{-1} (-p^{1/2})^n in log coordinates: -xi + n (tau + 1).
    const SpectralPoint lhs_arg{-z.xi + static_cast<double>(n) * (params.tau + 1.0)};
    double cond1 = 0.0, cond2 = 0.0;
    const LegMatrix lhs =
        inverse(swap_legs(build_r_hat(lhs_arg, params, false, trunc)), check_cond_limit, &cond1);

    StructArgs args{params.N, n, z, params.zeta, params.tau, trunc};
    const cplx G = g_struct(args, z);
    const LegMatrix base =
        inverse(swap_legs(build_r_hat(z.inverse(), params, false, trunc)), check_cond_limit, &cond2);
    const LegMatrix rhs = G * (a_on_leg1(hs, n) * base * a_on_leg1(hs, -n));
    rep.cond = std::max(cond1, cond2);

    double scale = 1.0;
    rep.set_residual(scaled_residual(lhs, rhs, &scale), scale, tol);
    return rep;
}

CheckReport check_lemma_key(const SurfaceSpec& surface, const LogParams& params,
                            SpectralPoint w_over_z, const TruncationPolicy& trunc, double tol) {
    if (surface.N != params.N) throw DomainError("check_lemma_key: surface.N != params.N");
    LogParams on_surface = params;
    on_surface.c = solve_surface_c(surface.N, surface.n, params.zeta, params.tau);
    validate(on_surface);
    const int n = surface.n;
    const cplx c = *on_surface.c;

    CheckReport rep = base_report("lemma_key", on_surface);
    rep.n = n;
    rep.points = {w_over_z.xi};

    const HeisenbergSet hs = build_heisenberg(params.N);
    const cplx half_c = c * params.zeta / 2.0;

    double cond1 = 0.0, cond2 = 0.0;
    const LegMatrix r21_plus =
        swap_legs(build_r_hat(w_over_z.shifted(half_c), params, false, trunc));
    const LegMatrix lhs = partial_transpose(a_on_leg1(hs, -n), 1) *
                          inverse(partial_transpose(r21_plus, 1), check_cond_limit, &cond1) *
                          partial_transpose(a_on_leg1(hs, n), 1);

    StructArgs args{params.N, n, w_over_z, params.zeta, params.tau, trunc};
    const SpectralPoint g_arg{half_c + static_cast<double>(n) * (params.tau + 1.0) - w_over_z.xi};
    const cplx g_inv = 1.0 / g_struct(args, g_arg);
    const LegMatrix r21_minus =
        swap_legs(build_r_hat(w_over_z.shifted(-half_c), params, false, trunc));
    const LegMatrix rhs =
        g_inv * partial_transpose(inverse(r21_minus, check_cond_limit, &cond2), 1);
    rep.cond = std::max(cond1, cond2);

    double scale = 1.0;
    rep.set_residual(scaled_residual(lhs, rhs, &scale), scale, tol);
    return rep;
}

CheckReport check_trace_transposition(int N, int s, std::uint64_t seed, double tol) {
    if (s != 2 && s != 3) throw DomainError("check_trace_transposition: s must be 2 or 3");
    if (N < 2 || N > 4) throw DomainError("check_trace_transposition: N must lie in [2, 4]");

    Rng rng(seed);
    CheckReport rep;
    rep.name = "trace_transposition";
    rep.N = N;
    rep.seed = seed;

    double resid = 0.0, scale = 1.0;
    if (s == 2) {
        const LegMatrix A = random_leg_matrix(N, 2, rng);
        const LegMatrix B = random_leg_matrix(N, 2, rng);
        const LegMatrix Q1 = tensor(random_leg_matrix(N, 1, rng), LegMatrix::identity(N, 1));
        const LegMatrix lhs = partial_trace(A * Q1 * B, 1);
        LegMatrix rhs =
            partial_trace(Q1 * partial_transpose(B, 2) * partial_transpose(A, 2), 1);
        rhs.mat.transposeInPlace();  // the result lives on one leg: t_2 is plain transpose
        resid = scaled_residual(lhs, rhs, &scale);
    } else {
        // Grouping of the generalized identity: beta = legs (1,2), alpha = leg 3.
        const LegMatrix A = random_leg_matrix(N, 3, rng);
        const LegMatrix B = random_leg_matrix(N, 3, rng);
        const LegMatrix Qb = tensor(random_leg_matrix(N, 2, rng), LegMatrix::identity(N, 1));
        const LegMatrix lhs = partial_trace(partial_trace(A * Qb * B, 1), 1);
        LegMatrix rhs = partial_trace(
            partial_trace(Qb * partial_transpose(B, 3) * partial_transpose(A, 3), 1), 1);
        rhs.mat.transposeInPlace();
        resid = scaled_residual(lhs, rhs, &scale);
    }
    rep.set_residual(resid, scale, tol);
    return rep;
}

CheckReport check_transposed_ybe(const LogParams& params, SpectralPoint x1, SpectralPoint x2,
                                 const TruncationPolicy& trunc, double tol) {
    validate(params, true);
    require_three_leg_rank(params.N, "transposed_ybe");
    CheckReport rep = base_report("transposed_ybe", params);
    rep.points = {x1.xi, x2.xi};

    // Legs (1, 2, 3); the spectator alpha sits on leg 3.
    const SpectralPoint mid{x2.xi - x1.xi - static_cast<double>(params.N) * params.zeta};
    const LegMatrix A =
        partial_transpose(embed(build_r_hat(x1, params, true, trunc), 3, 3, 1), 1);
    const LegMatrix B = partial_transpose(
        partial_transpose(embed(build_r_hat(mid, params, true, trunc), 3, 1, 2), 1), 2);
    double cond = 0.0;
    const LegMatrix C = partial_transpose(
        embed(inverse(build_r_hat(x2, params, true, trunc), check_cond_limit, &cond), 3, 3, 2), 2);
    rep.cond = cond;

    double scale = 1.0;
    rep.set_residual(scaled_residual(A * B * C, C * B * A, &scale), scale, tol);
    return rep;
}

LegMatrix build_w_kernel(int s, SpectralPoint z, const SurfaceSpec& surface,
                         const LogParams& params, const TruncationPolicy& trunc) {
    if (s < 1 || s > 3) throw DomainError("build_w_kernel: s must lie in [1, 3]");
    if (surface.N != params.N) throw DomainError("build_w_kernel: surface.N != params.N");
    LogParams on_surface = params;
    on_surface.c = solve_surface_c(surface.N, surface.n, params.zeta, params.tau);
    validate(on_surface, true);

    const int N = params.N;
    LegMatrix kernel = LegMatrix::identity(N, s);
    if (s == 1) return kernel;  // both products are empty

    // z_i = z q^{i-(s+1)/2}; only ratios z_i/z_j = q^{i-j} enter.
    auto z_log = [&](int i) {
        return z.xi + (2.0 * i - (s + 1.0)) / 2.0 * params.zeta;
    };

    LegMatrix perms = LegMatrix::identity(N, s);
    for (int i = 1; i <= s; ++i)
        for (int j = i + 1; j <= s; ++j) perms = perms * permutation_op(s, i, j, N);

    LegMatrix rs = LegMatrix::identity(N, s);
    for (int i = 1; i <= s; ++i)
        for (int j = i + 1; j <= s; ++j) {
            const SpectralPoint arg{-static_cast<double>(N) * params.zeta + z_log(i) - z_log(j)};
            LegMatrix factor = embed(build_r_hat(arg, on_surface, true, trunc), s, i, j);
            factor = partial_transpose(partial_transpose(factor, i), j);
            rs = rs * factor;
        }
    return perms * rs;
}

}  // namespace ellw
