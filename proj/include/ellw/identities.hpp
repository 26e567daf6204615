#ifndef ELLW_IDENTITIES_HPP
#define ELLW_IDENTITIES_HPP

#include <span>
#include <vector>

#include "ellw/legmatrix.hpp"
#include "ellw/report.hpp"
#include "ellw/types.hpp"

namespace ellw {

// Dense solves inside checks are refused above this condition estimate; in
// double precision the identity is untestable that close to a theta zero.
inline constexpr double check_cond_limit = 1e10;

// Three-leg objects are kept at desk scale.
inline constexpr int max_rank_three_leg = 4;

enum class RProperty { ybe, unitarity, crossing, antisymmetry, zn_symmetry, quasi_periodicity };

const char* r_property_name(RProperty kind);

// Evaluates one R-matrix axiom exactly as written and reports the scaled
// residual. ybe needs two spectral points, the others one.
CheckReport check_r_property(RProperty kind, const LogParams& params,
                             std::span<const SpectralPoint> points,
                             const TruncationPolicy& trunc = {}, std::optional<double> tol = {});

// R(1) = P, the permutation operator.
CheckReport check_r_permutation(const LogParams& params, const TruncationPolicy& trunc = {},
                                double tol = 1e-10);

// tau_N periodicity (period q^N) and inversion antisymmetry, pinning the
// Theta convention; residual is the larger of the two.
CheckReport check_tau_properties(const LogParams& params, SpectralPoint z,
                                 const TruncationPolicy& trunc = {}, double tol = 1e-10);

// Scalar relations behind the quadratic exchange proof, at one ratio x = z/w:
//   Rhat*_{12}(x) Rhat*_{21}(x^{-1}) = T,   T Rhat_{12}(x)^{-1} = Rhat_{21}(x^{-1}),
// with T = tau_N(q^{1/2} x^{-1}) tau_N(q^{1/2} x). Needs params.c.
CheckReport check_t_relations(const LogParams& params, SpectralPoint z_over_w,
                              const TruncationPolicy& trunc = {}, double tol = 1e-9);

// Iterated quasi-periodicity:
//   Rhat_{21}(z^{-1} (-p^{1/2})^n)^{-1} = G_N(n,z) a_1^n Rhat_{21}(z^{-1})^{-1} a_1^{-n}.
CheckReport check_quasi_shift_n(const LogParams& params, int n, SpectralPoint z,
                                const TruncationPolicy& trunc = {}, double tol = 1e-8);

// The key conjugation identity on Sigma_{N,n}:
//   (a^{-n})^{t1} (Rhat_{21}(q^{c/2} w/z)^{t1})^{-1} (a^{n})^{t1}
//     = G_N^{-1}(n, q^{c/2} (-p^{1/2})^n z/w) (Rhat_{21}(q^{-c/2} w/z)^{-1})^{t1}.
// c is solved on the surface from params' (zeta, tau).
CheckReport check_lemma_key(const SurfaceSpec& surface, const LogParams& params,
                            SpectralPoint w_over_z, const TruncationPolicy& trunc = {},
                            double tol = 1e-8);

// Trace-transposition identities with pseudo-random matrices: s = 2 is
//   Tr_1(R21 Q1 R'21) = Tr_1(Q1 R'21^{t2} R21^{t2})^{t2};
// s = 3 groups legs (1,2) as the traced slot and transposes the third.
CheckReport check_trace_transposition(int N, int s, std::uint64_t seed, double tol = 1e-12);

// Transposed Yang-Baxter relation for starred matrices on three legs
// (the third leg plays the spectator role alpha). Needs params.c.
CheckReport check_transposed_ybe(const LogParams& params, SpectralPoint x1, SpectralPoint x2,
                                 const TruncationPolicy& trunc = {}, double tol = 1e-8);

// c-number kernel of the higher-spin generators, s <= 3:
//   (prod_i prod_{j>i} P_ij) prod_i prod_{j>i} Rhat*_{ij}(q^{-N} z_i/z_j)^{t_i t_j}
// with z_i = z q^{i-(s+1)/2} and both products ordered i ascending, j
// ascending within i, matching the written-out s = 3 expansion.
LegMatrix build_w_kernel(int s, SpectralPoint z, const SurfaceSpec& surface,
                         const LogParams& params, const TruncationPolicy& trunc = {});

}  // namespace ellw

#endif
