#ifndef ELLW_TYPES_HPP
#define ELLW_TYPES_HPP

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace ellw {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

// All parameters live in logarithmic coordinates:
//   z = e^{i pi xi},  q = e^{i pi zeta},  p = e^{2 i pi tau}.
// Fractional powers are always realized by scaling the log coordinate,
// never by std::pow on an exponentiated value. In particular
//   -p^{1/2} = e^{i pi (tau+1)}  (the +1 carries the sign).

// Exponentiate a log coordinate: e^{i pi u}.
inline cplx expi(cplx u) { return std::exp(cplx(0.0, pi) * u); }

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid or out-of-domain inputs: degenerate parameters, divergent nome or
// product, bad indices, malformed manifests.
struct DomainError : Error {
    using Error::Error;
};

// A parameter bound failed (|q| >= 1, |p| >= 1, |p*| >= 1): the evaluation
// point sits outside the convergence domain. Grid runners resample or refuse
// on this, while plain DomainError aborts.
struct BoundsError : DomainError {
    using DomainError::DomainError;
};

// Adaptive truncation hit its hard cap before reaching tail_eps.
struct TruncationError : Error {
    using Error::Error;
};

// Evaluation refused near a zero of a theta factor or a summand pole.
struct NearPoleError : Error {
    using Error::Error;
};

// Dense solve refused: matrix singular or condition estimate too large.
struct SingularMatrixError : Error {
    using Error::Error;
};

// Richardson extrapolation did not settle within the requested tolerance.
struct ConvergenceError : Error {
    using Error::Error;
};

// A size guard tripped (e.g. three-leg checks above desk-scale rank); grid
// runners report this as a refusal rather than a failure.
struct GuardError : Error {
    using Error::Error;
};

// Tail tolerance and hard caps for every infinite sum/product in the library.
// pole_eps is the relative threshold below which a denominator factor is
// treated as a refused near-pole evaluation rather than extrapolated.
struct TruncationPolicy {
    double tail_eps = 1e-18;
    int max_terms = 400;
    double pole_eps = 1e-13;

    void check() const {
        if (!(tail_eps > 0.0)) throw DomainError("TruncationPolicy: tail_eps must be > 0");
        if (max_terms < 1) throw DomainError("TruncationPolicy: max_terms must be >= 1");
        if (!(pole_eps > 0.0)) throw DomainError("TruncationPolicy: pole_eps must be > 0");
    }
};

// Spectral parameter z = e^{i pi xi}, carried as the log coordinate xi.
struct SpectralPoint {
    cplx xi{};

    cplx z() const { return expi(xi); }
    SpectralPoint shifted(cplx dxi) const { return {xi + dxi}; }
    SpectralPoint inverse() const { return {-xi}; }
};

// Rank N with q = e^{i pi zeta}, p = e^{2 i pi tau}; the central charge c is
// set by a surface solve or by hand when starred matrices are needed.
struct LogParams {
    int N = 2;
    cplx zeta{};
    cplx tau{};
    std::optional<cplx> c{};

    cplx q() const { return expi(zeta); }
    cplx p() const { return expi(2.0 * tau); }
};

// The surface Sigma_{N,n}: (-p^{1/2})^n = q^{-c-N}. h labels the classical
// line p = q^{Nh}; beta deforms it as q^{Nh} = p^{1-beta}.
struct SurfaceSpec {
    int N = 2;
    int n = 0;
    std::optional<int> h{};
    std::optional<double> beta{};
};

}  // namespace ellw

#endif
