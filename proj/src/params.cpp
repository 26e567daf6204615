#include "ellw/params.hpp"

#include <cmath>
#include <sstream>

namespace ellw {

cplx solve_surface_c(int N, int n, cplx zeta, cplx tau) {
    if (zeta == cplx(0.0, 0.0)) throw DomainError("solve_surface_c: zeta = 0 is degenerate");
    return -static_cast<double>(N) - static_cast<double>(n) * (tau + 1.0) / zeta;
}

cplx classical_tau(int N, int h, cplx zeta, double beta) {
    if (h == 0) throw DomainError("classical_tau: h = 0 is degenerate");
    if (beta == 1.0) throw DomainError("classical_tau: beta = 1 is degenerate");
    return static_cast<double>(N) * static_cast<double>(h) * zeta / (2.0 * (1.0 - beta));
}

cplx p_star_tau(cplx tau, cplx zeta, cplx c) { return tau - c * zeta; }

void validate(const LogParams& params, bool need_star) {
    std::ostringstream bad;
    if (params.N < 2) bad << " N<2";
    // |q| = e^{-pi Im zeta}, |p| = e^{-2 pi Im tau}: the bounds are sign
    // conditions on the imaginary parts.
    if (!(params.zeta.imag() > 0.0)) bad << " |q|>=1";
    if (!(params.tau.imag() > 0.0)) bad << " |p|>=1";
    if (need_star) {
        if (!params.c) {
            bad << " c-unset";
        } else {
            const cplx ts = p_star_tau(params.tau, params.zeta, *params.c);
            if (!(ts.imag() > 0.0)) bad << " |p*|>=1";
        }
    }
    if (!std::isfinite(params.zeta.real()) || !std::isfinite(params.zeta.imag()) ||
        !std::isfinite(params.tau.real()) || !std::isfinite(params.tau.imag()))
        bad << " non-finite";
    if (bad.tellp() > 0) throw BoundsError("validate: violated bounds:" + bad.str());
}

LogParams starred(const LogParams& params) {
    validate(params, true);
    LogParams s = params;
    s.tau = p_star_tau(params.tau, params.zeta, *params.c);
    return s;
}

}  // namespace ellw
