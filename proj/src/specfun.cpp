#include "ellw/specfun.hpp"

#include <cmath>
#include <sstream>

namespace ellw {

namespace {

std::string fmt_cplx(cplx v) {
    std::ostringstream os;
    os << v.real() << (v.imag() < 0 ? "" : "+") << v.imag() << "i";
    return os.str();
}

// Single-index product (x; t)_inf, accumulating into a running Scaled.
void poch_into(Scaled& acc, cplx x, cplx t, const TruncationPolicy& trunc) {
    cplx term = x;
    for (int k = 0;; ++k) {
        if (std::abs(term) < trunc.tail_eps) return;
        if (k >= trunc.max_terms)
            throw TruncationError("q-Pochhammer product exceeded max_terms = " +
                                  std::to_string(trunc.max_terms));
        acc.value *= (1.0 - term);
        acc.scale = std::max(acc.scale, std::abs(acc.value));
        term *= t;
    }
}

}  // namespace

Scaled theta_char_scaled(double g1, double g2, cplx xi, cplx tau, const TruncationPolicy& trunc) {
    trunc.check();
    if (!(tau.imag() > 0.0))
        throw DomainError("theta_char: Im tau <= 0, the q-series diverges");

    auto term = [&](long m) {
        const cplx mg = static_cast<double>(m) + g1;
        return std::exp(cplx(0.0, pi) * (mg * mg * tau + 2.0 * mg * (xi + g2)));
    };

    Scaled out;
    out.value = term(0);
    out.scale = std::abs(out.value);
    for (long m = 1;; ++m) {
        const cplx tp = term(m);
        const cplx tm = term(-m);
        const double pair = std::abs(tp) + std::abs(tm);
        if (pair < trunc.tail_eps * (std::abs(out.value) + 1.0)) break;
        if (m > trunc.max_terms)
            throw TruncationError("theta_char window exceeded max_terms = " +
                                  std::to_string(trunc.max_terms));
        out.value += tp + tm;
        out.scale = std::max(out.scale, std::abs(out.value));
    }
    out.scale = std::max(out.scale, 1.0);
    return out;
}

cplx theta_char(double g1, double g2, cplx xi, cplx tau, const TruncationPolicy& trunc) {
    return theta_char_scaled(g1, g2, xi, tau, trunc).value;
}

Scaled triple_pochhammer_scaled(cplx x, cplx a, cplx b, const TruncationPolicy& trunc) {
    trunc.check();
    if (!(std::abs(a) < 1.0) || !(std::abs(b) < 1.0))
        throw DomainError("triple_pochhammer: needs |a| < 1 and |b| < 1");

    Scaled out;
    cplx xa = x;
    for (int j = 0;; ++j) {
        if (std::abs(xa) < trunc.tail_eps) break;
        if (j >= trunc.max_terms)
            throw TruncationError("triple_pochhammer outer index exceeded max_terms");
        cplx term = xa;
        for (int k = 0;; ++k) {
            if (std::abs(term) < trunc.tail_eps) break;
            if (k >= trunc.max_terms)
                throw TruncationError("triple_pochhammer inner index exceeded max_terms");
            out.value *= (1.0 - term);
            out.scale = std::max(out.scale, std::abs(out.value));
            term *= b;
        }
        xa *= a;
    }
    return out;
}

cplx triple_pochhammer(cplx x, cplx a, cplx b, const TruncationPolicy& trunc) {
    return triple_pochhammer_scaled(x, a, b, trunc).value;
}

Scaled big_theta_scaled(cplx x, cplx t, const TruncationPolicy& trunc) {
    trunc.check();
    if (!(std::abs(t) < 1.0)) throw DomainError("big_theta: needs |t| < 1");
    if (x == cplx(0.0, 0.0)) throw DomainError("big_theta: x = 0 is a pole of t/x");

    Scaled out;
    poch_into(out, x, t, trunc);
    poch_into(out, t / x, t, trunc);
    poch_into(out, t, t, trunc);
    return out;
}

cplx big_theta(cplx x, cplx t, const TruncationPolicy& trunc) {
    return big_theta_scaled(x, t, trunc).value;
}

Scaled big_theta_log(cplx u, cplx zeta, int N, const TruncationPolicy& trunc) {
    return big_theta_scaled(expi(u), expi(2.0 * N * zeta), trunc);
}

cplx guarded_ratio(const Scaled& num, const Scaled& den, const TruncationPolicy& trunc, const char* what) {
    if (std::abs(den.value) < trunc.pole_eps * den.scale) {
        std::ostringstream os;
        os << what << ": denominator " << fmt_cplx(den.value) << " within " << trunc.pole_eps
           << " * scale " << den.scale << " of zero";
        throw NearPoleError(os.str());
    }
    return num.value / den.value;
}

cplx tau_n(SpectralPoint z, cplx zeta, int N, const TruncationPolicy& trunc) {
    if (!(zeta.imag() > 0.0)) throw DomainError("tau_n: |q| >= 1");
    const Scaled num = big_theta_log(zeta + 2.0 * z.xi, zeta, N, trunc);
    const Scaled den = big_theta_log(zeta - 2.0 * z.xi, zeta, N, trunc);
    if (std::abs(den.value) < trunc.pole_eps * den.scale) {
        // Locate the lattice point q z^{-2} = q^{2Nm} p^0 for the message:
        // in log coordinates zeta - 2 xi = 2 N zeta m + 2 k.
        const cplx u = zeta - 2.0 * z.xi;
        const long m = std::lround((u / (2.0 * N * zeta)).real());
        std::ostringstream os;
        os << "tau_n: denominator Theta_{q^{2N}} near its zero lattice, argument log-coordinate "
           << fmt_cplx(u) << " ~ q^{" << 2 * N * m << "} (m = " << m << ")";
        throw NearPoleError(os.str());
    }
    return expi(z.xi * (2.0 / N - 2.0)) * num.value / den.value;
}

cplx kappa_inv(cplx xi2, cplx zeta, cplx tau, int N, const TruncationPolicy& trunc) {
    if (!(zeta.imag() > 0.0)) throw DomainError("kappa_inv: |q| >= 1");
    if (!(tau.imag() > 0.0)) throw DomainError("kappa_inv: |p| >= 1");

    const cplx p = expi(2.0 * tau);
    const cplx q2N = expi(2.0 * static_cast<double>(N) * zeta);
    const cplx q2 = expi(2.0 * zeta);
    const cplx z2 = expi(xi2);
    const cplx z2i = expi(-xi2);

    auto tp = [&](cplx x) { return triple_pochhammer_scaled(x, p, q2N, trunc); };

    const Scaled num[4] = {tp(q2N * z2i), tp(q2 * z2), tp(p * z2i), tp(p * q2N / q2 * z2)};
    const Scaled den[4] = {tp(q2N * z2), tp(q2 * z2i), tp(p * z2), tp(p * q2N / q2 * z2i)};

    cplx out(1.0, 0.0);
    for (int i = 0; i < 4; ++i) {
        if (std::abs(den[i].value) < trunc.pole_eps * den[i].scale) {
            std::ostringstream os;
            os << "kappa_inv: denominator triple product " << i + 1 << " of 4 near zero, value "
               << fmt_cplx(den[i].value) << " scale " << den[i].scale;
            throw NearPoleError(os.str());
        }
        out *= num[i].value / den[i].value;
    }
    return out;
}

}  // namespace ellw
