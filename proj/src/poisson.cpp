#include "ellw/poisson.hpp"

#include <cmath>
#include <sstream>

#include "ellw/legmatrix.hpp"
#include "ellw/params.hpp"
#include "ellw/structfn.hpp"

namespace ellw {

namespace {

// 2u/(1-u) - uq^2/(1-uq^2) - uq^{-2}/(1-uq^{-2}) with u = e^{i pi ulog};
// the three denominators are the summand poles.
cplx pole_group(cplx ulog, cplx zeta, const TruncationPolicy& trunc) {
    const cplx shifts[3] = {cplx(0.0), 2.0 * zeta, -2.0 * zeta};
    const double weights[3] = {2.0, -1.0, -1.0};
    cplx out = 0.0;
    for (int i = 0; i < 3; ++i) {
        const cplx u = expi(ulog + shifts[i]);
        const cplx den = 1.0 - u;
        if (std::abs(den) < trunc.pole_eps * std::max(1.0, std::abs(u))) {
            std::ostringstream os;
            os << "f_h: summand pole 1 - x^2 q^(...) ~ 0, lattice point at log coordinate "
               << (ulog + shifts[i]).real() << " + " << (ulog + shifts[i]).imag() << "i";
            throw NearPoleError(os.str());
        }
        out += weights[i] * u / den;
    }
    return out;
}

// The bracketed expression of f_h at x^2 = e^{i pi x2log}: the l-sum over the
// coefficient-weighted pole groups minus the 1/2-weighted l-free group.
cplx bracket(cplx x2log, const PoissonArgs& a, double c1, double c2) {
    if (c1 == 0.0 && c2 == 0.0) return 0.0;
    cplx total = 0.0;
    const cplx step = 2.0 * static_cast<double>(a.N) * a.zeta;
    for (int l = 0;; ++l) {
        if (l >= a.trunc.max_terms)
            throw TruncationError("f_h: l-sum exceeded max_terms");
        const cplx ul = x2log + static_cast<double>(l) * step;
        cplx inc = 0.0;
        if (c1 != 0.0) inc += c1 * pole_group(ul, a.zeta, a.trunc);
        if (c2 != 0.0)
            inc += c2 * pole_group(ul + static_cast<double>(a.N) * a.zeta, a.zeta, a.trunc);
        total += inc;
        if (std::abs(inc) < a.trunc.tail_eps * std::max(1.0, std::abs(total))) break;
    }
    if (c1 != 0.0) total -= 0.5 * c1 * pole_group(x2log, a.zeta, a.trunc);
    return total;
}

}  // namespace

cplx f_h(const PoissonArgs& args) {
    if (args.h == 0) throw DomainError("f_h: h must be nonzero");
    if (args.N < 2) throw DomainError("f_h: N must be >= 2");
    if (!(args.zeta.imag() > 0.0)) throw DomainError("f_h: |q| >= 1");
    args.trunc.check();

    const cplx ln_q = cplx(0.0, pi) * args.zeta;
    const bool odd = (args.h % 2 != 0);
    double c1, c2, pref_scale;
    if (odd) {
        const double en2 = std::floor(args.n / 2.0);
        const double en12 = std::floor((args.n + 1) / 2.0);
        c1 = en2 * (en2 + 1.0);
        c2 = en12 * en12;
        pref_scale = 2.0 * args.N * args.h;
    } else {
        c1 = 1.0;
        c2 = 0.0;
        pref_scale = static_cast<double>(args.N) * args.h * args.n * (args.n + 1.0);
    }
    if (pref_scale == 0.0 && !odd) return 0.0;  // even h, n in {0, -1}

    const cplx x2 = 2.0 * args.x.xi;
    return pref_scale * ln_q * (bracket(x2, args, c1, c2) - bracket(-x2, args, c1, c2));
}

cplx bracket_factor(int N, int i, int j, int n, int h, SpectralPoint x, cplx zeta,
                    const TruncationPolicy& trunc) {
    if (i < 1 || j < 1) throw DomainError("bracket_factor: i, j must be >= 1");
    PoissonArgs args{N, n, h, x, zeta, trunc};
    cplx total = 0.0;
    for (int ui = 0; ui < i; ++ui)
        for (int vi = 0; vi < j; ++vi) {
            const int two_vu = (2 * vi - (j - 1)) - (2 * ui - (i - 1));
            args.x = x.shifted(static_cast<double>(two_vu) / 2.0 * zeta);
            total += f_h(args);
        }
    return total;
}

CheckReport check_poisson_limit(int N, int n, int h, SpectralPoint x, cplx zeta,
                                const std::vector<double>& beta_seq,
                                const TruncationPolicy& trunc, double tol,
                                PoissonDiagnostics* diag) {
    if (beta_seq.size() < 2) throw DomainError("check_poisson_limit: need at least 2 betas");
    for (std::size_t i = 0; i < beta_seq.size(); ++i) {
        if (!(beta_seq[i] > 0.0)) throw DomainError("check_poisson_limit: betas must be positive");
        if (i > 0 && !(beta_seq[i] < beta_seq[i - 1]))
            throw DomainError("check_poisson_limit: betas must decrease");
    }

    CheckReport rep;
    rep.name = "poisson_limit";
    rep.N = N;
    rep.n = n;
    rep.h = h;
    rep.zeta = zeta;
    rep.tau = classical_tau(N, h, zeta, 0.0);
    rep.points = {x.xi};

    std::vector<cplx> d_minus, d_plus;
    for (double beta : beta_seq) {
        const cplx tau_b = classical_tau(N, h, zeta, beta);
        StructArgs args{N, n, x, zeta, tau_b, trunc};
        const cplx y = y_struct(args);
        d_minus.push_back((1.0 - 1.0 / y) / beta);
        d_plus.push_back((y - 1.0) / beta);
    }

    // Polynomial extrapolation in beta to 0 (Neville); for ratio-2 sequences
    // this is plain Richardson. The tableau diagonal supplies the
    // convergence diagnostic.
    auto extrapolate = [&](const std::vector<cplx>& d, cplx* prev_diag) {
        std::vector<cplx> t = d;
        cplx last = t[0];
        for (std::size_t k = 1; k < d.size(); ++k) {
            for (std::size_t i = 0; i + k < d.size(); ++i)
                t[i] = (beta_seq[i] * t[i + 1] - beta_seq[i + k] * t[i]) /
                       (beta_seq[i] - beta_seq[i + k]);
            if (k == d.size() - 2) last = t[0];
        }
        if (prev_diag) *prev_diag = last;
        return t[0];
    };

    const PoissonArgs fargs{N, n, h, x, zeta, trunc};
    const cplx fh = f_h(fargs);
    const double scale = std::max(1.0, std::abs(fh));

    cplx prev_minus{};
    const cplx lim_minus = extrapolate(d_minus, &prev_minus);
    const cplx lim_plus = extrapolate(d_plus, nullptr);

    const double tableau_step = std::abs(lim_minus - prev_minus) / scale;
    if (tableau_step > 10.0 * tol)
        throw ConvergenceError(
            "check_poisson_limit: Richardson tableau not settled, successive extrapolants "
            "differ by " +
            std::to_string(tableau_step) + " (scaled) > 10 * tol");

    if (diag) {
        diag->betas = beta_seq;
        diag->d_minus = d_minus;
        diag->d_plus = d_plus;
        diag->extrapolated_minus = lim_minus;
        diag->extrapolated_plus = lim_plus;
        diag->f_h_value = fh;
        diag->alt_residual = std::abs(lim_plus - fh) / scale;
        diag->tableau_step = tableau_step;
        diag->second_difference_ratios.clear();
        for (std::size_t k = 0; k + 3 < d_minus.size(); ++k) {
            const cplx s0 = d_minus[k] - 2.0 * d_minus[k + 1] + d_minus[k + 2];
            const cplx s1 = d_minus[k + 1] - 2.0 * d_minus[k + 2] + d_minus[k + 3];
            if (std::abs(s1) > 0.0)
                diag->second_difference_ratios.push_back(std::abs(s0) / std::abs(s1));
        }
    }

    rep.set_residual(std::abs(lim_minus - fh) / scale, scale, tol);
    return rep;
}

}  // namespace ellw
