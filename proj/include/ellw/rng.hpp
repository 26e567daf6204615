#ifndef ELLW_RNG_HPP
#define ELLW_RNG_HPP

#include <cstdint>
#include <random>

#include "ellw/types.hpp"

namespace ellw {

// Deterministic RNG for tests and grid runs. Doubles are derived from raw
// mt19937_64 words so that streams are reproducible independently of the
// standard library's distribution internals.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform(double lo, double hi) {
        const double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    cplx box(double re_lo, double re_hi, double im_lo, double im_hi) {
        const double re = uniform(re_lo, re_hi);
        const double im = uniform(im_lo, im_hi);
        return {re, im};
    }

    std::uint64_t word() { return eng_(); }

  private:
    std::mt19937_64 eng_;
};

// Default sampling region: fast convergence (|q|, |p| <= e^{-0.4 pi}) and
// real parts small enough that no identity argument crosses a lattice line.
namespace region {
inline constexpr double re_lo = -0.2, re_hi = 0.2;
inline constexpr double zeta_im_lo = 0.2, zeta_im_hi = 0.6;
inline constexpr double tau_im_lo = 0.6, tau_im_hi = 1.2;
inline constexpr double xi_im_lo = -0.2, xi_im_hi = 0.2;
}  // namespace region

inline SpectralPoint draw_xi(Rng& rng) {
    return {rng.box(region::re_lo, region::re_hi, region::xi_im_lo, region::xi_im_hi)};
}

inline cplx draw_zeta(Rng& rng) {
    return rng.box(region::re_lo, region::re_hi, region::zeta_im_lo, region::zeta_im_hi);
}

inline cplx draw_tau(Rng& rng) {
    return rng.box(region::re_lo, region::re_hi, region::tau_im_lo, region::tau_im_hi);
}

}  // namespace ellw

#endif
