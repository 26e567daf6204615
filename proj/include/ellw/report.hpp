#ifndef ELLW_REPORT_HPP
#define ELLW_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "ellw/types.hpp"

namespace ellw {

// Outcome of one identity check at one parameter cell.
//   residual = max-abs-entry(LHS - RHS) / max(1, max-abs-entry(LHS))
//   pass    <=> residual < tol
// cond carries the largest condition estimate of any dense solve involved.
struct CheckReport {
    std::string name;
    int N = 0;
    std::optional<int> n{};
    std::optional<int> h{};
    cplx zeta{};
    cplx tau{};
    std::optional<cplx> c{};
    std::vector<cplx> points;  // spectral points, log coordinates
    std::uint64_t seed = 0;
    double residual = 0.0;
    double scale = 1.0;
    double tol = 0.0;
    bool pass = false;
    std::optional<double> cond{};

    void set_residual(double r, double s, double tolerance) {
        residual = r;
        scale = s;
        tol = tolerance;
        pass = r < tolerance;
    }
};

// residual = |lhs - rhs| / max(1, |lhs|) for scalar identities.
double scaled_residual(cplx lhs, cplx rhs, double* scale_out = nullptr);

// One JSON object per line:
// {"name",...,"zeta":[re,im],"tau":[re,im],"c":[re,im],"points":[[re,im],...],
//  "seed","residual","scale","tol","pass"} with "cond" appended when present.
std::string to_json_line(const CheckReport& r);

// Refused evaluations (near-pole, ill-conditioned, non-convergent) are a third
// status next to pass/fail; they carry the reason instead of a residual.
std::string refused_json_line(const CheckReport& partial, const std::string& reason);

}  // namespace ellw

#endif
