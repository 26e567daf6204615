#ifndef ELLW_SUITE_HPP
#define ELLW_SUITE_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ellw/report.hpp"
#include "ellw/types.hpp"

namespace ellw {

// One grid cell of a manifest check entry: a named identity at fixed discrete
// labels, evaluated at `points` sampled spectral points. Unset zeta/tau are
// drawn per evaluation from the default region; unset c falls back to a
// check-specific generic value or a surface solve.
struct CellSpec {
    std::string name;
    int N = 2;
    std::optional<int> n{};
    std::optional<int> h{};
    std::optional<int> s{};
    std::optional<cplx> c{};
    std::optional<cplx> zeta{};
    std::optional<cplx> tau{};
    int points = 1;
    std::uint64_t seed = 0;
    std::size_t cell_index = 0;
    double tol = 0.0;  // resolved tolerance
    std::vector<double> betas;  // poisson_limit only
};

struct SweepSpec {
    std::string function;  // f_struct | y_struct | f_h
    int N = 2;
    int r_or_n = 0;
    int h = 1;
    cplx zeta{};
    cplx tau{};
    cplx ray_start{};
    cplx ray_end{};
    int steps = 2;
    std::string out_file;
};

struct RunManifest {
    std::vector<CellSpec> checks_raw;  // grids not yet expanded (cell per grid combo)
    std::vector<SweepSpec> sweeps;
    std::map<std::string, double> tol_overrides;
    TruncationPolicy trunc{};
    std::string out_dir = "out";
    std::uint64_t seed = 0;
};

struct Summary {
    int passed = 0;
    int failed = 0;
    int refused = 0;

    bool ok() const { return failed == 0; }
};

// Registered check names, in the order they appear in reports.
const std::vector<std::string>& check_names();
double default_tol(const std::string& name);

// Parse a manifest document (JSON text, one document with nested sections;
// complex numbers as [re, im] pairs). Throws DomainError on malformed input
// or unknown check/function names.
RunManifest parse_manifest(const std::string& text);

// Result of one evaluation unit, already serialized.
struct ReportLine {
    std::string name;
    std::size_t cell_index = 0;
    std::uint64_t seed = 0;
    int status = 0;  // 0 pass, 1 fail, 2 refused
    std::string json;
};

// Run one cell; appends one line per evaluated point. Near-pole,
// ill-conditioned, non-convergent and guard-tripped evaluations come back as
// refusals; sampled points are rejected and resampled while any required
// theta factor is within 1e-6 of zero.
void run_cell(const CellSpec& cell, const TruncationPolicy& trunc,
              std::vector<ReportLine>& out);

// Execute every cell and sweep; write <out_dir>/report.jsonl and one CSV per
// sweep; lines merged deterministically by (name, cell index, seed).
Summary run_manifest(const RunManifest& manifest, int jobs = 1);

// Fixed smoke subset (ybe, unitarity, quasi_periodicity, lemma_key at n=1,
// fy_ratio at s=1, one poisson_limit cell) at baked-in parameters. Cells whose
// guards trip (three-leg checks above N=4) count as refused.
Summary verify_quick(int N, std::ostream* log = nullptr);

// Evaluate a sweep into CSV rows "x_re,x_im,value_re,value_im"; refused points
// appear as nan.
void run_sweep(const SweepSpec& sweep, const TruncationPolicy& trunc, std::ostream& os);

}  // namespace ellw

#endif
