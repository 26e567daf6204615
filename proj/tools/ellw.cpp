// Command-line harness: manifest-driven check suites, smoke runs, function
// sweeps and R-matrix dumps. Exit codes: 0 no failures, 1 failures present,
// 2 manifest or I/O error.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ellw/identities.hpp"
#include "ellw/params.hpp"
#include "ellw/rmatrix.hpp"
#include "ellw/suite.hpp"

namespace {

struct GlobalOpts {
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    std::optional<double> tail_eps;
    int jobs = 1;
};

void apply_overrides(ellw::RunManifest& manifest, const GlobalOpts& g) {
    if (!g.out.empty()) manifest.out_dir = g.out;
    if (g.tail_eps) manifest.trunc.tail_eps = *g.tail_eps;
    if (g.seed) {
        // Reseed every cell deterministically from the new base seed.
        manifest.seed = *g.seed;
        for (auto& cell : manifest.checks_raw) {
            std::uint64_t x = *g.seed + 0x9E3779B97F4A7C15ull * (cell.cell_index + 1);
            x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
            x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
            cell.seed = x ^ (x >> 31);
        }
    }
    if (g.tol)
        for (auto& cell : manifest.checks_raw)
            if (!manifest.tol_overrides.count(cell.name)) cell.tol = *g.tol;
}

int print_summary(const ellw::Summary& s) {
    std::cout << "pass: " << s.passed << "  fail: " << s.failed << "  refused: " << s.refused
              << "\n";
    return s.ok() ? 0 : 1;
}

std::pair<double, double> split_pair(const std::vector<double>& v, const char* what) {
    if (v.size() != 2) throw ellw::DomainError(std::string(what) + " needs two values: re im");
    return {v[0], v[1]};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Z_N elliptic R-matrix and W_{q,p} structure-function checker"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--out", g.out, "Output directory (overrides manifest)");
    app.add_option("--seed", g.seed, "Base seed (overrides manifest)");
    app.add_option("--tol", g.tol, "Tolerance for checks without overrides");
    app.add_option("--tail-eps", g.tail_eps, "Series/product tail tolerance");
    app.add_option("--jobs", g.jobs, "Worker pool size")->check(CLI::PositiveNumber);

    auto* cmd_check = app.add_subcommand("check", "Run a manifest of check grids and sweeps");
    std::string manifest_path;
    cmd_check->add_option("manifest", manifest_path, "Manifest file (JSON)")->required();

    auto* cmd_quick = app.add_subcommand("quick", "Fixed smoke subset at baked-in parameters");
    int quick_n = 2;
    cmd_quick->add_option("--N", quick_n, "Rank")->check(CLI::Range(2, 6));

    auto* cmd_sweep = app.add_subcommand("sweep", "Evaluate one function along a ray to CSV");
    std::string sweep_fn = "f_struct";
    int sweep_N = 2, sweep_n = 1, sweep_h = 1, sweep_steps = 33;
    std::vector<double> sweep_zeta{0.0, 0.4}, sweep_tau{0.0, 0.9}, sweep_a{-0.3, 0.0},
        sweep_b{0.3, 0.0};
    std::string sweep_out = "sweep.csv";
    cmd_sweep->add_option("--function", sweep_fn, "f_struct | y_struct | f_h");
    cmd_sweep->add_option("--N", sweep_N, "Rank");
    cmd_sweep->add_option("--n", sweep_n, "Label r (F, Y) or n (f_h)");
    cmd_sweep->add_option("--classical-h", sweep_h, "Classical-line label (f_h)");
    cmd_sweep->add_option("--zeta", sweep_zeta, "zeta: re im")->expected(2);
    cmd_sweep->add_option("--tau", sweep_tau, "tau: re im")->expected(2);
    cmd_sweep->add_option("--start", sweep_a, "ray start xi: re im")->expected(2);
    cmd_sweep->add_option("--end", sweep_b, "ray end xi: re im")->expected(2);
    cmd_sweep->add_option("--steps", sweep_steps, "ray steps")->check(CLI::Range(2, 1000000));
    cmd_sweep->add_option("--csv", sweep_out, "output CSV file");

    auto* cmd_dump = app.add_subcommand("dump-r", "Write an R-matrix as row/col/re/im text");
    int dump_N = 2;
    std::vector<double> dump_zeta{0.05, 0.4}, dump_tau{0.1, 0.9}, dump_xi{0.07, -0.11},
        dump_c{0.0, 0.0};
    bool dump_hat = false, dump_star = false;
    std::string dump_out = "r_matrix.txt";
    cmd_dump->add_option("--N", dump_N, "Rank")->check(CLI::Range(2, 6));
    cmd_dump->add_option("--zeta", dump_zeta, "zeta: re im")->expected(2);
    cmd_dump->add_option("--tau", dump_tau, "tau: re im")->expected(2);
    cmd_dump->add_option("--xi", dump_xi, "spectral log coordinate xi: re im")->expected(2);
    cmd_dump->add_flag("--hat", dump_hat, "dump tau_N-normalized matrix");
    cmd_dump->add_flag("--starred", dump_star, "use the starred nome p q^{-2c}");
    cmd_dump->add_option("--c", dump_c, "central charge: re im")->expected(2);
    cmd_dump->add_option("--file", dump_out, "output file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_check) {
            std::ifstream in(manifest_path);
            if (!in) {
                std::cerr << "cannot read manifest '" << manifest_path << "'\n";
                return 2;
            }
            std::ostringstream buf;
            buf << in.rdbuf();
            ellw::RunManifest manifest = ellw::parse_manifest(buf.str());
            apply_overrides(manifest, g);
            return print_summary(ellw::run_manifest(manifest, g.jobs));
        }
        if (*cmd_quick) {
            return print_summary(ellw::verify_quick(quick_n, &std::cout));
        }
        if (*cmd_sweep) {
            ellw::SweepSpec sw;
            sw.function = sweep_fn;
            if (sw.function != "f_struct" && sw.function != "y_struct" && sw.function != "f_h") {
                std::cerr << "unknown function '" << sw.function << "'\n";
                return 2;
            }
            sw.N = sweep_N;
            sw.r_or_n = sweep_n;
            sw.h = sweep_h;
            auto [zr, zi] = split_pair(sweep_zeta, "--zeta");
            auto [tr, ti] = split_pair(sweep_tau, "--tau");
            auto [ar, ai] = split_pair(sweep_a, "--start");
            auto [br, bi] = split_pair(sweep_b, "--end");
            sw.zeta = {zr, zi};
            sw.tau = {tr, ti};
            sw.ray_start = {ar, ai};
            sw.ray_end = {br, bi};
            sw.steps = sweep_steps;
            ellw::TruncationPolicy trunc;
            if (g.tail_eps) trunc.tail_eps = *g.tail_eps;
            std::ofstream out(sweep_out);
            if (!out) {
                std::cerr << "cannot write '" << sweep_out << "'\n";
                return 2;
            }
            ellw::run_sweep(sw, trunc, out);
            std::cout << "wrote " << sweep_out << "\n";
            return 0;
        }
        if (*cmd_dump) {
            ellw::LogParams params{dump_N, {dump_zeta[0], dump_zeta[1]}, {dump_tau[0], dump_tau[1]}};
            if (dump_star) params.c = ellw::cplx{dump_c[0], dump_c[1]};
            ellw::TruncationPolicy trunc;
            if (g.tail_eps) trunc.tail_eps = *g.tail_eps;
            const ellw::SpectralPoint z{{dump_xi[0], dump_xi[1]}};
            const ellw::LegMatrix m = (dump_hat || dump_star)
                                          ? ellw::build_r_hat(z, params, dump_star, trunc)
                                          : ellw::build_r(z, params, trunc);
            std::ofstream out(dump_out);
            if (!out) {
                std::cerr << "cannot write '" << dump_out << "'\n";
                return 2;
            }
            ellw::dump_matrix(m, out);
            std::cout << "wrote " << dump_out << "\n";
            return 0;
        }
    } catch (const ellw::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
