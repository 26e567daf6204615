#include "ellw/suite.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <nlohmann/json.hpp>
#include <ostream>
#include <thread>

#include "ellw/identities.hpp"
#include "ellw/params.hpp"
#include "ellw/poisson.hpp"
#include "ellw/rmatrix.hpp"
#include "ellw/rng.hpp"
#include "ellw/structfn.hpp"

namespace ellw {

namespace {

using json = nlohmann::json;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

const std::vector<double> default_betas = {1e-2, 5e-3, 2.5e-3};

int need_n(const CellSpec& cell) {
    if (!cell.n) throw DomainError("check '" + cell.name + "' needs a surface label n");
    return *cell.n;
}

std::optional<RProperty> r_property_from(const std::string& name) {
    for (RProperty k : {RProperty::ybe, RProperty::unitarity, RProperty::crossing,
                        RProperty::antisymmetry, RProperty::zn_symmetry,
                        RProperty::quasi_periodicity})
        if (name == r_property_name(k)) return k;
    return std::nullopt;
}

CheckReport dispatch(const CellSpec& cell, Rng& rng, const TruncationPolicy& trunc) {
    const cplx zeta = cell.zeta ? *cell.zeta : draw_zeta(rng);
    const cplx tau = cell.tau ? *cell.tau : draw_tau(rng);
    LogParams params{cell.N, zeta, tau, cell.c};

    if (auto kind = r_property_from(cell.name)) {
        std::vector<SpectralPoint> pts{draw_xi(rng)};
        if (*kind == RProperty::ybe) pts.push_back(draw_xi(rng));
        return check_r_property(*kind, params, pts, trunc, cell.tol);
    }
    if (cell.name == "r_permutation") return check_r_permutation(params, trunc, cell.tol);
    if (cell.name == "tau_periodicity")
        return check_tau_properties(params, draw_xi(rng), trunc, cell.tol);
    if (cell.name == "t_relations") {
        if (!params.c) params.c = cplx(0.7, 0.0);  // generic central charge
        return check_t_relations(params, draw_xi(rng), trunc, cell.tol);
    }
    if (cell.name == "quasi_shift")
        return check_quasi_shift_n(params, need_n(cell), draw_xi(rng), trunc, cell.tol);
    if (cell.name == "lemma_key")
        return check_lemma_key(SurfaceSpec{cell.N, need_n(cell)}, params, draw_xi(rng), trunc,
                               cell.tol);
    if (cell.name == "trace_transposition")
        return check_trace_transposition(cell.N, cell.s.value_or(2), rng.word(), cell.tol);
    if (cell.name == "transposed_ybe") {
        if (!params.c) params.c = cplx(0.7, 0.0);
        const SpectralPoint x1 = draw_xi(rng), x2 = draw_xi(rng);
        return check_transposed_ybe(params, x1, x2, trunc, cell.tol);
    }
    if (cell.name == "fg_duality")
        return check_fg_duality(SurfaceSpec{cell.N, need_n(cell)}, params, draw_xi(rng), trunc,
                                cell.tol);
    if (cell.name == "fy_ratio")
        return check_fy_ratio(SurfaceSpec{cell.N, need_n(cell)}, params, cell.s.value_or(1),
                              draw_xi(rng), trunc, cell.tol);
    if (cell.name == "abelian") {
        if (cell.h)
            return check_abelian(cell.N, need_n(cell), *cell.h, zeta, draw_xi(rng), trunc,
                                 cell.tol);
        // No h: the generic-nome case (n = -1 commutes at any p, q).
        return check_abelian(cell.N, need_n(cell), 1, zeta, draw_xi(rng), trunc, cell.tol, tau);
    }
    if (cell.name == "poisson_limit")
        return check_poisson_limit(cell.N, need_n(cell), cell.h.value_or(1), draw_xi(rng), zeta,
                                   cell.betas.empty() ? default_betas : cell.betas, trunc,
                                   cell.tol);
    throw DomainError("unknown check name: " + cell.name);
}

CheckReport refusal_stub(const CellSpec& cell) {
    CheckReport rep;
    rep.name = cell.name;
    rep.N = cell.N;
    rep.n = cell.n;
    rep.h = cell.h;
    rep.zeta = cell.zeta.value_or(cplx{});
    rep.tau = cell.tau.value_or(cplx{});
    rep.c = cell.c;
    rep.tol = cell.tol;
    return rep;
}

}  // namespace

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names = {
        "ybe",         "unitarity",     "crossing",   "antisymmetry",
        "zn_symmetry", "quasi_periodicity", "r_permutation", "tau_periodicity",
        "t_relations", "quasi_shift",   "lemma_key",  "trace_transposition",
        "transposed_ybe", "fg_duality", "fy_ratio",   "abelian",
        "poisson_limit"};
    return names;
}

double default_tol(const std::string& name) {
    if (name == "quasi_periodicity" || name == "quasi_shift" || name == "lemma_key" ||
        name == "transposed_ybe")
        return 1e-8;
    if (name == "r_permutation" || name == "tau_periodicity") return 1e-10;
    if (name == "trace_transposition") return 1e-12;
    if (name == "poisson_limit") return 1e-5;
    return 1e-9;
}

void run_cell(const CellSpec& cell, const TruncationPolicy& trunc, std::vector<ReportLine>& out) {
    // Sampling guard: reject and resample points while any required theta
    // factor sits within 1e-6 of zero. The guard only decides refusal, never
    // the value, so residuals match an evaluation at the standard policy.
    TruncationPolicy screening = trunc;
    screening.pole_eps = std::max(trunc.pole_eps, 1e-6);

    for (int p = 0; p < cell.points; ++p) {
        const std::uint64_t eval_seed = splitmix64(cell.seed ^ splitmix64(p + 1));
        Rng rng(eval_seed);
        ReportLine line;
        line.name = cell.name;
        line.cell_index = cell.cell_index;
        line.seed = eval_seed;

        std::string reason;
        bool done = false;
        for (int attempt = 0; attempt < 50 && !done; ++attempt) {
            try {
                CheckReport rep = dispatch(cell, rng, screening);
                rep.seed = eval_seed;
                line.status = rep.pass ? 0 : 1;
                line.json = to_json_line(rep);
                done = true;
            } catch (const NearPoleError& e) {
                reason = e.what();
            } catch (const SingularMatrixError& e) {
                reason = e.what();
            } catch (const BoundsError& e) {
                reason = e.what();
            } catch (const ConvergenceError& e) {
                reason = e.what();
            } catch (const GuardError& e) {
                reason = e.what();
                break;
            }
        }
        if (!done) {
            CheckReport stub = refusal_stub(cell);
            stub.seed = eval_seed;
            line.status = 2;
            line.json = refused_json_line(stub, reason);
        }
        out.push_back(std::move(line));
    }
}

namespace {

// ---- manifest parsing -------------------------------------------------

cplx parse_pair(const json& j, const std::string& where) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw DomainError("manifest: " + where + " must be a number or an [re, im] pair");
}

std::vector<cplx> parse_pair_list(const json& j, const std::string& where) {
    // [re, im] is one value; [[re, im], ...] is a list.
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {parse_pair(j, where)};
    std::vector<cplx> out;
    if (j.is_array()) {
        for (const auto& e : j) out.push_back(parse_pair(e, where));
        return out;
    }
    return {parse_pair(j, where)};
}

std::vector<int> parse_int_list(const json& j, const std::string& where) {
    if (j.is_number_integer()) return {j.get<int>()};
    std::vector<int> out;
    if (j.is_array()) {
        for (const auto& e : j) {
            if (!e.is_number_integer()) throw DomainError("manifest: " + where + " must be integers");
            out.push_back(e.get<int>());
        }
        if (out.empty()) throw DomainError("manifest: " + where + " is empty");
        return out;
    }
    throw DomainError("manifest: " + where + " must be an integer or integer list");
}

}  // namespace

RunManifest parse_manifest(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw DomainError(std::string("manifest: malformed document: ") + e.what());
    }
    if (!doc.is_object()) throw DomainError("manifest: top level must be an object");

    RunManifest m;
    m.seed = doc.value("seed", std::uint64_t{0});
    m.out_dir = doc.value("out_dir", std::string("out"));
    if (doc.contains("trunc")) {
        const auto& t = doc["trunc"];
        m.trunc.tail_eps = t.value("tail_eps", m.trunc.tail_eps);
        m.trunc.max_terms = t.value("max_terms", m.trunc.max_terms);
        m.trunc.pole_eps = t.value("pole_eps", m.trunc.pole_eps);
    }
    m.trunc.check();

    const auto& names = check_names();
    auto known = [&](const std::string& n) {
        return std::find(names.begin(), names.end(), n) != names.end();
    };

    if (doc.contains("tol_overrides")) {
        for (const auto& [key, val] : doc["tol_overrides"].items()) {
            if (!known(key)) throw DomainError("manifest: tol_overrides names unknown check '" + key + "'");
            m.tol_overrides[key] = val.get<double>();
        }
    }

    std::size_t cell_counter = 0;
    for (const auto& entry : doc.value("checks", json::array())) {
        if (!entry.contains("name")) throw DomainError("manifest: check entry without name");
        const std::string name = entry["name"].get<std::string>();
        if (!known(name)) throw DomainError("manifest: unknown check name '" + name + "'");

        const std::vector<int> Ns =
            entry.contains("N") ? parse_int_list(entry["N"], "N") : std::vector<int>{2};
        std::vector<std::optional<int>> ns{std::nullopt}, hs{std::nullopt}, ss{std::nullopt};
        if (entry.contains("n")) {
            ns.clear();
            for (int v : parse_int_list(entry["n"], "n")) ns.push_back(v);
        }
        if (entry.contains("h")) {
            hs.clear();
            for (int v : parse_int_list(entry["h"], "h")) hs.push_back(v);
        }
        if (entry.contains("s")) {
            ss.clear();
            for (int v : parse_int_list(entry["s"], "s")) ss.push_back(v);
        }
        std::vector<std::optional<cplx>> cs{std::nullopt}, zetas{std::nullopt}, taus{std::nullopt};
        if (entry.contains("c")) {
            cs.clear();
            for (cplx v : parse_pair_list(entry["c"], "c")) cs.push_back(v);
        }
        if (entry.contains("zeta")) {
            zetas.clear();
            for (cplx v : parse_pair_list(entry["zeta"], "zeta")) zetas.push_back(v);
        }
        if (entry.contains("tau")) {
            taus.clear();
            for (cplx v : parse_pair_list(entry["tau"], "tau")) taus.push_back(v);
        }

        const int points = entry.value("points", name == "r_permutation" ? 1 : 5);
        if (points < 1) throw DomainError("manifest: points must be >= 1");
        const std::uint64_t entry_seed = entry.value("seed", m.seed);

        double tol;
        if (entry.contains("tol"))
            tol = entry["tol"].get<double>();
        else if (auto it = m.tol_overrides.find(name); it != m.tol_overrides.end())
            tol = it->second;
        else
            tol = default_tol(name);

        std::vector<double> betas;
        if (entry.contains("betas")) betas = entry["betas"].get<std::vector<double>>();

        for (int N : Ns)
            for (const auto& n : ns)
                for (const auto& h : hs)
                    for (const auto& s : ss)
                        for (const auto& c : cs)
                            for (const auto& zeta : zetas)
                                for (const auto& tau : taus) {
                                    CellSpec cell;
                                    cell.name = name;
                                    cell.N = N;
                                    cell.n = n;
                                    cell.h = h;
                                    cell.s = s;
                                    cell.c = c;
                                    cell.zeta = zeta;
                                    cell.tau = tau;
                                    cell.points = points;
                                    cell.cell_index = cell_counter;
                                    cell.seed = splitmix64(entry_seed ^ splitmix64(cell_counter));
                                    cell.tol = tol;
                                    cell.betas = betas;
                                    m.checks_raw.push_back(std::move(cell));
                                    ++cell_counter;
                                }
    }

    for (const auto& entry : doc.value("sweeps", json::array())) {
        SweepSpec sw;
        sw.function = entry.value("function", std::string());
        if (sw.function != "f_struct" && sw.function != "y_struct" && sw.function != "f_h")
            throw DomainError("manifest: unknown sweep function '" + sw.function + "'");
        sw.N = entry.value("N", 2);
        sw.r_or_n = entry.value("n", 0);
        sw.h = entry.value("h", 1);
        if (entry.contains("zeta")) sw.zeta = parse_pair(entry["zeta"], "sweep zeta");
        else throw DomainError("manifest: sweep needs zeta");
        if (entry.contains("tau")) sw.tau = parse_pair(entry["tau"], "sweep tau");
        else if (sw.function != "f_h") throw DomainError("manifest: sweep needs tau");
        if (!entry.contains("ray")) throw DomainError("manifest: sweep needs a ray");
        const auto& ray = entry["ray"];
        sw.ray_start = parse_pair(ray.at("start"), "ray start");
        sw.ray_end = parse_pair(ray.at("end"), "ray end");
        sw.steps = ray.value("steps", 2);
        if (sw.steps < 2) throw DomainError("manifest: ray steps must be >= 2");
        sw.out_file = entry.value("out", sw.function + ".csv");
        m.sweeps.push_back(std::move(sw));
    }

    return m;
}

void run_sweep(const SweepSpec& sweep, const TruncationPolicy& trunc, std::ostream& os) {
    os << "x_re,x_im,value_re,value_im\n";
    os.precision(17);
    for (int k = 0; k < sweep.steps; ++k) {
        const double t = static_cast<double>(k) / (sweep.steps - 1);
        const cplx xi = sweep.ray_start + t * (sweep.ray_end - sweep.ray_start);
        cplx v;
        bool ok = true;
        try {
            if (sweep.function == "f_struct") {
                StructArgs args{sweep.N, sweep.r_or_n, SpectralPoint{xi}, sweep.zeta, sweep.tau,
                                trunc};
                v = f_struct(args);
            } else if (sweep.function == "y_struct") {
                StructArgs args{sweep.N, sweep.r_or_n, SpectralPoint{xi}, sweep.zeta, sweep.tau,
                                trunc};
                v = y_struct(args);
            } else {
                PoissonArgs args{sweep.N, sweep.r_or_n, sweep.h, SpectralPoint{xi}, sweep.zeta,
                                 trunc};
                v = f_h(args);
            }
        } catch (const NearPoleError&) {
            ok = false;
        }
        os << xi.real() << "," << xi.imag() << ",";
        if (ok)
            os << v.real() << "," << v.imag() << "\n";
        else
            os << "nan,nan\n";
    }
}

Summary run_manifest(const RunManifest& manifest, int jobs) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(manifest.out_dir, ec);
    if (!fs::is_directory(manifest.out_dir))
        throw DomainError("run_manifest: cannot create out_dir '" + manifest.out_dir + "'");

    std::vector<std::vector<ReportLine>> per_cell(manifest.checks_raw.size());
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::string first_error;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= manifest.checks_raw.size()) break;
            try {
                run_cell(manifest.checks_raw[i], manifest.trunc, per_cell[i]);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (first_error.empty()) first_error = e.what();
            }
        }
    };

    const int nthreads = std::max(1, jobs);
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads - 1; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (!first_error.empty()) throw DomainError("run_manifest: " + first_error);

    std::vector<ReportLine> lines;
    for (auto& v : per_cell)
        for (auto& l : v) lines.push_back(std::move(l));
    std::stable_sort(lines.begin(), lines.end(), [](const ReportLine& a, const ReportLine& b) {
        if (a.name != b.name) return a.name < b.name;
        if (a.cell_index != b.cell_index) return a.cell_index < b.cell_index;
        return a.seed < b.seed;
    });

    const fs::path report_path = fs::path(manifest.out_dir) / "report.jsonl";
    std::ofstream rf(report_path);
    if (!rf) throw DomainError("run_manifest: cannot write " + report_path.string());
    Summary summary;
    for (const auto& l : lines) {
        rf << l.json << "\n";
        if (l.status == 0) ++summary.passed;
        else if (l.status == 1) ++summary.failed;
        else ++summary.refused;
    }
    rf.close();

    for (const auto& sweep : manifest.sweeps) {
        const fs::path p = fs::path(manifest.out_dir) / sweep.out_file;
        std::ofstream sf(p);
        if (!sf) throw DomainError("run_manifest: cannot write " + p.string());
        run_sweep(sweep, manifest.trunc, sf);
    }
    return summary;
}

Summary verify_quick(int N, std::ostream* log) {
    if (N < 2 || N > max_rank) throw DomainError("verify_quick: N must lie in [2, 6]");

    const cplx zeta(0.05, 0.40), tau(0.10, 0.90);
    const std::uint64_t seed = 20240601;
    std::vector<CellSpec> cells;
    auto add = [&](const char* name, std::optional<int> n, std::optional<int> h,
                   std::optional<int> s, std::optional<cplx> c, bool fixed_nome) {
        CellSpec cell;
        cell.name = name;
        cell.N = N;
        cell.n = n;
        cell.h = h;
        cell.s = s;
        cell.c = c;
        if (fixed_nome) {
            cell.zeta = zeta;
            cell.tau = tau;
        }
        cell.points = 2;
        cell.cell_index = cells.size();
        cell.seed = splitmix64(seed ^ splitmix64(cells.size()));
        cell.tol = default_tol(name);
        if (cell.name == "poisson_limit")
            cell.betas = {1e-2, 5e-3, 2.5e-3, 1.25e-3, 6.25e-4, 3.125e-4};
        cells.push_back(std::move(cell));
    };

    add("ybe", {}, {}, {}, {}, true);
    add("unitarity", {}, {}, {}, {}, true);
    add("quasi_periodicity", {}, {}, {}, {}, true);
    add("lemma_key", 1, {}, {}, {}, true);
    add("fy_ratio", 1, {}, 1, {}, true);
    add("poisson_limit", 1, 2, {}, {}, true);  // tau is derived from the classical line

    Summary summary;
    TruncationPolicy trunc;
    for (const auto& cell : cells) {
        std::vector<ReportLine> lines;
        run_cell(cell, trunc, lines);
        for (const auto& l : lines) {
            if (log) (*log) << l.json << "\n";
            if (l.status == 0) ++summary.passed;
            else if (l.status == 1) ++summary.failed;
            else ++summary.refused;
        }
    }
    return summary;
}

}  // namespace ellw
