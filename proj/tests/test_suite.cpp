#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ellw/structfn.hpp"
#include "ellw/suite.hpp"

using namespace ellw;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path temp_dir(const std::string& tag) {
    const fs::path p = fs::temp_directory_path() / ("ellw_test_" + tag);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("empty manifest: zero counts, empty report file") {
    const fs::path out = temp_dir("empty");
    RunManifest m = parse_manifest("{}");
    m.out_dir = out.string();
    const Summary s = run_manifest(m);
    CHECK(s.passed == 0);
    CHECK(s.failed == 0);
    CHECK(s.refused == 0);
    CHECK(fs::exists(out / "report.jsonl"));
    CHECK(slurp(out / "report.jsonl").empty());
}

TEST_CASE("manifest grid expansion and counts match report lines") {
    const fs::path out = temp_dir("grid");
    const std::string doc = R"({
        "seed": 7,
        "out_dir": ")" + out.string() + R"(",
        "checks": [
            {"name": "unitarity", "N": [2, 3], "points": 3},
            {"name": "lemma_key", "N": [2], "n": [1, -1], "points": 2}
        ]
    })";
    RunManifest m = parse_manifest(doc);
    CHECK(m.checks_raw.size() == 4);  // 2 N-cells + 2 n-cells
    const Summary s = run_manifest(m);
    CHECK(s.passed + s.failed + s.refused == 2 * 3 + 2 * 2);
    CHECK(s.failed == 0);

    std::istringstream lines(slurp(out / "report.jsonl"));
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) ++count;
    CHECK(count == s.passed + s.refused);
}

TEST_CASE("tol override drives ybe cells below float noise") {
    const fs::path out = temp_dir("tol");
    const std::string doc = R"({
        "seed": 3,
        "out_dir": ")" + out.string() + R"(",
        "tol_overrides": {"ybe": 1e-30},
        "checks": [{"name": "ybe", "N": [2], "points": 2}]
    })";
    const Summary s = run_manifest(parse_manifest(doc));
    CHECK(s.failed == 2);
    CHECK_FALSE(s.ok());
}

TEST_CASE("malformed and unknown manifests are rejected") {
    CHECK_THROWS_AS(parse_manifest("not json"), DomainError);
    CHECK_THROWS_AS(parse_manifest(R"({"checks": [{"name": "no_such_check"}]})"), DomainError);
    CHECK_THROWS_AS(parse_manifest(R"({"tol_overrides": {"bogus": 1e-9}})"), DomainError);
    CHECK_THROWS_AS(parse_manifest(R"({"checks": [{"name": "ybe", "points": 0}]})"), DomainError);
    CHECK_THROWS_AS(
        parse_manifest(R"({"sweeps": [{"function": "nope", "zeta": [0, 0.4],
                           "ray": {"start": [0, 0], "end": [1, 0], "steps": 3}}]})"),
        DomainError);
}

TEST_CASE("starred-nome bound violations refuse instead of aborting") {
    // c = 5 with pinned zeta, tau pushes |p*| >= 1 for every draw: the cell
    // must come back as refusals, not kill the run.
    const fs::path out = temp_dir("bounds");
    const std::string doc = R"({
        "seed": 5,
        "out_dir": ")" + out.string() + R"(",
        "checks": [{"name": "t_relations", "N": [2], "c": [5.0, 0.0],
                    "zeta": [0.0, 0.3], "tau": [0.0, 0.9], "points": 2}]
    })";
    const Summary s = run_manifest(parse_manifest(doc));
    CHECK(s.refused == 2);
    CHECK(s.failed == 0);
    CHECK(s.ok());
    CHECK(slurp(out / "report.jsonl").find("|p*|>=1") != std::string::npos);
}

TEST_CASE("runtime misuse aborts the run") {
    // quasi_shift without a surface label n is caller error, not a refusal.
    RunManifest m = parse_manifest(R"({"checks": [{"name": "quasi_shift", "N": [2]}]})");
    m.out_dir = temp_dir("misuse").string();
    CHECK_THROWS_AS(run_manifest(m), DomainError);
}

TEST_CASE("determinism: repeated and parallel runs are byte-identical") {
    const std::string doc = R"({
        "seed": 11,
        "checks": [
            {"name": "unitarity", "N": [2, 3], "points": 4},
            {"name": "fy_ratio", "N": [2], "n": [1, 2], "s": [1, 2], "points": 3},
            {"name": "poisson_limit", "N": [2], "n": [1], "h": [2], "points": 2,
             "betas": [1e-2, 5e-3, 2.5e-3, 1.25e-3, 6.25e-4, 3.125e-4]}
        ]
    })";
    const fs::path out1 = temp_dir("det1"), out2 = temp_dir("det2"), out3 = temp_dir("det3");
    RunManifest m1 = parse_manifest(doc);
    m1.out_dir = out1.string();
    RunManifest m2 = parse_manifest(doc);
    m2.out_dir = out2.string();
    RunManifest m3 = parse_manifest(doc);
    m3.out_dir = out3.string();

    run_manifest(m1, 1);
    run_manifest(m2, 1);
    run_manifest(m3, 4);  // worker pool must not change the merged report

    const std::string r1 = slurp(out1 / "report.jsonl");
    CHECK(!r1.empty());
    CHECK(r1 == slurp(out2 / "report.jsonl"));
    CHECK(r1 == slurp(out3 / "report.jsonl"));
}

TEST_CASE("sweep: CSV layout and values") {
    SweepSpec sw;
    sw.function = "f_struct";
    sw.N = 2;
    sw.r_or_n = 1;
    sw.zeta = cplx(0.0, 0.4);
    sw.tau = cplx(0.0, 0.9);
    sw.ray_start = cplx(-0.2, 0.0);
    sw.ray_end = cplx(0.2, 0.0);
    sw.steps = 5;
    std::ostringstream os;
    run_sweep(sw, {}, os);

    std::istringstream is(os.str());
    std::string header;
    std::getline(is, header);
    CHECK(header == "x_re,x_im,value_re,value_im");
    int rows = 0;
    std::string line;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 5);

    // Last row equals a direct evaluation at xi = 0.2.
    StructArgs args{2, 1, SpectralPoint{cplx(0.2, 0.0)}, sw.zeta, sw.tau, {}};
    const cplx want = f_struct(args);
    std::istringstream again(os.str());
    std::string last;
    while (std::getline(again, line))
        if (!line.empty()) last = line;
    std::istringstream row(last);
    std::string cell;
    std::getline(row, cell, ',');
    const double xre = std::stod(cell);
    CHECK(std::abs(xre - 0.2) < 1e-15);
    std::getline(row, cell, ',');  // x_im
    std::getline(row, cell, ',');
    const double re = std::stod(cell);
    std::getline(row, cell, ',');
    const double im = std::stod(cell);
    CHECK(std::abs(cplx(re, im) - want) < 1e-12);
}

TEST_CASE("verify_quick: passes at N = 2, 3; N = 5 trips the three-leg guard") {
    std::ostringstream sink;
    const Summary s2 = verify_quick(2, &sink);
    CHECK(s2.failed == 0);
    CHECK(s2.refused == 0);
    CHECK(s2.passed == 12);

    const Summary s3 = verify_quick(3);
    CHECK(s3.failed == 0);
    CHECK(s3.refused == 0);

    const Summary s5 = verify_quick(5);
    CHECK(s5.failed == 0);
    CHECK(s5.refused == 2);  // the two ybe evaluations
    CHECK(s5.ok());

    CHECK_THROWS_AS(verify_quick(1), DomainError);
    CHECK_THROWS_AS(verify_quick(7), DomainError);
}
