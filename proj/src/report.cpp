#include "ellw/report.hpp"

#include <cmath>
#include <nlohmann/json.hpp>

namespace ellw {

double scaled_residual(cplx lhs, cplx rhs, double* scale_out) {
    const double scale = std::max(1.0, std::abs(lhs));
    if (scale_out) *scale_out = scale;
    return std::abs(lhs - rhs) / scale;
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json pair(cplx v) { return ordered_json::array({v.real(), v.imag()}); }

ordered_json base_fields(const CheckReport& r) {
    ordered_json j;
    j["name"] = r.name;
    j["N"] = r.N;
    j["n"] = r.n ? ordered_json(*r.n) : ordered_json(nullptr);
    j["h"] = r.h ? ordered_json(*r.h) : ordered_json(nullptr);
    j["zeta"] = pair(r.zeta);
    j["tau"] = pair(r.tau);
    j["c"] = r.c ? pair(*r.c) : ordered_json(nullptr);
    ordered_json pts = ordered_json::array();
    for (cplx p : r.points) pts.push_back(pair(p));
    j["points"] = pts;
    j["seed"] = r.seed;
    return j;
}

}  // namespace

std::string to_json_line(const CheckReport& r) {
    ordered_json j = base_fields(r);
    j["residual"] = r.residual;
    j["scale"] = r.scale;
    j["tol"] = r.tol;
    j["pass"] = r.pass;
    j["status"] = r.pass ? "pass" : "fail";
    if (r.cond) j["cond"] = *r.cond;
    return j.dump();
}

std::string refused_json_line(const CheckReport& partial, const std::string& reason) {
    ordered_json j = base_fields(partial);
    j["residual"] = nullptr;
    j["scale"] = nullptr;
    j["tol"] = partial.tol;
    j["pass"] = nullptr;
    j["status"] = "refused";
    j["reason"] = reason;
    return j.dump();
}

}  // namespace ellw
