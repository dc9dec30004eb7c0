#include "nls/run_config.hpp"

#include <cmath>
#include <fstream>

#include "nls/expression.hpp"

namespace nls {

namespace {

using nlohmann::json;

const json& require(const json& j, const std::string& parent, const char* key) {
    if (!j.contains(key)) {
        throw ConfigInvalid(parent + "/" + key, "missing");
    }
    return j.at(key);
}

double require_number(const json& j, const std::string& parent, const char* key) {
    const json& v = require(j, parent, key);
    if (!v.is_number()) {
        throw ConfigInvalid(parent + "/" + key, "must be a number");
    }
    return v.get<double>();
}

double number_or(const json& j, const std::string& parent, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) {
        throw ConfigInvalid(parent + "/" + key, "must be a number");
    }
    return j.at(key).get<double>();
}

std::string require_string(const json& j, const std::string& parent, const char* key) {
    const json& v = require(j, parent, key);
    if (!v.is_string()) {
        throw ConfigInvalid(parent + "/" + key, "must be a string");
    }
    return v.get<std::string>();
}

Expression parse_expression(const json& block, const std::string& path, const char* key) {
    const std::string src = require_string(block, path, key);
    try {
        return Expression::parse(src);
    } catch (const Error& e) {
        throw ConfigInvalid(path + "/" + key, e.what());
    }
}

Domain parse_domain(const json& problem, const std::string& path) {
    const json& dom = require(problem, path, "domain");
    const std::string dpath = path + "/domain";
    const json& jd = require(dom, dpath, "dimension");
    if (!jd.is_number_integer()) {
        throw ConfigInvalid(dpath + "/dimension", "must be an integer");
    }
    const int dimension = jd.get<int>();
    if (dimension != 1 && dimension != 2) {
        throw ConfigInvalid(dpath + "/dimension", "must be 1 or 2");
    }

    const json& jb = require(dom, dpath, "bounds");
    if (!jb.is_array() || static_cast<int>(jb.size()) != dimension) {
        throw ConfigInvalid(dpath + "/bounds", "must be an array with one [lo, hi] per axis");
    }
    std::vector<std::array<double, 2>> bounds;
    for (size_t a = 0; a < jb.size(); ++a) {
        const json& iv = jb[a];
        if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number()) {
            throw ConfigInvalid(dpath + "/bounds/" + std::to_string(a), "must be [lo, hi]");
        }
        bounds.push_back({iv[0].get<double>(), iv[1].get<double>()});
    }

    const json& jc = require(dom, dpath, "cells");
    if (!jc.is_array() || static_cast<int>(jc.size()) != dimension) {
        throw ConfigInvalid(dpath + "/cells", "must be an array with one count per axis");
    }
    std::vector<int> cells;
    for (size_t a = 0; a < jc.size(); ++a) {
        if (!jc[a].is_number_integer()) {
            throw ConfigInvalid(dpath + "/cells/" + std::to_string(a), "must be an integer");
        }
        cells.push_back(jc[a].get<int>());
    }

    try {
        return build_domain(dimension, bounds, cells);
    } catch (const Error& e) {
        throw ConfigInvalid(dpath, e.what());
    }
}

Kernel parse_kernel(const json& problem, const std::string& path, int dimension) {
    const json& k = require(problem, path, "kernel");
    const std::string kpath = path + "/kernel";
    const std::string family = require_string(k, kpath, "family");
    KernelFamily fam;
    try {
        fam = kernel_family_from_name(family);
    } catch (const Error&) {
        std::string valid;
        for (const auto& name : kernel_family_names()) {
            valid += valid.empty() ? name : ", " + name;
        }
        throw ConfigInvalid(kpath + "/family",
                            "unknown family '" + family + "'; valid families: " + valid);
    }
    const double gamma = number_or(k, kpath, "gamma", 1.0);
    if (!(gamma > 0.0)) {
        throw ConfigInvalid(kpath + "/gamma", "must be positive");
    }
    Kernel kernel = make_kernel(fam, gamma);
    if (kernel.dimension != dimension) {
        throw ConfigInvalid(kpath + "/family", "family '" + family + "' is " +
                                                   std::to_string(kernel.dimension) +
                                                   "D but the domain is " +
                                                   std::to_string(dimension) + "D");
    }
    return kernel;
}

void check_time_periodicity(const Expression& c, double T, const std::string& path) {
    for (double frac : {0.0, 0.31, 0.77}) {
        const double t = frac * T;
        const double lhs = c.eval(t, 0.0, 0.0);
        const double rhs = c.eval(t + T, 0.0, 0.0);
        if (std::abs(lhs - rhs) > 1e-9 * (1.0 + std::abs(lhs))) {
            throw ConfigInvalid(path, "expression is not T-periodic (T = " +
                                          std::to_string(T) + "): c(" + std::to_string(t) +
                                          ") != c(t + T)");
        }
    }
}

Coefficient parse_coefficient(const json& problem, const std::string& path,
                              const Domain& domain) {
    const json& c = require(problem, path, "coefficient");
    const std::string cpath = path + "/coefficient";
    if (!c.is_object()) {
        throw ConfigInvalid(cpath, "must be an object");
    }
    const std::string form = require_string(c, cpath, "form");
    const double T = number_or(c, cpath, "T", 1.0);
    if (!(T > 0.0)) {
        throw ConfigInvalid(cpath + "/T", "must be positive");
    }
    const bool lipschitz = c.value("lipschitz_in_x", true);

    auto space_fn = [&](const Expression& e) {
        if (e.uses_t()) {
            throw ConfigInvalid(cpath + "/b", "spatial factor must not use t");
        }
        if (e.uses_y() && domain.dimension == 1) {
            throw ConfigInvalid(cpath + "/b", "y is not available on a 1D domain");
        }
        return Coefficient::SpaceFn(
            [e](const Point& p) { return e.eval(0.0, p.x, p.y); });
    };
    auto time_fn = [&](const Expression& e) {
        if (e.uses_space()) {
            throw ConfigInvalid(cpath + "/c", "time factor must not use x or y");
        }
        return Coefficient::TimeFn([e](double t) { return e.eval(t, 0.0, 0.0); });
    };

    if (form == "constant") {
        return Coefficient::constant(require_number(c, cpath, "value"), T);
    }
    if (form == "space_only") {
        return Coefficient::space_only(space_fn(parse_expression(c, cpath, "b")), T, lipschitz);
    }
    if (form == "time_only") {
        Expression ce = parse_expression(c, cpath, "c");
        check_time_periodicity(ce, T, cpath + "/c");
        return Coefficient::time_only(time_fn(ce), T, lipschitz);
    }
    if (form == "separable" || form == "product") {
        Expression be = parse_expression(c, cpath, "b");
        Expression ce = parse_expression(c, cpath, "c");
        check_time_periodicity(ce, T, cpath + "/c");
        return form == "separable"
                   ? Coefficient::separable(space_fn(be), time_fn(ce), T, lipschitz)
                   : Coefficient::product(space_fn(be), time_fn(ce), T, lipschitz);
    }
    if (form == "tabulated") {
        const json& values = require(c, cpath, "values");
        if (!values.is_array() || values.size() < 2) {
            throw ConfigInvalid(cpath + "/values",
                                "must be an array of at least 2 time slices");
        }
        std::vector<std::vector<double>> slices;
        for (size_t j = 0; j < values.size(); ++j) {
            if (!values[j].is_array() ||
                values[j].size() != static_cast<size_t>(domain.size())) {
                throw ConfigInvalid(cpath + "/values/" + std::to_string(j),
                                    "must hold one value per grid point (" +
                                        std::to_string(domain.size()) + ")");
            }
            slices.push_back(values[j].get<std::vector<double>>());
        }
        try {
            return Coefficient::tabulated(T, std::move(slices), domain, lipschitz);
        } catch (const Error& e) {
            throw ConfigInvalid(cpath + "/values", e.what());
        }
    }
    throw ConfigInvalid(cpath + "/form",
                        "unknown form '" + form +
                            "'; valid forms: constant, time_only, space_only, separable, "
                            "product, tabulated");
}

}  // namespace

RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) {
        throw ConfigInvalid("", "config must be a JSON object");
    }
    RunConfig rc;
    rc.raw = doc;

    const json& problem = require(doc, "", "problem");
    const std::string ppath = "/problem";
    rc.problem.domain = parse_domain(problem, ppath);
    rc.problem.kernel = parse_kernel(problem, ppath, rc.problem.domain.dimension);
    rc.problem.coeff = parse_coefficient(problem, ppath, rc.problem.domain);

    rc.problem.dispersal_rate = require_number(problem, ppath, "D");
    if (!(rc.problem.dispersal_rate > 0.0)) {
        throw ConfigInvalid(ppath + "/D", "must be positive");
    }
    rc.problem.sigma = require_number(problem, ppath, "sigma");
    if (!(rc.problem.sigma > 0.0)) {
        throw ConfigInvalid(ppath + "/sigma", "must be positive");
    }
    rc.problem.ess_k = number_or(problem, ppath, "k", 0.0);
    if (!(rc.problem.ess_k >= 0.0)) {
        throw ConfigInvalid(ppath + "/k", "must be nonnegative");
    }
    const std::string boundary =
        problem.contains("boundary") ? require_string(problem, ppath, "boundary") : "neumann";
    if (boundary == "neumann") {
        rc.problem.boundary = BoundaryType::Neumann;
    } else if (boundary == "dirichlet") {
        rc.problem.boundary = BoundaryType::Dirichlet;
    } else {
        throw ConfigInvalid(ppath + "/boundary", "must be 'neumann' or 'dirichlet'");
    }

    if (doc.contains("solver")) {
        const json& solver = doc.at("solver");
        const std::string spath = "/solver";
        if (!solver.is_object()) {
            throw ConfigInvalid(spath, "must be an object");
        }
        const double m = number_or(solver, spath, "m", 0.0);
        if (m < 0.0 || m != std::floor(m)) {
            throw ConfigInvalid(spath + "/m", "must be a nonnegative integer (0 = auto)");
        }
        rc.solver.steps_per_period = static_cast<int>(m);
        rc.solver.power_tol = number_or(solver, spath, "power_tol", 1e-10);
        if (!(rc.solver.power_tol > 0.0)) {
            throw ConfigInvalid(spath + "/power_tol", "must be positive");
        }
        const double iters = number_or(solver, spath, "max_power_iters", 10000.0);
        if (iters < 1.0 || iters != std::floor(iters)) {
            throw ConfigInvalid(spath + "/max_power_iters", "must be a positive integer");
        }
        rc.solver.max_power_iters = static_cast<int>(iters);
        rc.solver.positivity_tol = number_or(solver, spath, "positivity_tol", 1e-12);
        if (rc.solver.positivity_tol < 0.0) {
            throw ConfigInvalid(spath + "/positivity_tol", "must be nonnegative");
        }
        const double seed = number_or(solver, spath, "seed", 0.0);
        if (seed < 0.0 || seed != std::floor(seed)) {
            throw ConfigInvalid(spath + "/seed", "must be a nonnegative integer");
        }
        rc.solver.seed = static_cast<std::uint64_t>(seed);
    }

    if (doc.contains("command")) {
        if (!doc.at("command").is_object()) {
            throw ConfigInvalid("/command", "must be an object");
        }
        rc.command = doc.at("command");
    }

    if (doc.contains("output")) {
        const json& output = doc.at("output");
        if (!output.is_object()) {
            throw ConfigInvalid("/output", "must be an object");
        }
        if (output.contains("directory")) {
            rc.output_directory = require_string(output, "/output", "directory");
        }
        if (output.contains("formats")) {
            const json& f = output.at("formats");
            if (!f.is_array()) {
                throw ConfigInvalid("/output/formats", "must be an array");
            }
            rc.formats.clear();
            for (const auto& item : f) {
                if (!item.is_string() ||
                    (item != "json" && item != "csv")) {
                    throw ConfigInvalid("/output/formats", "entries must be 'json' or 'csv'");
                }
                rc.formats.push_back(item.get<std::string>());
            }
        }
    }
    return rc;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigInvalid("", "cannot open config file '" + path + "'");
    }
    json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw ConfigInvalid("", "config file '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_config(doc);
}

}  // namespace nls
