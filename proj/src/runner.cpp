#include "nls/runner.hpp"

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <thread>
#include <type_traits>

#include <json.hpp>

#include "nls/asymptotics.hpp"
#include "nls/maxprinciple.hpp"
#include "nls/run_config.hpp"
#include "nls/spectral.hpp"

namespace nls {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

struct Timings {
    std::map<std::string, double> seconds;

    template <typename F>
    auto time(const std::string& name, F&& f) {
        const auto start = std::chrono::steady_clock::now();
        if constexpr (std::is_void_v<decltype(f())>) {
            f();
            seconds[name] +=
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        } else {
            auto out = f();
            seconds[name] +=
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            return out;
        }
    }
};

/// Owns the output directory: collects payload files, then writes them plus a
/// manifest referencing each by name and content hash.
class OutputWriter {
public:
    OutputWriter(const RunConfig& cfg, std::string subcommand)
        : cfg_(cfg), subcommand_(std::move(subcommand)) {}

    void add(const std::string& name, std::string bytes) {
        files_.emplace_back(name, std::move(bytes));
    }

    void warn(const std::string& message) { warnings_.push_back(message); }
    void note(const std::string& key, const json& value) { extra_[key] = value; }

    void commit(const Timings& timings) {
        fs::create_directories(cfg_.output_directory);
        json manifest;
        manifest["tool_version"] = kToolVersion;
        manifest["subcommand"] = subcommand_;
        manifest["config"] = cfg_.raw;
        manifest["seed"] = cfg_.solver.seed;
        manifest["grid"] = {{"dimension", cfg_.problem.domain.dimension},
                            {"cells", {cfg_.problem.domain.cells[0], cfg_.problem.domain.cells[1]}},
                            {"points", cfg_.problem.domain.size()},
                            {"h", cfg_.problem.domain.h}};
        manifest["timings_seconds"] = timings.seconds;
        manifest["warnings"] = warnings_;
        manifest["generated_at_unix"] =
            std::chrono::duration_cast<std::chrono::seconds>(
                std::chrono::system_clock::now().time_since_epoch())
                .count();
        for (const auto& [key, value] : extra_.items()) {
            manifest[key] = value;
        }
        json files = json::array();
        for (const auto& [name, bytes] : files_) {
            const fs::path path = fs::path(cfg_.output_directory) / name;
            std::ofstream out(path, std::ios::binary);
            out << bytes;
            files.push_back({{"name", name}, {"fnv1a64", hex64(fnv1a64(bytes))}});
        }
        manifest["files"] = files;
        std::ofstream mout(fs::path(cfg_.output_directory) / "manifest.json");
        mout << manifest.dump(2) << "\n";
    }

private:
    const RunConfig& cfg_;
    std::string subcommand_;
    std::vector<std::pair<std::string, std::string>> files_;
    std::vector<std::string> warnings_;
    json extra_ = json::object();
};

json eigen_result_json(const EigenResult& er, const RunConfig& cfg) {
    json out;
    out["lambda1"] = er.lambda1;
    out["radius"] = er.radius;
    out["is_principal"] = er.is_principal;
    out["lambda_star"] = er.lambda_star;
    out["iters"] = er.iters;
    out["steps_per_period"] = er.steps_per_period;
    out["residuals"] = {{"periodicity", er.periodicity_residual}};
    if (er.algebraic_residual) {
        out["residuals"]["algebraic"] = *er.algebraic_residual;
    }
    out["config_echo"] = cfg.raw;
    return out;
}

// stride 0 = auto: subsample snapshots so the file stays near 200k rows
std::string eigenfunction_csv(const EigenResult& er, const Domain& domain, int stride) {
    if (stride <= 0) {
        const long rows = static_cast<long>(er.snapshots.size()) * domain.size();
        stride = static_cast<int>(std::max(1L, rows / 200000));
    }
    std::string csv = domain.dimension == 2 ? "t,point,x,y,value\n" : "t,point,x,value\n";
    const size_t last = er.snapshots.size() - 1;
    for (size_t j = 0; j <= last; j += stride) {
        for (int i = 0; i < domain.size(); ++i) {
            csv += format_double(er.snapshot_times[j]);
            csv += ',' + std::to_string(i);
            csv += ',' + format_double(domain.points[i].x);
            if (domain.dimension == 2) {
                csv += ',' + format_double(domain.points[i].y);
            }
            csv += ',' + format_double(er.snapshots[j][i]);
            csv += '\n';
        }
    }
    return csv;
}

bool wants(const RunConfig& cfg, const std::string& fmt) {
    for (const auto& f : cfg.formats) {
        if (f == fmt) return true;
    }
    return false;
}

std::string sweep_csv(const SweepResult& sweep) {
    std::string csv = "param,lambda1,lambda_star,is_principal";
    for (const auto& ref : sweep.references) {
        csv += ",gap_" + ref.label;
    }
    csv += '\n';
    for (const auto& pt : sweep.points) {
        csv += format_double(pt.param);
        if (pt.ok) {
            csv += ',' + format_double(pt.lambda1);
            csv += ',' + format_double(pt.lambda_star);
            csv += pt.is_principal ? ",1" : ",0";
            for (const auto& ref : sweep.references) {
                csv += ',' + format_double(pt.gaps.at(ref.label));
            }
        } else {
            csv += ",,,";
            for (size_t k = 0; k < sweep.references.size(); ++k) csv += ',';
        }
        csv += '\n';
    }
    return csv;
}

// Payload JSON is fully deterministic; per-point wall clock goes to the
// manifest instead.
json sweep_json(const SweepResult& sweep) {
    json out;
    out["parameter"] = sweep.parameter;
    json refs = json::array();
    for (const auto& ref : sweep.references) {
        refs.push_back({{"label", ref.label},
                        {"value", ref.value},
                        {"limit_end", ref.toward_small ? "small" : "large"},
                        {"gap_monotone", ref.gap_monotone}});
    }
    out["references"] = refs;
    json pts = json::array();
    for (const auto& pt : sweep.points) {
        json p;
        p["param"] = pt.param;
        p["ok"] = pt.ok;
        if (pt.ok) {
            p["lambda1"] = pt.lambda1;
            p["lambda_star"] = pt.lambda_star;
            p["is_principal"] = pt.is_principal;
            p["iters"] = pt.iters;
            p["steps_per_period"] = pt.steps_per_period;
            p["cells"] = {pt.cells_used[0], pt.cells_used[1]};
            if (pt.upper_bound_margin) {
                p["upper_bound_margin"] = *pt.upper_bound_margin;
            }
            p["gaps"] = pt.gaps;
        } else {
            p["error"] = pt.error;
        }
        pts.push_back(p);
    }
    out["points"] = pts;
    return out;
}

json sweep_manifest_points(const SweepResult& sweep) {
    json pts = json::array();
    for (const auto& pt : sweep.points) {
        pts.push_back({{"param", pt.param},
                       {"cells", {pt.cells_used[0], pt.cells_used[1]}},
                       {"wall_seconds", pt.wall_seconds}});
    }
    return pts;
}

std::vector<double> require_value_list(const json& command, const char* key) {
    if (!command.contains(key) || !command.at(key).is_array() || command.at(key).empty()) {
        throw ConfigInvalid(std::string("/command/") + key,
                            "must be a non-empty array of numbers");
    }
    std::vector<double> out;
    for (const auto& v : command.at(key)) {
        if (!v.is_number()) {
            throw ConfigInvalid(std::string("/command/") + key, "must contain numbers only");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

void record_sweep_warnings(const SweepResult& sweep, OutputWriter& writer) {
    for (const auto& pt : sweep.points) {
        if (!pt.ok) {
            writer.warn("point " + format_double(pt.param) + " failed: " + pt.error);
        } else if (!pt.is_principal) {
            writer.warn("point " + format_double(pt.param) +
                        ": lambda1 >= lambda_star - 1e-8; discrete Perron data reported but "
                        "principality is not certified");
        }
    }
}

int resolve_jobs(int flag_jobs, int point_count) {
    if (const char* env = std::getenv("NONLOCAL_SPECTRA_JOBS")) {
        const int v = std::atoi(env);
        if (v > 0) flag_jobs = v;
    }
    if (flag_jobs > 0) {
        return flag_jobs;
    }
    // default: one worker per sweep point, capped at hardware parallelism
    const int hw = std::max(1u, std::thread::hardware_concurrency());
    return std::min(point_count, hw);
}

struct CliArgs {
    std::string subcommand;
    std::string config_path;
    int jobs = 0;
};

CliArgs parse_cli(const std::vector<std::string>& args) {
    static const char* kUsage =
        "usage: nonlocal-spectra <eig|sweep-d|sweep-sigma|poincare|certify|mp-check|"
        "oracle-compare> --config <file> [--jobs N]";
    if (args.empty()) {
        throw UnknownSubcommand(std::string("no subcommand given\n") + kUsage);
    }
    CliArgs cli;
    cli.subcommand = args[0];
    const std::vector<std::string> known = {"eig",     "sweep-d", "sweep-sigma",   "poincare",
                                            "certify", "mp-check", "oracle-compare"};
    bool ok = false;
    for (const auto& name : known) {
        ok = ok || name == cli.subcommand;
    }
    if (!ok) {
        throw UnknownSubcommand("unknown subcommand '" + cli.subcommand + "'\n" + kUsage);
    }
    for (size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            cli.config_path = args[++i];
        } else if (args[i] == "--jobs" && i + 1 < args.size()) {
            cli.jobs = std::atoi(args[++i].c_str());
        } else {
            throw ValidationError("unrecognized argument '" + args[i] + "'\n" + kUsage);
        }
    }
    if (cli.config_path.empty()) {
        throw ValidationError(std::string("--config is required\n") + kUsage);
    }
    return cli;
}

SpaceTimeField field_from_command(const RunConfig& cfg, const NonlocalOperator& op) {
    if (!cfg.command.contains("phi") || !cfg.command.at("phi").is_string()) {
        throw ConfigInvalid("/command/phi", "must be an expression string");
    }
    std::optional<Expression> phi, dphi;
    try {
        phi = Expression::parse(cfg.command.at("phi").get<std::string>());
    } catch (const Error& e) {
        throw ConfigInvalid("/command/phi", e.what());
    }
    if (cfg.command.contains("dphi_dt")) {
        if (!cfg.command.at("dphi_dt").is_string()) {
            throw ConfigInvalid("/command/dphi_dt", "must be an expression string");
        }
        try {
            dphi = Expression::parse(cfg.command.at("dphi_dt").get<std::string>());
        } catch (const Error& e) {
            throw ConfigInvalid("/command/dphi_dt", e.what());
        }
    }
    return expression_field(op.domain(), *phi, dphi ? &*dphi : nullptr);
}

int execute(const CliArgs& cli, const RunConfig& cfg) {
    Timings timings;
    OutputWriter writer(cfg, cli.subcommand);

    if (cli.subcommand == "eig") {
        NonlocalOperator op(cfg.problem);
        const int stride = cfg.command.value("snapshot_stride", 0);
        if (stride < 0) {
            throw ConfigInvalid("/command/snapshot_stride", "must be nonnegative (0 = auto)");
        }
        const EigenResult er =
            timings.time("eig", [&] { return principal_spectrum_point(op, cfg.solver); });
        if (!er.is_principal) {
            writer.warn("lambda1 >= lambda_star - 1e-8; discrete Perron data reported but "
                        "principality is not certified");
        }
        writer.add("eig.json", eigen_result_json(er, cfg).dump(2) + "\n");
        if (wants(cfg, "csv")) {
            writer.add("eigenfunction.csv", eigenfunction_csv(er, op.domain(), stride));
        }
        writer.commit(timings);
        return 0;
    }

    if (cli.subcommand == "sweep-d") {
        const auto values = require_value_list(cfg.command, "values");
        const int jobs = resolve_jobs(cli.jobs, static_cast<int>(values.size()));
        const SweepResult sweep = timings.time("sweep_d", [&] {
            return sweep_dispersal_rate(cfg.problem, cfg.solver, values, jobs);
        });
        record_sweep_warnings(sweep, writer);
        writer.note("sweep_points", sweep_manifest_points(sweep));
        if (wants(cfg, "csv")) writer.add("sweep_d.csv", sweep_csv(sweep));
        writer.add("sweep_d.json", sweep_json(sweep).dump(2) + "\n");
        writer.commit(timings);
        return 0;
    }

    if (cli.subcommand == "sweep-sigma") {
        const auto values = require_value_list(cfg.command, "values");
        const double k = cfg.command.contains("k") ? cfg.command.at("k").get<double>()
                                                   : cfg.problem.ess_k;
        const bool require_avg = cfg.command.value("require_averaging_limit", false);
        const int max_points = cfg.command.value("max_points", 20000);
        const int jobs = resolve_jobs(cli.jobs, static_cast<int>(values.size()));
        const SweepResult sweep = timings.time("sweep_sigma", [&] {
            return sweep_dispersal_range(cfg.problem, cfg.solver, values, k, jobs, require_avg,
                                         max_points);
        });
        record_sweep_warnings(sweep, writer);
        writer.note("sweep_points", sweep_manifest_points(sweep));
        if (wants(cfg, "csv")) writer.add("sweep_sigma.csv", sweep_csv(sweep));
        writer.add("sweep_sigma.json", sweep_json(sweep).dump(2) + "\n");
        writer.commit(timings);
        return 0;
    }

    if (cli.subcommand == "poincare") {
        const PoincareResult pr = timings.time("poincare", [&] {
            return poincare_constant(cfg.problem.domain, cfg.problem.kernel, cfg.problem.sigma);
        });
        json out;
        out["constant"] = pr.constant;
        out["zero_eigenvalue"] = pr.zero_eigenvalue;
        out["n"] = cfg.problem.domain.size();
        out["sigma"] = cfg.problem.sigma;
        out["config_echo"] = cfg.raw;
        writer.add("poincare.json", out.dump(2) + "\n");
        writer.commit(timings);
        return 0;
    }

    if (cli.subcommand == "certify") {
        NonlocalOperator op(cfg.problem);
        if (!cfg.command.contains("lambda") || !cfg.command.at("lambda").is_number()) {
            throw ConfigInvalid("/command/lambda", "must be a number");
        }
        const double lambda = cfg.command.at("lambda").get<double>();
        const std::string dir = cfg.command.value("direction", "subsolution");
        if (dir != "subsolution" && dir != "supersolution") {
            throw ConfigInvalid("/command/direction",
                                "must be 'subsolution' or 'supersolution'");
        }
        const int mt = cfg.command.value("mt_samples", 64);
        if (mt < 1) {
            throw ConfigInvalid("/command/mt_samples", "must be a positive integer");
        }
        const SpaceTimeField phi = field_from_command(cfg, op);
        const auto verdict = timings.time("certify", [&] {
            return certify_test_pair(op, lambda, phi,
                                     dir == "subsolution" ? TestPairDirection::Subsolution
                                                          : TestPairDirection::Supersolution,
                                     mt);
        });
        const auto cw =
            timings.time("cw_bounds", [&] { return collatz_wielandt_bounds(op, phi, mt); });
        json out;
        out["lambda"] = lambda;
        out["direction"] = dir;
        out["holds"] = verdict.holds;
        out["worst_residual"] = verdict.worst_residual;
        out["worst_point"] = verdict.worst_point;
        out["worst_time"] = verdict.worst_time;
        out["cw_lower"] = cw.lower;
        out["cw_upper"] = cw.upper;
        out["config_echo"] = cfg.raw;
        writer.add("certify.json", out.dump(2) + "\n");
        writer.commit(timings);
        return 0;
    }

    if (cli.subcommand == "mp-check") {
        NonlocalOperator op(cfg.problem);
        const MpVerdict verdict =
            timings.time("mp_check", [&] { return mp_verdict(op, cfg.solver); });
        json out;
        out["lambda1"] = verdict.lambda1;
        out["strong_mp"] = verdict.strong_mp;
        out["strict_mp"] = verdict.strict_mp;
        out["conclusive"] = verdict.conclusive;
        if (!verdict.conclusive) {
            writer.warn("lambda1 is inside the +-1e-8 dead band: inconclusive at this "
                        "resolution");
        }
        json cert;
        if (verdict.supersolution) {
            cert["type"] = "supersolution";
            cert["worst_residual"] = verdict.supersolution->worst_residual;
            cert["min_value"] = verdict.supersolution->min_phi;
        } else if (verdict.counterexample) {
            cert["type"] = "counterexample";
            cert["delta"] = verdict.counterexample->delta;
            cert["worst_residual"] = verdict.counterexample->min_Lu;
            double min_u = std::numeric_limits<double>::infinity();
            for (double v : verdict.counterexample->u0) min_u = std::min(min_u, v);
            cert["min_value"] = min_u;
        }
        out["certificate"] = cert;
        out["config_echo"] = cfg.raw;
        writer.add("mp_check.json", out.dump(2) + "\n");
        writer.commit(timings);
        return 0;
    }

    // oracle-compare
    NonlocalOperator op(cfg.problem);
    const EigenResult er =
        timings.time("power", [&] { return principal_spectrum_point(op, cfg.solver); });
    const double dense =
        timings.time("dense", [&] { return dense_oracle(op, cfg.solver); });
    json out;
    out["lambda1_power"] = er.lambda1;
    out["lambda1_dense"] = dense;
    out["abs_diff"] = std::abs(er.lambda1 - dense);
    out["autonomous"] = op.autonomous();
    out["config_echo"] = cfg.raw;
    writer.add("oracle_compare.json", out.dump(2) + "\n");
    writer.commit(timings);
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CliArgs cli;
    RunConfig cfg;
    try {
        cli = parse_cli(args);
        cfg = load_config(cli.config_path);
        // Validate module preconditions before any computation: the operator
        // constructor checks parameter signs and grid resolvability. The
        // sigma sweep ignores the base sigma and refines its own grids, so it
        // only needs the parsed fields.
        if (cli.subcommand != "sweep-sigma") {
            NonlocalOperator probe(cfg.problem);
            (void)probe;
        }
    } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    try {
        return execute(cli, cfg);
    } catch (const ConfigInvalid& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

}  // namespace nls
