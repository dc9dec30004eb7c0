// Acceptance suite: one criterion per run function, one PASS/FAIL line each.
// Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nls/asymptotics.hpp"
#include "nls/maxprinciple.hpp"
#include "nls/run_config.hpp"
#include "nls/runner.hpp"
#include "nls/spectral.hpp"

using namespace nls;
using std::numbers::pi;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
    void note(const std::string& what) {
        if (detail.empty()) detail = what;
    }
};

Domain interval_domain(int n) {
    return build_domain(1, std::vector<std::array<double, 2>>{{0.0, 1.0}}, std::vector<int>{n});
}

Domain square_domain(int n) {
    return build_domain(2, std::vector<std::array<double, 2>>{{0.0, 1.0}, {0.0, 1.0}},
                        std::vector<int>{n, n});
}

OperatorSpec spec_1d(int n, Coefficient coeff, double D = 1.0, double sigma = 1.0,
                     double k = 0.0, KernelFamily family = KernelFamily::Epanechnikov1D) {
    OperatorSpec spec;
    spec.domain = interval_domain(n);
    spec.kernel = make_kernel(family, 1.0);
    spec.coeff = std::move(coeff);
    spec.dispersal_rate = D;
    spec.sigma = sigma;
    spec.ess_k = k;
    return spec;
}

OperatorSpec spec_2d(int n, Coefficient coeff, double D = 1.0, double sigma = 1.0,
                     double k = 0.0, KernelFamily family = KernelFamily::RadialBump2D) {
    OperatorSpec spec;
    spec.domain = square_domain(n);
    spec.kernel = make_kernel(family, 1.0);
    spec.coeff = std::move(coeff);
    spec.dispersal_rate = D;
    spec.sigma = sigma;
    spec.ess_k = k;
    return spec;
}

// The Theorem A/B study coefficient: a = cos(pi x) + sin(2 pi t), T = 1.
Coefficient study_coefficient() {
    return Coefficient::separable([](const Point& p) { return std::cos(pi * p.x); },
                                  [](double t) { return std::sin(2.0 * pi * t); }, 1.0);
}

/// Deterministic random trigonometric coefficient; autonomous or separable.
Coefficient random_coefficient(std::mt19937_64& rng, bool periodic, int dimension = 1,
                               double amplitude = 1.0) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const double a0 = unif(rng), a1 = unif(rng), a2 = unif(rng);
    auto b = [a0, a1, a2, dimension, amplitude](const Point& p) {
        double v = a0 + a1 * std::cos(pi * p.x) + a2 * std::cos(2.0 * pi * p.x);
        if (dimension == 2) v += a1 * std::cos(pi * p.y);
        return amplitude * v;
    };
    if (!periodic) {
        return Coefficient::space_only(b);
    }
    const double c1 = unif(rng), c2 = unif(rng);
    return Coefficient::separable(
        b,
        [c1, c2, amplitude](double t) {
            return amplitude * (c1 * std::sin(2.0 * pi * t) + c2 * std::cos(2.0 * pi * t));
        },
        1.0);
}

// First AC-3 autonomous spec; AC-13 shifts this one. A compactly reaching
// kernel (gamma sigma well inside the domain) keeps the cutoff layer of the
// counterexample construction invisible to interior points, and a damped
// amplitude keeps the eigenfunction away from zero.
OperatorSpec ac3_base_spec() {
    std::mt19937_64 rng(1001);
    return spec_1d(40, random_coefficient(rng, false, 1, 0.8), 1.2, 0.35);
}

const EigenResult& ac3_base_result() {
    static const NonlocalOperator op(ac3_base_spec());
    static const EigenResult er = principal_spectrum_point(op, EvolutionConfig{});
    return er;
}

bool ac1(Check& c) {
    EvolutionConfig cfg;
    for (auto [D, sigma, k] : {std::tuple{1.0, 1.0, 0.0}, std::tuple{5.0, 0.5, 1.0}}) {
        const NonlocalOperator op(spec_1d(40, Coefficient::constant(2.0), D, sigma, k));
        const EigenResult er = principal_spectrum_point(op, cfg);
        c.require(std::abs(er.lambda1 + 2.0) <= 1e-8,
                  "lambda1 = " + std::to_string(er.lambda1));
        double lo = 1e300, hi = 0.0;
        for (const auto& snap : er.snapshots) {
            for (double v : snap) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
        c.require(hi / lo <= 1.0 + 1e-8, "eigenfunction ratio " + std::to_string(hi / lo));
    }
    return c.ok;
}

bool ac2(Check& c) {
    EvolutionConfig cfg;
    cfg.steps_per_period = 128;
    const Coefficient a =
        Coefficient::time_only([](double t) { return 1.0 + std::sin(2.0 * pi * t); }, 1.0);
    const NonlocalOperator op(spec_1d(24, a));
    const EigenResult er = principal_spectrum_point(op, cfg);
    c.require(std::abs(er.lambda1 + 1.0) <= 1e-6, "lambda1 = " + std::to_string(er.lambda1));
    c.note("lambda1 = " + std::to_string(er.lambda1));
    return c.ok;
}

bool ac3(Check& c) {
    EvolutionConfig cfg;
    std::mt19937_64 rng(1002);
    double worst = 0.0;

    {
        // spec #1 is the AC-13 base problem
        const NonlocalOperator op(ac3_base_spec());
        worst = std::abs(ac3_base_result().lambda1 - dense_oracle(op, cfg));
    }
    for (int trial = 0; trial < 19; ++trial) {
        const Coefficient coeff = random_coefficient(rng, false);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const int n = 12 + static_cast<int>(unif(rng) * 28);  // <= 40
        const double D = 0.3 + 1.2 * unif(rng);
        const double sigma = 0.5 + unif(rng);
        const double k = unif(rng);
        const NonlocalOperator op(spec_1d(n, coeff, D, sigma, k));
        const double lp = principal_spectrum_point(op, cfg).lambda1;
        const double ld = dense_oracle(op, cfg);
        worst = std::max(worst, std::abs(lp - ld));
    }
    for (int trial = 0; trial < 10; ++trial) {
        const Coefficient coeff = random_coefficient(rng, true);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const int n = 12 + static_cast<int>(unif(rng) * 13);  // <= 25
        const double D = 0.3 + 1.2 * unif(rng);
        const double sigma = 0.5 + unif(rng);
        const NonlocalOperator op(spec_1d(n, coeff, D, sigma));
        const double lp = principal_spectrum_point(op, cfg).lambda1;
        const double ld = dense_oracle(op, cfg);
        worst = std::max(worst, std::abs(lp - ld));
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "worst |power - dense| over 30 specs: %.2e", worst);
    c.require(worst <= 1e-6, buf);
    c.note(buf);
    return c.ok;
}

bool ac4(Check& c) {
    EvolutionConfig cfg;
    std::mt19937_64 rng(2002);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const bool two_d = trial % 4 == 3;
        const bool periodic = trial % 2 == 1;
        const Coefficient coeff = random_coefficient(rng, periodic, two_d ? 2 : 1);
        const double D = 0.3 + 1.5 * unif(rng);
        const double sigma = 0.5 + unif(rng);
        OperatorSpec spec;
        if (two_d) {
            spec = spec_2d(10, coeff, D, sigma, 0.0,
                           trial % 8 == 3 ? KernelFamily::RadialBump2D
                                          : KernelFamily::ProductEpanechnikov2D);
        } else {
            spec = spec_1d(20, coeff, D, sigma, 0.0,
                           trial % 4 == 2 ? KernelFamily::Tent1D
                                          : KernelFamily::Epanechnikov1D);
        }
        const NonlocalOperator op(spec);
        const EigenResult er = principal_spectrum_point(op, cfg);
        c.require(er.lambda1 >= -op.stats().sup_a - 1e-8,
                  "lower sandwich violated: lambda1 = " + std::to_string(er.lambda1) +
                      ", -sup a = " + std::to_string(-op.stats().sup_a));
        c.require(er.lambda1 <= -op.stats().inf_a + 1e-8,
                  "upper sandwich violated: lambda1 = " + std::to_string(er.lambda1) +
                      ", -inf a = " + std::to_string(-op.stats().inf_a));
        const double margin = verify_upper_bound(op, er);
        c.require(margin >= -1e-6, "averaged bound violated by " + std::to_string(-margin));
    }
    return c.ok;
}

bool ac5(Check& c) {
    EvolutionConfig cfg;
    const auto sweep = sweep_dispersal_rate(spec_1d(48, study_coefficient()), cfg,
                                            {1e-4, 1e-3, 1e-2, 1e-1});
    for (const auto& pt : sweep.points) {
        c.require(pt.ok, "sweep point failed: " + pt.error);
    }
    if (!c.ok) return false;
    for (const auto& ref : sweep.references) {
        if (ref.label == "neg_max_aT") {
            c.require(ref.toward_small, "reference direction");
            c.require(ref.gap_monotone, "gaps to -max a_T not strictly decreasing as D -> 0");
        }
    }
    const double final_gap = sweep.points.front().gaps.at("neg_max_aT");
    c.require(final_gap < 5e-3, "final gap " + std::to_string(final_gap));
    c.note("gap at D = 1e-4: " + std::to_string(final_gap));
    return c.ok;
}

bool ac6(Check& c) {
    EvolutionConfig cfg;
    const auto sweep =
        sweep_dispersal_rate(spec_1d(48, study_coefficient()), cfg, {1.0, 1e2, 1e4});
    for (const auto& pt : sweep.points) {
        c.require(pt.ok, "sweep point failed: " + pt.error);
    }
    if (!c.ok) return false;
    for (const auto& ref : sweep.references) {
        if (ref.label == "neg_spacetime_avg") {
            c.require(!ref.toward_small, "reference direction");
            c.require(ref.gap_monotone,
                      "gaps to the space-time average not strictly decreasing as D grows");
        }
    }
    const double final_gap = sweep.points.back().gaps.at("neg_spacetime_avg");
    c.require(final_gap < 5e-2, "final gap " + std::to_string(final_gap));
    c.note("gap at D = 1e4: " + std::to_string(final_gap));
    return c.ok;
}

bool ac7(Check& c) {
    EvolutionConfig cfg;
    std::string gaps;
    for (double k : {0.0, 1.0, 2.0}) {
        const auto sweep = sweep_dispersal_range(spec_1d(50, study_coefficient()), cfg,
                                                 {5.0, 10.0, 25.0, 50.0}, k);
        for (const auto& pt : sweep.points) {
            c.require(pt.ok, "sweep point failed: " + pt.error);
        }
        if (!c.ok) return false;
        for (const auto& ref : sweep.references) {
            if (ref.label == "neg_max_aT" && !ref.toward_small) {
                c.require(ref.gap_monotone, "gaps not decreasing for k = " + std::to_string(k));
            }
        }
        const double final_gap = sweep.points.back().gaps.at("neg_max_aT");
        c.require(final_gap < 2e-2,
                  "final gap " + std::to_string(final_gap) + " at k = " + std::to_string(k));
        gaps += (gaps.empty() ? "" : ", ") + std::to_string(final_gap);
    }
    c.note("final gaps per k: " + gaps);
    return c.ok;
}

bool ac8(Check& c) {
    EvolutionConfig cfg;
    const auto sweep = sweep_dispersal_range(spec_1d(50, study_coefficient()), cfg,
                                             {0.05, 0.1, 0.2, 0.4}, 0.0);
    for (const auto& pt : sweep.points) {
        c.require(pt.ok, "sweep point failed: " + pt.error);
        c.require(1.0 / pt.cells_used[0] <= pt.param / 4.0 + 1e-12,
                  "grid not refined to h <= gamma sigma / 4");
    }
    if (!c.ok) return false;
    for (const auto& ref : sweep.references) {
        if (ref.label == "neg_max_aT_small_sigma") {
            c.require(ref.gap_monotone, "gaps not decreasing as sigma -> 0");
        }
    }
    const double final_gap = sweep.points.front().gaps.at("neg_max_aT_small_sigma");
    c.require(final_gap < 5e-2, "final gap " + std::to_string(final_gap));
    c.note("gap at sigma = 0.05: " + std::to_string(final_gap));
    return c.ok;
}

bool ac9(Check& c) {
    EvolutionConfig cfg;
    const Coefficient a = Coefficient::space_only(
        [](const Point& p) { return std::cos(pi * p.x) * std::cos(pi * p.y); });
    const auto sweep = sweep_dispersal_range(spec_2d(10, a, 2.0), cfg, {0.1, 0.2, 0.4},
                                             /*k=*/3.0, /*jobs=*/1,
                                             /*require_averaging_limit=*/true);
    for (const auto& pt : sweep.points) {
        c.require(pt.ok, "sweep point failed: " + pt.error);
    }
    if (!c.ok) return false;
    bool found = false;
    for (const auto& ref : sweep.references) {
        if (ref.label == "neg_space_avg") {
            found = true;
            c.require(std::abs(ref.value) <= 1e-12, "averaging reference should be 0");
            c.require(ref.gap_monotone, "gaps to 0 not decreasing as sigma -> 0");
        }
    }
    c.require(found, "averaging reference missing");
    const double final_gap = sweep.points.front().gaps.at("neg_space_avg");
    c.require(final_gap < 5e-2, "final gap " + std::to_string(final_gap));
    c.note("gap at sigma = 0.1: " + std::to_string(final_gap));
    return c.ok;
}

bool ac10(Check& c) {
    EvolutionConfig cfg;
    std::mt19937_64 rng(3003);
    std::uniform_real_distribution<double> unif(0.1, 1.1);

    const std::vector<OperatorSpec> specs = {
        spec_1d(24, random_coefficient(rng, false), 0.8, 0.9),
        spec_1d(20, random_coefficient(rng, true), 1.2, 0.7),
        spec_2d(8, random_coefficient(rng, false, 2), 0.9, 1.1),
    };
    for (const auto& spec : specs) {
        const NonlocalOperator op(spec);
        const EigenResult er = principal_spectrum_point(op, cfg);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> phi(op.size());
            for (double& v : phi) v = unif(rng);
            const auto b = collatz_wielandt_bounds(op, constant_field(phi), 16);
            c.require(b.lower <= er.lambda1 + 1e-8,
                      "lower bound " + std::to_string(b.lower) + " above lambda1 " +
                          std::to_string(er.lambda1));
            c.require(er.lambda1 <= b.upper + 1e-8,
                      "upper bound " + std::to_string(b.upper) + " below lambda1 " +
                          std::to_string(er.lambda1));
        }
        if (op.autonomous()) {
            const auto b = collatz_wielandt_bounds(op, constant_field(er.snapshots.front()), 4);
            c.require(b.upper - b.lower <= 1e-5,
                      "eigenfunction bracket width " + std::to_string(b.upper - b.lower));
        }
    }
    return c.ok;
}

bool ac11(Check& c) {
    EvolutionConfig cfg;
    std::mt19937_64 rng(4004);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const Coefficient base = random_coefficient(rng, false);
    const NonlocalOperator base_op(spec_1d(24, base, 0.8));
    const double lambda_base = principal_spectrum_point(base_op, cfg).lambda1;

    for (int trial = 0; trial < 20; ++trial) {
        const double c0 = unif(rng), c1 = unif(rng), c2 = unif(rng);
        const Domain grid = interval_domain(24);
        // normalize the perturbation to sup-norm exactly 0.1 on the grid
        double sup = 0.0;
        auto raw = [&](const Point& p) {
            return c0 + c1 * std::sin(pi * p.x) + c2 * std::cos(3.0 * pi * p.x);
        };
        for (const auto& p : grid.points) sup = std::max(sup, std::abs(raw(p)));
        const double scale = 0.1 / sup;
        const Coefficient perturbed = Coefficient::space_only(
            [raw, scale, &base](const Point& p) { return base(0.0, p) + scale * raw(p); });
        const NonlocalOperator op(spec_1d(24, perturbed, 0.8));
        const double lambda = principal_spectrum_point(op, cfg).lambda1;
        c.require(std::abs(lambda - lambda_base) <= 0.1 + 1e-8,
                  "|delta lambda| = " + std::to_string(std::abs(lambda - lambda_base)));
    }
    return c.ok;
}

bool ac12(Check& c) {
    const Domain dom = interval_domain(30);
    const PoincareResult pr =
        poincare_constant(dom, make_kernel(KernelFamily::Epanechnikov1D, 1.0), 1.0);
    c.require(pr.constant > 0.0, "constant not positive");
    std::mt19937_64 rng(5005);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> f(30);
        for (double& v : f) v = unif(rng);
        const auto g = pr.form.project_mean_zero(f);
        const double norm = pr.form.weighted_norm_sq(g);
        c.require(pr.form.quadratic_form(g) >= (pr.constant - 1e-10) * norm,
                  "gap bound violated");
        c.require(pr.form.identity_residual(g) <= 1e-12 * std::max(norm, 1e-300),
                  "identity residual too large");
    }
    c.note("C = " + std::to_string(pr.constant));
    return c.ok;
}

bool ac13(Check& c) {
    EvolutionConfig cfg;
    // Center the audit family: shift the AC-3 base spec by its own computed
    // lambda1 minus 0.3, so the family's lambda1 runs from 1.3 down to -0.7
    // and crosses zero between s = 0.1 and s = 0.5.
    const double lambda_raw = ac3_base_result().lambda1;
    const double centering = lambda_raw - 0.3;
    const double lambda_base = 0.3;

    const OperatorSpec base_spec = ac3_base_spec();
    const Coefficient base_coeff = base_spec.coeff;
    bool saw_strong = false, saw_violated = false;
    for (double s : {-1.0, -0.5, -0.1, 0.0, 0.1, 0.5, 1.0}) {
        OperatorSpec shifted_spec = base_spec;
        shifted_spec.coeff = Coefficient::space_only(
            [&base_coeff, centering, s](const Point& p) {
                return base_coeff(0.0, p) + centering + s;
            });
        const NonlocalOperator op(shifted_spec);
        const MpVerdict v = mp_verdict(op, cfg);
        const double l = v.lambda1;
        c.require(std::abs(l - (lambda_base - s)) <= 1e-8, "shift covariance violated");
        // the audit only decides cleanly when the shifted lambda1 sits away
        // from the 1e-6 thresholds; the base spec is chosen to guarantee that
        c.require(std::abs(l) >= 1e-3, "test setup: shifted lambda1 too close to zero");
        saw_strong = saw_strong || v.strong_mp;
        saw_violated = saw_violated || !v.strong_mp;
        c.require(v.strong_mp == (l >= -1e-6),
                  "strong_mp mismatch at lambda1 = " + std::to_string(l));
        c.require(v.strict_mp == (l >= 1e-6),
                  "strict_mp mismatch at lambda1 = " + std::to_string(l));
        if (l < -1e-3) {
            c.require(v.counterexample.has_value(), "counterexample missing");
            if (v.counterexample) {
                c.require(v.counterexample->min_Lu > 0.0,
                          "counterexample min L[eta phi] = " +
                              std::to_string(v.counterexample->min_Lu));
            }
        }
    }
    c.require(saw_strong && saw_violated, "audit family did not cross lambda1 = 0");
    c.note("audit family lambda1 from " + std::to_string(lambda_base + 1.0) + " down to " +
           std::to_string(lambda_base - 1.0));
    return c.ok;
}

bool ac14(Check& c) {
    EvolutionConfig cfg;
    std::mt19937_64 rng(6006);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const NonlocalOperator op(spec_1d(24, random_coefficient(rng, true), 1.1, 0.8));

    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> u0(24);
        for (double& v : u0) v = unif(rng) < 0.2 ? 0.0 : unif(rng);
        const auto u = evolve(op, cfg, u0, 0.0, op.period());
        double maxabs = 0.0, minval = u[0];
        for (double v : u) {
            maxabs = std::max(maxabs, std::abs(v));
            minval = std::min(minval, v);
        }
        c.require(minval >= -1e-12 * maxabs, "negativity " + std::to_string(minval));
    }

    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> u0(24), v0(24);
        for (int i = 0; i < 24; ++i) {
            u0[i] = unif(rng);
            v0[i] = u0[i] + unif(rng);
        }
        const auto u = evolve(op, cfg, u0, 0.0, op.period());
        const auto v = evolve(op, cfg, v0, 0.0, op.period());
        for (int i = 0; i < 24; ++i) {
            c.require(u[i] <= v[i] + 1e-12, "comparison violated");
        }
    }
    return c.ok;
}

bool ac15(Check& c) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "nls_acceptance_ac15";
    fs::remove_all(dir);
    fs::create_directories(dir);

    nlohmann::json doc;
    doc["problem"] = {
        {"domain", {{"dimension", 1}, {"bounds", {{0.0, 1.0}}}, {"cells", {32}}}},
        {"kernel", {{"family", "epanechnikov1d"}, {"gamma", 1.0}}},
        {"coefficient",
         {{"form", "separable"}, {"b", "cos(pi*x)"}, {"c", "sin(2*pi*t)"}, {"T", 1.0}}},
        {"D", 1.0},
        {"sigma", 1.0},
        {"k", 0.0}};
    doc["solver"] = {{"seed", 7}};
    doc["command"] = {{"values", {1e-3, 1e-2, 0.1, 1.0, 10.0, 1e2, 1e3}}};

    auto run_once = [&](const std::string& tag) {
        nlohmann::json d = doc;
        d["output"] = {{"directory", (dir / tag).string()}};
        const fs::path cfg_path = dir / (tag + ".json");
        std::ofstream out(cfg_path);
        out << d.dump(2);
        out.close();
        return nls::run({"sweep-d", "--config", cfg_path.string()});
    };
    c.require(run_once("a") == 0, "first run failed");
    c.require(run_once("b") == 0, "second run failed");
    if (!c.ok) return false;

    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string csv_a = slurp(dir / "a" / "sweep_d.csv");
    const std::string csv_b = slurp(dir / "b" / "sweep_d.csv");
    c.require(!csv_a.empty(), "empty CSV");
    c.require(csv_a == csv_b, "repeated runs differ");

    // the documented shape: 7 rows, two gap columns
    std::istringstream lines(csv_a);
    std::string header;
    std::getline(lines, header);
    int gap_cols = 0;
    for (size_t pos = 0; (pos = header.find("gap_", pos)) != std::string::npos; ++pos) {
        ++gap_cols;
    }
    int rows = 0;
    for (std::string line; std::getline(lines, line);) {
        if (!line.empty()) ++rows;
    }
    c.require(rows == 7, "expected 7 rows, got " + std::to_string(rows));
    c.require(gap_cols == 2, "expected 2 gap columns, got " + std::to_string(gap_cols));
    fs::remove_all(dir);
    return c.ok;
}

struct Criterion {
    const char* id;
    const char* title;
    double budget_seconds;  // 0 = no stated budget
    std::function<bool(Check&)> fn;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"AC-1", "constant coefficient eigenpair", 1.0, ac1},
        {"AC-2", "spatially flat periodic coefficient", 5.0, ac2},
        {"AC-3", "power iteration vs dense oracle on 30 random specs", 120.0, ac3},
        {"AC-4", "coefficient sandwich and averaged upper bound", 0.0, ac4},
        {"AC-5", "small dispersal rate limit (-max a_T)", 60.0, ac5},
        {"AC-6", "large dispersal rate limit (space-time average)", 0.0, ac6},
        {"AC-7", "large dispersal range limit per ESS exponent", 0.0, ac7},
        {"AC-8", "small dispersal range limit at k = 0", 300.0, ac8},
        {"AC-9", "small-range averaging limit at k = 3 in 2D", 600.0, ac9},
        {"AC-10", "Collatz-Wielandt sandwich on random test functions", 0.0, ac10},
        {"AC-11", "Lipschitz continuity in the coefficient", 0.0, ac11},
        {"AC-12", "spectral-gap constant and quadratic-form identity", 0.0, ac12},
        {"AC-13", "maximum-principle audit across shifts", 0.0, ac13},
        {"AC-14", "positivity and comparison of the evolution", 0.0, ac14},
        {"AC-15", "deterministic sweep output", 0.0, ac15},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        Check check;
        const auto start = std::chrono::steady_clock::now();
        bool ok = false;
        std::string crash;
        try {
            ok = criterion.fn(check);
        } catch (const std::exception& e) {
            crash = e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (criterion.budget_seconds > 0.0 && seconds > criterion.budget_seconds) {
            ok = false;
            check.detail = "runtime " + std::to_string(seconds) + " s over budget " +
                           std::to_string(criterion.budget_seconds) + " s";
        }
        if (!crash.empty()) {
            ok = false;
            check.detail = "exception: " + crash;
        }
        std::printf("%-6s %-4s %-55s (%.2f s)%s%s\n", criterion.id, ok ? "PASS" : "FAIL",
                    criterion.title, seconds, check.detail.empty() ? "" : " -- ",
                    check.detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    return failures;
}
