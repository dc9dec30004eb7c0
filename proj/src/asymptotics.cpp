#include "nls/asymptotics.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>
#include <vector>

namespace nls {

namespace {

void check_sorted_positive(const std::vector<double>& values, const char* what) {
    if (values.empty()) {
        throw ValidationError(std::string(what) + " list is empty");
    }
    for (size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0)) {
            throw ValidationError(std::string(what) + " values must be positive");
        }
        if (i > 0 && !(values[i] > values[i - 1])) {
            throw ValidationError(std::string(what) + " values must be strictly ascending");
        }
    }
}

void fill_gaps(SweepPoint& pt, const std::vector<ReferenceLimit>& refs) {
    for (const auto& ref : refs) {
        pt.gaps[ref.label] = std::abs(pt.lambda1 - ref.value);
    }
}

/// Gaps strictly decreasing toward the limit end, over consecutive ok points.
void compute_monotonicity(SweepResult& sweep) {
    for (auto& ref : sweep.references) {
        bool monotone = true;
        const SweepPoint* prev = nullptr;
        int compared = 0;
        for (const auto& pt : sweep.points) {
            if (!pt.ok) continue;
            if (prev) {
                const double g_prev = prev->gaps.at(ref.label);
                const double g_now = pt.gaps.at(ref.label);
                // ascending parameter order: toward_small wants gaps growing
                // along the list, toward_large wants them shrinking
                const bool good = ref.toward_small ? g_now > g_prev : g_now < g_prev;
                monotone = monotone && good;
                ++compared;
            }
            prev = &pt;
        }
        ref.gap_monotone = monotone && compared > 0;
    }
}

template <typename Job>
void run_jobs(int count, int jobs, Job&& job) {
    jobs = std::max(1, std::min(jobs, count));
    if (jobs <= 1) {
        for (int i = 0; i < count; ++i) job(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int w = 0; w < jobs; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= count) return;
                job(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

void solve_point(const OperatorSpec& spec, const EvolutionConfig& cfg, SweepPoint& pt) {
    const auto start = std::chrono::steady_clock::now();
    try {
        NonlocalOperator op(spec);
        const EigenResult er = principal_spectrum_point(op, cfg);
        pt.lambda1 = er.lambda1;
        pt.lambda_star = er.lambda_star;
        pt.is_principal = er.is_principal;
        pt.iters = er.iters;
        pt.steps_per_period = er.steps_per_period;
        pt.cells_used = spec.domain.cells;
        if (spec.kernel.componentwise_symmetric) {
            pt.upper_bound_margin = verify_upper_bound(op, er);
        }
        pt.ok = true;
    } catch (const Error& e) {
        pt.ok = false;
        pt.error = e.what();
    }
    pt.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

SweepResult sweep_dispersal_rate(const OperatorSpec& spec, const EvolutionConfig& cfg,
                                 std::vector<double> dispersal_rates, int jobs) {
    check_sorted_positive(dispersal_rates, "dispersal rate");

    NonlocalOperator probe(spec);  // validates the spec and gives the stats
    SweepResult sweep;
    sweep.parameter = "D";
    sweep.references.push_back({"neg_max_aT", -probe.stats().max_aT, /*toward_small=*/true});
    sweep.references.push_back(
        {"neg_spacetime_avg", -probe.stats().spacetime_avg, /*toward_small=*/false});

    sweep.points.resize(dispersal_rates.size());
    for (size_t i = 0; i < dispersal_rates.size(); ++i) {
        sweep.points[i].param = dispersal_rates[i];
    }
    run_jobs(static_cast<int>(dispersal_rates.size()), jobs, [&](int i) {
        OperatorSpec point_spec = spec;
        point_spec.dispersal_rate = dispersal_rates[i];
        solve_point(point_spec, cfg, sweep.points[i]);
        if (sweep.points[i].ok) fill_gaps(sweep.points[i], sweep.references);
    });
    compute_monotonicity(sweep);
    return sweep;
}

SweepResult sweep_dispersal_range(const OperatorSpec& spec, const EvolutionConfig& cfg,
                                  std::vector<double> sigma_values, double k, int jobs,
                                  bool require_averaging_limit, int max_points) {
    check_sorted_positive(sigma_values, "sigma");
    if (!(k >= 0.0)) {
        throw ValidationError("k must be nonnegative");
    }

    const bool autonomous = !spec.coeff.time_dependent();
    const bool averaging_applies = k > 2.0 && autonomous && spec.domain.dimension == 2;
    if (require_averaging_limit && k > 2.0 && !averaging_applies) {
        throw IncompatibleLimit(
            "the small-sigma averaging limit for k > 2 needs an autonomous coefficient in "
            "2D; it is open for time-dependent coefficients and for N = 1");
    }

    // Reference values need a_T stats only; compute them on the base grid.
    CoefficientStats stats = time_average(spec.coeff, spec.domain, 256);

    SweepResult sweep;
    sweep.parameter = "sigma";
    sweep.references.push_back({"neg_max_aT", -stats.max_aT, /*toward_small=*/false});
    if (k == 0.0 && spec.coeff.lipschitz_in_x()) {
        sweep.references.push_back({"neg_max_aT_small_sigma", -stats.max_aT,
                                    /*toward_small=*/true});
    }
    if (averaging_applies) {
        // space average == space-time average for autonomous coefficients
        sweep.references.push_back(
            {"neg_space_avg", -stats.spacetime_avg, /*toward_small=*/true});
    }

    sweep.points.resize(sigma_values.size());
    for (size_t i = 0; i < sigma_values.size(); ++i) {
        sweep.points[i].param = sigma_values[i];
    }
    run_jobs(static_cast<int>(sigma_values.size()), jobs, [&](int i) {
        SweepPoint& pt = sweep.points[i];
        const double sigma = sigma_values[i];
        try {
            // refine so that h <= gamma*sigma/4
            auto need = minimal_resolvable_cells(spec.domain, spec.kernel.gamma, sigma / 4.0);
            std::array<int, 2> cells = spec.domain.cells;
            cells[0] = std::max(cells[0], need[0]);
            if (spec.domain.dimension == 2) cells[1] = std::max(cells[1], need[1]);
            const long total = spec.domain.dimension == 2
                                   ? static_cast<long>(cells[0]) * cells[1]
                                   : cells[0];
            if (total > max_points) {
                throw GridTooCoarse("resolving sigma = " + std::to_string(sigma) +
                                        " needs " + std::to_string(total) +
                                        " grid points, above the sweep cap of " +
                                        std::to_string(max_points),
                                    need[0], need[1]);
            }
            OperatorSpec point_spec = spec;
            point_spec.sigma = sigma;
            point_spec.ess_k = k;
            point_spec.domain = build_domain(
                spec.domain.dimension,
                std::span<const std::array<double, 2>>(spec.domain.bounds.data(), 2),
                std::span<const int>(cells.data(), 2));
            solve_point(point_spec, cfg, pt);
            if (pt.ok) fill_gaps(pt, sweep.references);
        } catch (const Error& e) {
            pt.ok = false;
            pt.error = e.what();
        }
    });
    compute_monotonicity(sweep);
    return sweep;
}

double verify_upper_bound(const NonlocalOperator& op, const EigenResult& result) {
    if (!op.spec().kernel.componentwise_symmetric) {
        throw KernelNotSymmetric(
            "the averaged upper bound needs a componentwise-symmetric kernel");
    }
    return -op.stats().spacetime_avg - result.lambda1;
}

double verify_upper_bound(const NonlocalOperator& op, const EvolutionConfig& cfg) {
    if (!op.spec().kernel.componentwise_symmetric) {
        throw KernelNotSymmetric(
            "the averaged upper bound needs a componentwise-symmetric kernel");
    }
    return verify_upper_bound(op, principal_spectrum_point(op, cfg));
}

}  // namespace nls
