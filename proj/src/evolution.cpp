#include "nls/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nls {

int effective_steps_per_period(const NonlocalOperator& op, const EvolutionConfig& cfg) {
    int m = cfg.steps_per_period > 0 ? cfg.steps_per_period : 128;
    const double bound = op.diagonal_bound();
    const double T = op.period();
    if (bound > 0.0) {
        while (T / m * bound > 0.5 && m < (1 << 28)) {
            m *= 2;
        }
    }
    return m;
}

namespace {

// One classical RK4 step u <- u + h/6 (k1 + 2k2 + 2k3 + k4) for u' = A(t)u,
// with the three coefficient slices a(t), a(t+h/2), a(t+h) supplied.
void rk4_step(const NonlocalOperator& op, double h, std::span<const double> a0,
              std::span<const double> a1, std::span<const double> a2,
              std::vector<double>& u, std::vector<double>& k1, std::vector<double>& k2,
              std::vector<double>& k3, std::vector<double>& k4, std::vector<double>& tmp) {
    const int n = static_cast<int>(u.size());
    op.apply_generator_with(a0, u, k1);
    for (int i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * h * k1[i];
    op.apply_generator_with(a1, tmp, k2);
    for (int i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * h * k2[i];
    op.apply_generator_with(a1, tmp, k3);
    for (int i = 0; i < n; ++i) tmp[i] = u[i] + h * k3[i];
    op.apply_generator_with(a2, tmp, k4);
    for (int i = 0; i < n; ++i) {
        u[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

}  // namespace

namespace detail {

CoefficientTable::CoefficientTable(const NonlocalOperator& op, int steps_per_period)
    : op_(op), steps_(steps_per_period) {
    const int n = op.size();
    if (op.autonomous()) {
        cached_ = true;
        table_ = op.coefficient_values(0.0);
        return;
    }
    const size_t entries = (2 * static_cast<size_t>(steps_) + 1) * n;
    if (entries <= 16u * 1000 * 1000) {
        cached_ = true;
        table_.resize(entries);
        const double T = op.period();
        for (int k = 0; k <= 2 * steps_; ++k) {
            const double t = T * k / (2.0 * steps_);
            for (int i = 0; i < n; ++i) {
                table_[static_cast<size_t>(k) * n + i] = op.spec().coeff(t, op.domain().points[i]);
            }
        }
    } else {
        for (auto& s : scratch_) s.resize(n);
    }
}

std::span<const double> CoefficientTable::at(int half_step_index) const {
    const int n = op_.size();
    if (cached_) {
        if (op_.autonomous()) {
            return {table_.data(), static_cast<size_t>(n)};
        }
        return {table_.data() + static_cast<size_t>(half_step_index) * n,
                static_cast<size_t>(n)};
    }
    // The three stage indices of one step are consecutive, hence distinct
    // mod 3, so rotating three scratch slots keeps all stage slices alive.
    auto& slot = scratch_[half_step_index % 3];
    const double t = op_.period() * half_step_index / (2.0 * steps_);
    for (int i = 0; i < n; ++i) {
        slot[i] = op_.spec().coeff(t, op_.domain().points[i]);
    }
    return {slot.data(), slot.size()};
}

PeriodResult evolve_period(const NonlocalOperator& op, const CoefficientTable& table,
                           int steps, double positivity_tol, bool track_positivity,
                           std::vector<double>& u,
                           std::vector<std::vector<double>>* snapshots,
                           std::vector<double>* snapshot_log) {
    const int n = op.size();
    const double T = op.period();
    const double h = T / steps;
    std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
    PeriodResult res;

    if (snapshots) {
        snapshots->assign(steps + 1, {});
        (*snapshots)[0] = u;
        if (snapshot_log) snapshot_log->assign(steps + 1, 0.0);
    }

    for (int j = 0; j < steps; ++j) {
        rk4_step(op, h, table.at(2 * j), table.at(2 * j + 1), table.at(2 * j + 2), u, k1, k2,
                 k3, k4, tmp);

        double maxabs = 0.0, minval = u[0];
        for (int i = 0; i < n; ++i) {
            maxabs = std::max(maxabs, std::abs(u[i]));
            minval = std::min(minval, u[i]);
        }
        if (track_positivity && minval < -positivity_tol * maxabs) {
            throw NegativityBreach("evolution left the positive cone at step " +
                                   std::to_string(j + 1) + "/" + std::to_string(steps) +
                                   " (min " + std::to_string(minval) + ")");
        }
        if (maxabs > 1e150 || (maxabs > 0.0 && maxabs < 1e-150)) {
            for (int i = 0; i < n; ++i) u[i] /= maxabs;
            res.log_factor += std::log(maxabs);
        }
        if (snapshots) {
            (*snapshots)[j + 1] = u;
            if (snapshot_log) (*snapshot_log)[j + 1] = res.log_factor;
        }
    }
    return res;
}

}  // namespace detail

namespace {

std::vector<double> evolve_once(const NonlocalOperator& op, int steps_per_period,
                                double positivity_tol, std::span<const double> u0, double t0,
                                double t1) {
    const int n = op.size();
    const double T = op.period();
    const double span_t = t1 - t0;
    std::vector<double> u(u0.begin(), u0.end());
    if (span_t == 0.0) return u;

    bool nonneg = true;
    for (double v : u0) {
        if (v < 0.0) {
            nonneg = false;
            break;
        }
    }

    const int steps = std::max(1, static_cast<int>(std::ceil(steps_per_period * span_t / T - 1e-12)));
    const double h = span_t / steps;

    std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
    std::vector<double> a0(n), a1(n), a2(n);
    for (int j = 0; j < steps; ++j) {
        const double t = t0 + j * h;
        for (int i = 0; i < n; ++i) {
            const Point& p = op.domain().points[i];
            a0[i] = op.spec().coeff(t, p);
            a1[i] = op.spec().coeff(t + 0.5 * h, p);
            a2[i] = op.spec().coeff(t + h, p);
        }
        rk4_step(op, h, a0, a1, a2, u, k1, k2, k3, k4, tmp);
        if (nonneg) {
            double maxabs = 0.0, minval = u[0];
            for (int i = 0; i < n; ++i) {
                maxabs = std::max(maxabs, std::abs(u[i]));
                minval = std::min(minval, u[i]);
            }
            if (minval < -positivity_tol * maxabs) {
                throw NegativityBreach("evolution left the positive cone at t = " +
                                       std::to_string(t + h));
            }
        }
    }
    return u;
}

}  // namespace

std::vector<double> evolve(const NonlocalOperator& op, const EvolutionConfig& cfg,
                           std::span<const double> u0, double t0, double t1) {
    if (t1 < t0) {
        throw ValidationError("evolve needs t1 >= t0");
    }
    if (u0.size() != static_cast<size_t>(op.size())) {
        throw ShapeMismatch("initial state has " + std::to_string(u0.size()) +
                            " entries, operator has " + std::to_string(op.size()));
    }
    for (double v : u0) {
        if (!std::isfinite(v)) {
            throw ValidationError("initial state contains a non-finite entry");
        }
    }
    const int m = effective_steps_per_period(op, cfg);
    try {
        return evolve_once(op, m, cfg.positivity_tol, u0, t0, t1);
    } catch (const NegativityBreach&) {
        return evolve_once(op, 2 * m, cfg.positivity_tol, u0, t0, t1);
    }
}

}  // namespace nls
