#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "nls/operator.hpp"

namespace nls {

/// Settings for the time-stepped evolution family and the power iteration.
/// steps_per_period = 0 requests automatic selection (starting from 128);
/// whatever the starting value, it is doubled until the step-size rule
/// (T/m) * sup_t max_i |A_ii(t)| <= 0.5 holds.
struct EvolutionConfig {
    int steps_per_period = 0;
    double power_tol = 1e-10;
    int max_power_iters = 10000;
    double positivity_tol = 1e-12;
    std::uint64_t seed = 0;
};

/// The step count actually used for one period.
int effective_steps_per_period(const NonlocalOperator& op, const EvolutionConfig& cfg);

/// Solve u' = A(t)u from (t0, u0) to t1 with the classical 4th-order one-step
/// method on uniform steps. For nonnegative u0 the iterates are watched for
/// negativity (threshold -positivity_tol * max|u|); a breach retries once with
/// doubled steps and then throws NegativityBreach.
std::vector<double> evolve(const NonlocalOperator& op, const EvolutionConfig& cfg,
                           std::span<const double> u0, double t0, double t1);

namespace detail {

/// Coefficient values a(t,.) cached at the RK4 stage times of one period
/// (2m+1 half-step nodes). Falls back to on-the-fly evaluation when the table
/// would be too large.
class CoefficientTable {
public:
    CoefficientTable(const NonlocalOperator& op, int steps_per_period);
    std::span<const double> at(int half_step_index) const;

private:
    const NonlocalOperator& op_;
    int steps_ = 0;
    bool cached_ = false;
    std::vector<double> table_;  // (2m+1) x n when cached
    mutable std::array<std::vector<double>, 3> scratch_;  // rotating slices otherwise
};

struct PeriodResult {
    double log_factor = 0.0;  // accumulated log of rescalings
};

/// One period 0 -> T in place; optionally records snapshots at the m+1 node
/// times (snapshots[j] gets u(t_j) and snapshot_log[j] the accumulated log
/// rescaling at that node). Throws NegativityBreach (no retry at this level)
/// when positivity tracking is on and an iterate dips below the threshold.
PeriodResult evolve_period(const NonlocalOperator& op, const CoefficientTable& table,
                           int steps, double positivity_tol, bool track_positivity,
                           std::vector<double>& u,
                           std::vector<std::vector<double>>* snapshots = nullptr,
                           std::vector<double>* snapshot_log = nullptr);

}  // namespace detail

}  // namespace nls
