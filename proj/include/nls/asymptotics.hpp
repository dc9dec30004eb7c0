#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nls/spectral.hpp"

namespace nls {

/// A closed-form limit the sweep compares against. `toward_small` says at
/// which end of the parameter range the limit is attained, which fixes the
/// direction in which the gaps are expected to shrink.
struct ReferenceLimit {
    std::string label;
    double value = 0.0;
    bool toward_small = false;
    bool gap_monotone = false;  // gaps strictly decreasing toward the limit end
};

struct SweepPoint {
    double param = 0.0;
    bool ok = false;
    std::string error;  // non-empty when the point failed; sweep continues
    double lambda1 = 0.0;
    double lambda_star = 0.0;
    bool is_principal = false;
    int iters = 0;
    int steps_per_period = 0;
    std::array<int, 2> cells_used{0, 0};
    std::map<std::string, double> gaps;  // |lambda1 - limit| keyed by limit label
    std::optional<double> upper_bound_margin;  // -spacetime_avg - lambda1 (symmetric J)
    double wall_seconds = 0.0;
};

struct SweepResult {
    std::string parameter;  // "D" or "sigma"
    std::vector<SweepPoint> points;
    std::vector<ReferenceLimit> references;
};

/// lambda1 for each dispersal rate, against -max a_T (D -> 0) and the
/// space-time average (D -> infinity).
SweepResult sweep_dispersal_rate(const OperatorSpec& spec, const EvolutionConfig& cfg,
                                 std::vector<double> dispersal_rates, int jobs = 1);

/// lambda1 for each dispersal range, with per-point grids refined to keep
/// h <= gamma*sigma/4 (capped at `max_points` grid points; points beyond the
/// cap are recorded as failed). The small-sigma averaging reference for k > 2
/// applies only to autonomous coefficients in 2D; set
/// `require_averaging_limit` to make its absence a hard IncompatibleLimit
/// error instead of a silently missing reference.
SweepResult sweep_dispersal_range(const OperatorSpec& spec, const EvolutionConfig& cfg,
                                  std::vector<double> sigma_values, double k, int jobs = 1,
                                  bool require_averaging_limit = false,
                                  int max_points = 20000);

/// Signed margin of the averaged upper bound: -(1/(T|Omega|)) iint a - lambda1.
/// Requires a componentwise-symmetric kernel.
double verify_upper_bound(const NonlocalOperator& op, const EvolutionConfig& cfg);
double verify_upper_bound(const NonlocalOperator& op, const EigenResult& result);

}  // namespace nls
