#pragma once

#include <optional>
#include <vector>

#include "nls/spectral.hpp"

namespace nls {

struct SupersolutionCertificate {
    double worst_residual = 0.0;  // max of L[phi] over the sampled nodes
    double min_phi = 0.0;
    std::vector<double> phi0;  // the certifying eigenfunction at t = 0
};

/// Witness u = eta .* phi with L[u] > 0 everywhere: -u is a strict
/// super-solution that is not positive, so the strong maximum principle fails.
struct CounterexampleCertificate {
    double delta = 0.0;   // width of the boundary ramp of the cutoff
    double min_Lu = 0.0;  // min over sampled (t, x) of L[eta phi]
    int worst_point = -1;
    std::vector<double> eta;
    std::vector<double> u0;  // eta .* phi at t = 0
};

/// Decision record for the maximum-principle equivalences: strong maximum
/// principle iff lambda1 >= 0, strict version iff lambda1 > 0, both read with
/// a +-1e-8 dead band; verdicts inside the band carry conclusive = false.
struct MpVerdict {
    double lambda1 = 0.0;
    bool strong_mp = false;
    bool strict_mp = false;
    bool conclusive = true;
    std::optional<SupersolutionCertificate> supersolution;
    std::optional<CounterexampleCertificate> counterexample;
};

MpVerdict mp_verdict(const NonlocalOperator& op, const EvolutionConfig& cfg);

struct SupersolutionCheck {
    double max_residual = 0.0;  // max of L[phi] over samples
    double min_phi = 0.0;
    bool is_supersolution = false;  // residual has the required sign
    double lambda1 = 0.0;
    bool consistent_with_theorems = true;
};

/// Evaluates L[phi] over sampled nodes and compares the sign conclusion
/// against the computed lambda1: a strict super-solution forces lambda1 > 0,
/// a positive non-strict one forces lambda1 >= 0 (both with 1e-8 tolerance).
SupersolutionCheck check_supersolution(const NonlocalOperator& op, const EvolutionConfig& cfg,
                                       const SpaceTimeField& phi, bool strict,
                                       int mt_samples);

/// Constructive violation for lambda1 < 0: cutoff eta = clamp(dist/delta, 0, 1)
/// against the computed eigenfunction, with delta walking {h, 2h, 4h, ...}
/// until L[eta phi] > 0 at every sample. Throws EigenvalueNotNegative when
/// lambda1 >= -1e-8 and ConstructionFailed when no delta in the schedule works.
CounterexampleCertificate build_counterexample(const NonlocalOperator& op,
                                               const EvolutionConfig& cfg);
CounterexampleCertificate build_counterexample(const NonlocalOperator& op,
                                               const EigenResult& eigen);

}  // namespace nls
