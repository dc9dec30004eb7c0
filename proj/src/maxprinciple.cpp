#include "nls/maxprinciple.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace nls {

namespace {

constexpr double kDeadBand = 1e-8;

}  // namespace

MpVerdict mp_verdict(const NonlocalOperator& op, const EvolutionConfig& cfg) {
    const EigenResult er = principal_spectrum_point(op, cfg);
    MpVerdict v;
    v.lambda1 = er.lambda1;
    v.strong_mp = er.lambda1 >= -kDeadBand;
    v.strict_mp = er.lambda1 >= kDeadBand;
    v.conclusive = std::abs(er.lambda1) > kDeadBand;

    if (v.strong_mp) {
        // The eigenfunction itself certifies: L[phi] = -lambda1 phi <= 0.
        SupersolutionCertificate cert;
        double min_phi = std::numeric_limits<double>::infinity();
        for (const auto& snap : er.snapshots) {
            for (double x : snap) min_phi = std::min(min_phi, x);
        }
        cert.min_phi = min_phi;
        cert.phi0 = er.snapshots.front();
        if (op.autonomous()) {
            const auto lu = op.apply_L(constant_field(er.snapshots.front()), 0.0);
            cert.worst_residual = *std::max_element(lu.begin(), lu.end());
        } else {
            cert.worst_residual = -er.lambda1 * min_phi;
        }
        v.supersolution = cert;
    } else {
        v.counterexample = build_counterexample(op, er);
    }
    return v;
}

SupersolutionCheck check_supersolution(const NonlocalOperator& op, const EvolutionConfig& cfg,
                                       const SpaceTimeField& phi, bool strict,
                                       int mt_samples) {
    if (mt_samples < 1) {
        throw ValidationError("need at least one time sample");
    }
    const int n = op.size();
    const double T = op.period();
    const int mt = (phi.time_varying || !op.autonomous()) ? mt_samples : 1;

    SupersolutionCheck out;
    out.max_residual = -std::numeric_limits<double>::infinity();
    out.min_phi = std::numeric_limits<double>::infinity();
    for (int j = 0; j < mt; ++j) {
        const double t = T * j / mt;
        const auto values = phi.values_at(t, n);
        const auto lphi = op.apply_L(phi, t);
        for (int i = 0; i < n; ++i) {
            if (!std::isfinite(values[i]) || !std::isfinite(lphi[i])) {
                throw ValidationError("test function is not finite on the sample grid");
            }
            out.max_residual = std::max(out.max_residual, lphi[i]);
            out.min_phi = std::min(out.min_phi, values[i]);
        }
    }

    out.lambda1 = principal_spectrum_point(op, cfg).lambda1;
    out.is_supersolution = strict ? out.max_residual < 0.0 : out.max_residual <= 0.0;

    if (strict && out.max_residual < 0.0) {
        out.consistent_with_theorems = out.lambda1 > -kDeadBand;
    } else if (!strict && out.min_phi > 0.0 && out.max_residual <= 0.0) {
        out.consistent_with_theorems = out.lambda1 >= -kDeadBand;
    } else {
        out.consistent_with_theorems = true;  // no theorem conclusion applies
    }
    return out;
}

CounterexampleCertificate build_counterexample(const NonlocalOperator& op,
                                               const EvolutionConfig& cfg) {
    return build_counterexample(op, principal_spectrum_point(op, cfg));
}

CounterexampleCertificate build_counterexample(const NonlocalOperator& op,
                                               const EigenResult& eigen) {
    const double lambda1 = eigen.lambda1;
    if (lambda1 >= -kDeadBand) {
        throw EigenvalueNotNegative("counterexample construction needs lambda1 < -1e-8, got " +
                                    std::to_string(lambda1));
    }
    const int n = op.size();
    const Domain& domain = op.domain();
    const double h = domain.h;
    const double scale = op.scale();

    double max_dist = 0.0;
    std::vector<double> dist(n);
    for (int i = 0; i < n; ++i) {
        dist[i] = domain.boundary_distance(domain.points[i]);
        max_dist = std::max(max_dist, dist[i]);
    }

    // Sample a subset of the eigenfunction snapshots (all of them in the
    // autonomous case, where there is a single distinct one).
    const int m = static_cast<int>(eigen.snapshots.size()) - 1;
    const int stride = op.autonomous() ? m + 1 : std::max(1, m / 64);
    std::vector<int> sample_nodes;
    for (int j = 0; j <= m; j += stride) sample_nodes.push_back(j);

    std::vector<double> eta(n), u(n), ku(n), kphi(n), lu(n);
    double finest_min = -std::numeric_limits<double>::infinity();
    double finest_delta = 0.0;
    int finest_worst = -1;

    for (double delta = h; delta <= 8.0 * max_dist; delta *= 2.0) {
        for (int i = 0; i < n; ++i) {
            eta[i] = std::clamp(dist[i] / delta, 0.0, 1.0);
        }
        double min_lu = std::numeric_limits<double>::infinity();
        int worst = -1;
        for (int node : sample_nodes) {
            const auto& phi = eigen.snapshots[node];
            for (int i = 0; i < n; ++i) u[i] = eta[i] * phi[i];
            // L[eta phi] = scale (K(eta phi) - eta K(phi)) - lambda1 eta phi:
            // the eigen-relation eliminates both a(t,x) and the time derivative.
            op.kernel_matrix().multiply(u, ku);
            op.kernel_matrix().multiply(phi, kphi);
            for (int i = 0; i < n; ++i) {
                lu[i] = scale * (ku[i] - eta[i] * kphi[i]) - lambda1 * u[i];
                if (lu[i] < min_lu) {
                    min_lu = lu[i];
                    worst = i;
                }
            }
        }
        if (min_lu > finest_min) {
            finest_min = min_lu;
            finest_delta = delta;
            finest_worst = worst;
        }
        if (min_lu > 0.0) {
            CounterexampleCertificate cert;
            cert.delta = delta;
            cert.min_Lu = min_lu;
            cert.worst_point = worst;
            cert.eta = eta;
            cert.u0.resize(n);
            for (int i = 0; i < n; ++i) cert.u0[i] = eta[i] * eigen.snapshots.front()[i];
            return cert;
        }
    }
    throw ConstructionFailed(
        "no cutoff width in {h, 2h, 4h, ...} made L[eta phi] positive everywhere; best was "
        "delta = " + std::to_string(finest_delta) + " with min L[eta phi] = " +
        std::to_string(finest_min) + " at point " + std::to_string(finest_worst));
}

}  // namespace nls
