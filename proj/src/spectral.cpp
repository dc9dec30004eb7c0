#include "nls/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace nls {

namespace {

double max_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

EigenResult power_solve(const NonlocalOperator& op, const EvolutionConfig& cfg, int m) {
    const int n = op.size();
    const double T = op.period();

    EigenResult res;
    res.lambda_star = op.lambda_star();

    std::vector<double> v(n, 1.0);
    double log_r = 0.0, log_r_prev = std::numeric_limits<double>::quiet_NaN();
    bool converged = false;
    int iter = 0;

    const detail::CoefficientTable table(op, m);

    while (iter < cfg.max_power_iters) {
        std::vector<double> w = v;
        const detail::PeriodResult pr =
            detail::evolve_period(op, table, m, cfg.positivity_tol, true, w);
        ++iter;
        const double norm = max_norm(w);
        if (!(norm > 0.0) || !std::isfinite(norm)) {
            throw SolverError("period map produced a vanishing or non-finite iterate");
        }
        log_r = pr.log_factor + std::log(norm);
        for (int i = 0; i < n; ++i) v[i] = w[i] / norm;

        if (iter >= 2) {
            const double r_now = std::exp(log_r);
            const double r_prev = std::exp(log_r_prev);
            const bool sane = std::isfinite(r_now) && std::isfinite(r_prev) && r_now > 0.0;
            const double diff = sane ? std::abs(r_now - r_prev) : std::abs(log_r - log_r_prev);
            const double scale = sane ? std::max(1.0, r_now) : 1.0;
            if (diff <= cfg.power_tol * scale) {
                converged = true;
                break;
            }
        }
        log_r_prev = log_r;
    }
    if (!converged) {
        throw NoConvergence("power iteration did not stabilize after " +
                                std::to_string(iter) + " period maps",
                            std::exp(log_r_prev), std::exp(log_r));
    }

    res.radius = std::exp(log_r);
    res.lambda1 = -log_r / T;
    res.iters = iter;
    res.steps_per_period = m;

    // Rebuild the periodic eigenfunction phi(t) = e^{lambda1 t} Phi(t,0) v.
    std::vector<double> u = v;
    std::vector<double> snap_log;
    detail::evolve_period(op, table, m, cfg.positivity_tol, true, u, &res.snapshots,
                          &snap_log);
    res.snapshot_times.resize(m + 1);
    double overall_max = 0.0;
    for (int j = 0; j <= m; ++j) {
        const double tj = T * j / m;
        res.snapshot_times[j] = tj;
        const double factor = std::exp(res.lambda1 * tj + snap_log[j]);
        for (double& x : res.snapshots[j]) {
            x *= factor;
            overall_max = std::max(overall_max, std::abs(x));
        }
    }
    if (overall_max > 0.0) {
        for (auto& snap : res.snapshots) {
            for (double& x : snap) x /= overall_max;
        }
    }

    double pres = 0.0;
    for (int i = 0; i < n; ++i) {
        pres = std::max(pres, std::abs(res.snapshots[m][i] - res.snapshots[0][i]));
    }
    res.periodicity_residual = pres;

    if (op.autonomous()) {
        std::vector<double> Av(n);
        op.apply_generator(0.0, res.snapshots[0], Av);
        double ares = 0.0;
        for (int i = 0; i < n; ++i) {
            ares = std::max(ares, std::abs(Av[i] + res.lambda1 * res.snapshots[0][i]));
        }
        res.algebraic_residual = ares;
    }

    res.is_principal = res.lambda1 < res.lambda_star - 1e-8;
    return res;
}

}  // namespace

EigenResult principal_spectrum_point(const NonlocalOperator& op, const EvolutionConfig& cfg) {
    int m = effective_steps_per_period(op, cfg);
    for (int attempt = 0;; ++attempt) {
        try {
            return power_solve(op, cfg, m);
        } catch (const NegativityBreach&) {
            if (attempt >= 1) throw;
            m *= 2;
        }
    }
}

double dense_oracle(const NonlocalOperator& op, const EvolutionConfig& cfg) {
    const int n = op.size();
    if (op.autonomous()) {
        if (n > 200) {
            throw TooLarge("dense oracle caps autonomous problems at n = 200, got " +
                           std::to_string(n));
        }
        const DenseMatrix a = op.generator(0.0);
        Eigen::MatrixXd mat(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) mat(i, j) = a(i, j);
        }
        Eigen::EigenSolver<Eigen::MatrixXd> es(mat, false);
        double max_re = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) {
            max_re = std::max(max_re, es.eigenvalues()[i].real());
        }
        return -max_re;
    }

    if (n > 60) {
        throw TooLarge("dense oracle caps periodic problems at n = 60, got " +
                       std::to_string(n));
    }
    const double T = op.period();
    int m = effective_steps_per_period(op, cfg);
    Eigen::MatrixXd monodromy(n, n);
    for (int attempt = 0;; ++attempt) {
        try {
            const detail::CoefficientTable table(op, m);
            for (int j = 0; j < n; ++j) {
                std::vector<double> col(n, 0.0);
                col[j] = 1.0;
                const auto pr =
                    detail::evolve_period(op, table, m, cfg.positivity_tol, true, col);
                const double factor = std::exp(pr.log_factor);
                for (int i = 0; i < n; ++i) monodromy(i, j) = col[i] * factor;
            }
            break;
        } catch (const NegativityBreach&) {
            if (attempt >= 1) throw;
            m *= 2;
        }
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(monodromy, false);
    double rho = 0.0;
    for (int i = 0; i < n; ++i) {
        rho = std::max(rho, std::abs(es.eigenvalues()[i]));
    }
    if (!(rho > 0.0)) {
        throw SolverError("explicit period map has zero spectral radius");
    }
    return -std::log(rho) / T;
}

CollatzWielandtBounds collatz_wielandt_bounds(const NonlocalOperator& op,
                                              const SpaceTimeField& phi, int mt_samples) {
    if (mt_samples < 1) {
        throw ValidationError("need at least one time sample");
    }
    const int n = op.size();
    const double T = op.period();
    CollatzWielandtBounds b;
    b.lower = std::numeric_limits<double>::infinity();
    b.upper = -std::numeric_limits<double>::infinity();
    const int mt = (phi.time_varying || !op.autonomous()) ? mt_samples : 1;
    for (int j = 0; j < mt; ++j) {
        const double t = T * j / mt;
        const auto values = phi.values_at(t, n);
        for (double x : values) {
            if (!(x > 0.0)) {
                throw NonpositiveTestFunction(
                    "test function is not strictly positive at t = " + std::to_string(t));
            }
        }
        const auto lphi = op.apply_L(phi, t);
        for (int i = 0; i < n; ++i) {
            const double ratio = -lphi[i] / values[i];
            b.lower = std::min(b.lower, ratio);
            b.upper = std::max(b.upper, ratio);
        }
    }
    return b;
}

TestPairVerdict certify_test_pair(const NonlocalOperator& op, double lambda,
                                  const SpaceTimeField& phi, TestPairDirection direction,
                                  int mt_samples) {
    if (mt_samples < 1) {
        throw ValidationError("need at least one time sample");
    }
    const int n = op.size();
    const double T = op.period();
    const int mt = (phi.time_varying || !op.autonomous()) ? mt_samples : 1;
    constexpr double slack = 1e-10;

    TestPairVerdict verdict;
    double worst = direction == TestPairDirection::Subsolution
                       ? -std::numeric_limits<double>::infinity()
                       : std::numeric_limits<double>::infinity();
    for (int j = 0; j < mt; ++j) {
        const double t = T * j / mt;
        const auto values = phi.values_at(t, n);
        for (double x : values) {
            if (!(x > 0.0)) {
                throw NonpositiveTestFunction(
                    "test function is not strictly positive at t = " + std::to_string(t));
            }
        }
        const auto lphi = op.apply_L(phi, t);
        for (int i = 0; i < n; ++i) {
            const double r = lphi[i] + lambda * values[i];
            const bool is_worse = direction == TestPairDirection::Subsolution ? r > worst
                                                                              : r < worst;
            if (is_worse) {
                worst = r;
                verdict.worst_point = i;
                verdict.worst_time = t;
            }
        }
    }
    verdict.worst_residual = worst;
    verdict.holds = direction == TestPairDirection::Subsolution ? worst <= slack
                                                                : worst >= -slack;
    return verdict;
}

std::vector<double> PoincareForm::apply(std::span<const double> f) const {
    std::vector<double> out(f.size());
    kernel_matrix.multiply(f, out);
    for (size_t i = 0; i < f.size(); ++i) {
        out[i] = kernel_matrix.degree[i] * f[i] - out[i];
    }
    return out;
}

double PoincareForm::quadratic_form(std::span<const double> f) const {
    const auto mf = apply(f);
    double acc = 0.0;
    for (size_t i = 0; i < f.size(); ++i) acc += weights[i] * mf[i] * f[i];
    return acc;
}

double PoincareForm::pair_sum(std::span<const double> f) const {
    double acc = 0.0;
    for (int i = 0; i < kernel_matrix.n; ++i) {
        for (int k = kernel_matrix.row_ptr[i]; k < kernel_matrix.row_ptr[i + 1]; ++k) {
            const double diff = f[kernel_matrix.cols[k]] - f[i];
            acc += weights[i] * kernel_matrix.vals[k] * diff * diff;
        }
    }
    return 0.5 * acc;
}

double PoincareForm::identity_residual(std::span<const double> f) const {
    return std::abs(quadratic_form(f) - pair_sum(f));
}

double PoincareForm::weighted_norm_sq(std::span<const double> f) const {
    double acc = 0.0;
    for (size_t i = 0; i < f.size(); ++i) acc += weights[i] * f[i] * f[i];
    return acc;
}

std::vector<double> PoincareForm::project_mean_zero(std::span<const double> f) const {
    double wsum = 0.0, mean = 0.0;
    for (size_t i = 0; i < f.size(); ++i) {
        wsum += weights[i];
        mean += weights[i] * f[i];
    }
    mean /= wsum;
    std::vector<double> out(f.size());
    for (size_t i = 0; i < f.size(); ++i) out[i] = f[i] - mean;
    return out;
}

PoincareResult poincare_constant(const Domain& domain, const Kernel& kernel, double sigma) {
    if (!kernel.componentwise_symmetric) {
        throw KernelNotSymmetric("spectral-gap estimate requires an even kernel");
    }
    const int n = domain.size();
    if (n > 500) {
        throw TooLarge("spectral-gap eigensolve caps the grid at n = 500, got " +
                       std::to_string(n));
    }

    PoincareResult res;
    res.form.kernel_matrix = build_kernel_matrix(domain, kernel, sigma);
    res.form.weights = domain.weights;

    // Symmetrize M = diag(d) - K with W^{1/2} (.) W^{-1/2}; the weighted
    // symmetry w_i K_ij = w_j K_ji of even kernels makes S symmetric.
    const auto& km = res.form.kernel_matrix;
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const double wi = std::sqrt(domain.weights[i]);
        for (int k = km.row_ptr[i]; k < km.row_ptr[i + 1]; ++k) {
            const int j = km.cols[k];
            s(i, j) -= km.vals[k] * wi / std::sqrt(domain.weights[j]);
        }
        s(i, i) += km.degree[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s, Eigen::EigenvaluesOnly);
    res.zero_eigenvalue = es.eigenvalues()[0];
    res.constant = es.eigenvalues()[1];
    return res;
}

}  // namespace nls
