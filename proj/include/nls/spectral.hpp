#pragma once

#include <optional>
#include <span>
#include <vector>

#include "nls/evolution.hpp"
#include "nls/field.hpp"
#include "nls/operator.hpp"

namespace nls {

/// Principal spectrum point data. lambda1 = -ln(radius)/T where radius is the
/// Perron root of the discrete period map; snapshots hold the reconstructed
/// periodic eigenfunction phi(t_j,.) at the m+1 period nodes, normalized so
/// the overall max equals 1.
struct EigenResult {
    double lambda1 = 0.0;
    double radius = 0.0;
    std::vector<std::vector<double>> snapshots;
    std::vector<double> snapshot_times;
    double periodicity_residual = 0.0;
    std::optional<double> algebraic_residual;  // autonomous runs only
    bool is_principal = false;
    double lambda_star = 0.0;
    int iters = 0;
    int steps_per_period = 0;
};

/// Power iteration on the period map from the all-ones start vector.
EigenResult principal_spectrum_point(const NonlocalOperator& op, const EvolutionConfig& cfg);

/// Independent eigenvalue route: a dense eigensolve of the generator
/// (autonomous, n <= 200) or of the explicitly assembled period map
/// (periodic, n <= 60).
double dense_oracle(const NonlocalOperator& op, const EvolutionConfig& cfg);

struct CollatzWielandtBounds {
    double lower = 0.0;  // min over samples of -L[phi]/phi
    double upper = 0.0;  // max over samples of -L[phi]/phi
};

/// For strictly positive phi the pair sandwiches the discrete lambda1.
CollatzWielandtBounds collatz_wielandt_bounds(const NonlocalOperator& op,
                                              const SpaceTimeField& phi, int mt_samples);

enum class TestPairDirection { Subsolution, Supersolution };

struct TestPairVerdict {
    bool holds = false;
    double worst_residual = 0.0;  // signed residual of (L+lambda)[phi] at the worst sample
    int worst_point = -1;
    double worst_time = 0.0;
};

/// Checks that (L+lambda)[phi] has the declared sign at every sampled (t, x_i)
/// within 1e-10 slack.
TestPairVerdict certify_test_pair(const NonlocalOperator& op, double lambda,
                                  const SpaceTimeField& phi, TestPairDirection direction,
                                  int mt_samples);

/// The quadratic form behind the spectral-gap estimate: M = diag(d) - K is
/// self-adjoint in the weighted inner product when J is even, and
/// <M f, f>_w = 1/2 sum_ij w_i K_ij (f_j - f_i)^2.
struct PoincareForm {
    KernelMatrix kernel_matrix;
    std::vector<double> weights;

    std::vector<double> apply(std::span<const double> f) const;       // M f
    double quadratic_form(std::span<const double> f) const;           // <M f, f>_w
    double pair_sum(std::span<const double> f) const;                 // 1/2 sum w_i K_ij (f_j-f_i)^2
    double identity_residual(std::span<const double> f) const;        // |difference|
    double weighted_norm_sq(std::span<const double> f) const;         // <f, f>_w
    std::vector<double> project_mean_zero(std::span<const double> f) const;
};

struct PoincareResult {
    double constant = 0.0;       // smallest form eigenvalue on the weighted-mean-zero subspace
    double zero_eigenvalue = 0.0;  // the (near-zero) eigenvalue of the constant mode
    PoincareForm form;
};

/// Dense symmetric eigensolve of the weighted operator; n capped at 500.
PoincareResult poincare_constant(const Domain& domain, const Kernel& kernel, double sigma);

}  // namespace nls
