#pragma once

#include <span>
#include <vector>

#include "nls/coefficient.hpp"
#include "nls/dense.hpp"
#include "nls/field.hpp"
#include "nls/geometry.hpp"
#include "nls/kernel.hpp"

namespace nls {

enum class BoundaryType { Neumann, Dirichlet };

/// Full parameterization of the dispersal operator
///   L[u] = -u_t + (D/sigma^k) int_Omega J_sigma(x-y)[u(y)-u(x)] dy + a(t,x) u
/// (Neumann), or with the full mass (D/sigma^k) u subtracted instead of the
/// partial mass (Dirichlet).
struct OperatorSpec {
    Domain domain;
    Kernel kernel;
    Coefficient coeff;
    double dispersal_rate = 1.0;  // D
    double sigma = 1.0;
    double ess_k = 0.0;  // cost-of-dispersal exponent k >= 0
    BoundaryType boundary = BoundaryType::Neumann;
};

/// Assembled semidiscrete operator. The generator slice is
///   A(t) = (D/sigma^k)(K - diag(d)) + diag(a(t,.))   (Neumann)
///   A(t) = (D/sigma^k)(K - I)       + diag(a(t,.))   (Dirichlet)
/// Off-diagonal entries are nonnegative for every t, and the Neumann
/// dispersal part annihilates constants exactly.
class NonlocalOperator {
public:
    explicit NonlocalOperator(OperatorSpec spec, int averaging_nodes = 256);

    const OperatorSpec& spec() const { return spec_; }
    const Domain& domain() const { return spec_.domain; }
    const KernelMatrix& kernel_matrix() const { return kernel_matrix_; }
    const CoefficientStats& stats() const { return stats_; }

    int size() const { return spec_.domain.size(); }
    double period() const { return spec_.coeff.period(); }
    bool autonomous() const { return !spec_.coeff.time_dependent(); }
    double scale() const { return scale_; }  // D / sigma^k

    /// out = scale * (K v - d .* v)  (Neumann)  or  scale * (K v - v)  (Dirichlet)
    void apply_dispersal(std::span<const double> v, std::span<double> out) const;

    /// out = A(t) v
    void apply_generator(double t, std::span<const double> v, std::span<double> out) const;

    /// out = dispersal(v) + a_values .* v, with a(t,.) supplied by the caller.
    void apply_generator_with(std::span<const double> a_values, std::span<const double> v,
                              std::span<double> out) const;

    /// Dense generator slice A(t).
    DenseMatrix generator(double t) const;

    /// L[phi](t,.) = -d(phi)/dt + dispersal(phi) + a(t,.) .* phi.
    /// Throws MissingTimeDerivative for time-varying fields without one.
    std::vector<double> apply_L(const SpaceTimeField& phi, double t) const;

    /// min_i [ scale * d_i - a_T(x_i) ]: the threshold below which the
    /// computed principal spectrum point is certified to be the principal
    /// eigenvalue.
    double lambda_star() const;

    /// Upper bound for sup_t max_i |A_ii(t)|, used by the step-count rule.
    double diagonal_bound() const;

    std::vector<double> coefficient_values(double t) const {
        return sample_on_grid(spec_.coeff, spec_.domain, t);
    }

private:
    OperatorSpec spec_;
    KernelMatrix kernel_matrix_;
    CoefficientStats stats_;
    double scale_ = 1.0;
};

}  // namespace nls
