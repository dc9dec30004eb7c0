#include "nls/operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace nls {

NonlocalOperator::NonlocalOperator(OperatorSpec spec, int averaging_nodes)
    : spec_(std::move(spec)) {
    if (!(spec_.dispersal_rate > 0.0)) {
        throw ValidationError("dispersal rate D must be positive, got " +
                              std::to_string(spec_.dispersal_rate));
    }
    if (!(spec_.sigma > 0.0)) {
        throw ValidationError("sigma must be positive, got " + std::to_string(spec_.sigma));
    }
    if (!(spec_.ess_k >= 0.0)) {
        throw ValidationError("k must be nonnegative, got " + std::to_string(spec_.ess_k));
    }
    if (!(spec_.coeff.period() > 0.0)) {
        throw ValidationError("coefficient period must be positive");
    }
    scale_ = spec_.dispersal_rate / std::pow(spec_.sigma, spec_.ess_k);
    kernel_matrix_ = build_kernel_matrix(spec_.domain, spec_.kernel, spec_.sigma);
    stats_ = time_average(spec_.coeff, spec_.domain, averaging_nodes);
}

void NonlocalOperator::apply_dispersal(std::span<const double> v, std::span<double> out) const {
    kernel_matrix_.multiply(v, out);
    const int n = size();
    if (spec_.boundary == BoundaryType::Neumann) {
        for (int i = 0; i < n; ++i) {
            out[i] = scale_ * (out[i] - kernel_matrix_.degree[i] * v[i]);
        }
    } else {
        for (int i = 0; i < n; ++i) {
            out[i] = scale_ * (out[i] - v[i]);
        }
    }
}

void NonlocalOperator::apply_generator(double t, std::span<const double> v,
                                       std::span<double> out) const {
    apply_dispersal(v, out);
    const int n = size();
    for (int i = 0; i < n; ++i) {
        out[i] += spec_.coeff(t, spec_.domain.points[i]) * v[i];
    }
}

void NonlocalOperator::apply_generator_with(std::span<const double> a_values,
                                            std::span<const double> v,
                                            std::span<double> out) const {
    apply_dispersal(v, out);
    const int n = size();
    for (int i = 0; i < n; ++i) {
        out[i] += a_values[i] * v[i];
    }
}

DenseMatrix NonlocalOperator::generator(double t) const {
    const int n = size();
    DenseMatrix a(n, n);
    const auto& km = kernel_matrix_;
    for (int i = 0; i < n; ++i) {
        for (int k = km.row_ptr[i]; k < km.row_ptr[i + 1]; ++k) {
            a(i, km.cols[k]) += scale_ * km.vals[k];
        }
        const double removed =
            spec_.boundary == BoundaryType::Neumann ? km.degree[i] : 1.0;
        a(i, i) += -scale_ * removed + spec_.coeff(t, spec_.domain.points[i]);
    }
    return a;
}

std::vector<double> NonlocalOperator::apply_L(const SpaceTimeField& phi, double t) const {
    const int n = size();
    std::vector<double> values(n);
    phi.values(t, values);

    std::vector<double> out(n);
    apply_dispersal(values, out);
    for (int i = 0; i < n; ++i) {
        out[i] += spec_.coeff(t, spec_.domain.points[i]) * values[i];
    }

    if (phi.time_varying) {
        if (!phi.time_derivative) {
            throw MissingTimeDerivative(
                "time-varying test function supplied without an exact time derivative");
        }
        std::vector<double> dvalues(n);
        phi.time_derivative(t, dvalues);
        for (int i = 0; i < n; ++i) {
            out[i] -= dvalues[i];
        }
    }
    return out;
}

double NonlocalOperator::lambda_star() const {
    const int n = size();
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        m = std::min(m, scale_ * kernel_matrix_.degree[i] - stats_.a_T[i]);
    }
    return m;
}

double NonlocalOperator::diagonal_bound() const {
    const int n = size();
    const auto& km = kernel_matrix_;
    double disp = 0.0;
    for (int i = 0; i < n; ++i) {
        double kii = 0.0;
        for (int k = km.row_ptr[i]; k < km.row_ptr[i + 1]; ++k) {
            if (km.cols[k] == i) {
                kii = km.vals[k];
                break;
            }
        }
        const double removed =
            spec_.boundary == BoundaryType::Neumann ? km.degree[i] : 1.0;
        disp = std::max(disp, scale_ * std::abs(kii - removed));
    }
    return disp + std::max(std::abs(stats_.sup_a), std::abs(stats_.inf_a));
}

}  // namespace nls
