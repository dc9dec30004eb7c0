#pragma once

#include <span>
#include <string>
#include <vector>

#include "nls/geometry.hpp"

namespace nls {

enum class KernelFamily {
    Epanechnikov1D,         // (3/4)(1 - u^2) on |u| <= 1
    Tent1D,                 // 1 - |u| on |u| <= 1
    ProductEpanechnikov2D,  // (9/16)(1 - u1^2)(1 - u2^2) on the box max|u_i| <= 1
    RadialBump2D,           // (3/pi)(1 - |u|^2)^2 on |u| <= 1
};

/// Compactly supported dispersal kernel with unit mass over R^N.
/// `gamma` scales the support: J_gamma(z) = J_hat(z/gamma) / gamma^N.
/// The product family is supported on the box [-gamma,gamma]^2 (contained in
/// the Euclidean ball of radius gamma*sqrt(2)); the radial families vanish
/// outside the Euclidean ball of radius gamma.
struct Kernel {
    KernelFamily family = KernelFamily::Epanechnikov1D;
    double gamma = 1.0;           // support radius
    double normalization = 0.75;  // analytic constant of the unit-support profile
    bool componentwise_symmetric = true;
    bool radial = true;
    int dimension = 1;

    /// Evaluate J at displacement z = (zx, zy); zy ignored in 1D.
    double operator()(double zx, double zy = 0.0) const;
};

Kernel make_kernel(KernelFamily family, double gamma);

KernelFamily kernel_family_from_name(const std::string& name);
std::string kernel_family_name(KernelFamily family);
std::vector<std::string> kernel_family_names();

/// Discrete convolution matrix K_ij = sigma^{-N} J((x_i - x_j)/sigma) w_j in
/// compressed sparse rows, with the row sums d_i ("degrees") kept alongside.
/// (K - diag(d)) * ones == 0 holds exactly because d is the same sum.
struct KernelMatrix {
    int n = 0;
    double sigma = 1.0;
    std::vector<int> row_ptr;  // size n+1
    std::vector<int> cols;
    std::vector<double> vals;
    std::vector<double> degree;  // d_i = sum_j K_ij

    /// out = K * v
    void multiply(std::span<const double> v, std::span<double> out) const;

    double max_degree() const;
    double min_diagonal() const;  // min over i of K_ii
};

/// Requires the resolvability condition h <= gamma*sigma; throws GridTooCoarse
/// (with the minimal per-axis cell counts that would fix it) otherwise.
KernelMatrix build_kernel_matrix(const Domain& domain, const Kernel& kernel, double sigma);

/// Smallest per-axis cell counts for which h <= gamma*sigma on `domain`'s box.
std::array<int, 2> minimal_resolvable_cells(const Domain& domain, double gamma, double sigma);

}  // namespace nls
