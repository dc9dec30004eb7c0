#include "nls/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace nls {

double Kernel::operator()(double zx, double zy) const {
    const double ux = zx / gamma;
    switch (family) {
        case KernelFamily::Epanechnikov1D: {
            const double s = 1.0 - ux * ux;
            return s > 0.0 ? normalization * s / gamma : 0.0;
        }
        case KernelFamily::Tent1D: {
            const double s = 1.0 - std::abs(ux);
            return s > 0.0 ? normalization * s / gamma : 0.0;
        }
        case KernelFamily::ProductEpanechnikov2D: {
            const double uy = zy / gamma;
            const double sx = 1.0 - ux * ux;
            const double sy = 1.0 - uy * uy;
            return (sx > 0.0 && sy > 0.0) ? normalization * sx * sy / (gamma * gamma) : 0.0;
        }
        case KernelFamily::RadialBump2D: {
            const double uy = zy / gamma;
            const double s = 1.0 - (ux * ux + uy * uy);
            return s > 0.0 ? normalization * s * s / (gamma * gamma) : 0.0;
        }
    }
    return 0.0;
}

Kernel make_kernel(KernelFamily family, double gamma) {
    if (!(gamma > 0.0)) {
        throw ValidationError("kernel support radius must be positive");
    }
    Kernel k;
    k.family = family;
    k.gamma = gamma;
    switch (family) {
        case KernelFamily::Epanechnikov1D:
            k.normalization = 0.75;
            k.componentwise_symmetric = true;
            k.radial = true;
            k.dimension = 1;
            break;
        case KernelFamily::Tent1D:
            k.normalization = 1.0;
            k.componentwise_symmetric = true;
            k.radial = true;
            k.dimension = 1;
            break;
        case KernelFamily::ProductEpanechnikov2D:
            k.normalization = 0.5625;  // (3/4)^2
            k.componentwise_symmetric = true;
            k.radial = false;
            k.dimension = 2;
            break;
        case KernelFamily::RadialBump2D:
            k.normalization = 3.0 / std::numbers::pi;
            k.componentwise_symmetric = true;
            k.radial = true;
            k.dimension = 2;
            break;
    }
    return k;
}

KernelFamily kernel_family_from_name(const std::string& name) {
    if (name == "epanechnikov1d") return KernelFamily::Epanechnikov1D;
    if (name == "tent1d") return KernelFamily::Tent1D;
    if (name == "product_epanechnikov2d") return KernelFamily::ProductEpanechnikov2D;
    if (name == "radial_bump2d") return KernelFamily::RadialBump2D;
    throw ValidationError("unknown kernel family '" + name + "'");
}

std::string kernel_family_name(KernelFamily family) {
    switch (family) {
        case KernelFamily::Epanechnikov1D: return "epanechnikov1d";
        case KernelFamily::Tent1D: return "tent1d";
        case KernelFamily::ProductEpanechnikov2D: return "product_epanechnikov2d";
        case KernelFamily::RadialBump2D: return "radial_bump2d";
    }
    return "?";
}

std::vector<std::string> kernel_family_names() {
    return {"epanechnikov1d", "tent1d", "product_epanechnikov2d", "radial_bump2d"};
}

void KernelMatrix::multiply(std::span<const double> v, std::span<double> out) const {
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
            acc += vals[k] * v[cols[k]];
        }
        out[i] = acc;
    }
}

double KernelMatrix::max_degree() const {
    return *std::max_element(degree.begin(), degree.end());
}

double KernelMatrix::min_diagonal() const {
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
            if (cols[k] == i) {
                m = std::min(m, vals[k]);
                break;
            }
        }
    }
    return m;
}

std::array<int, 2> minimal_resolvable_cells(const Domain& domain, double gamma, double sigma) {
    const double target = gamma * sigma;
    std::array<int, 2> out{0, 0};
    if (domain.dimension == 1) {
        const double len = domain.bounds[0][1] - domain.bounds[0][0];
        out[0] = std::max(2, static_cast<int>(std::ceil(len / target)));
    } else {
        // Scale both axis counts by the same factor, then bump until the
        // diagonal fits.
        const double lx = domain.bounds[0][1] - domain.bounds[0][0];
        const double ly = domain.bounds[1][1] - domain.bounds[1][0];
        double f = domain.h / target;
        int nx = std::max(2, static_cast<int>(std::ceil(domain.cells[0] * f)));
        int ny = std::max(2, static_cast<int>(std::ceil(domain.cells[1] * f)));
        while (std::hypot(lx / nx, ly / ny) > target) {
            ++nx;
            ++ny;
        }
        out = {nx, ny};
    }
    return out;
}

KernelMatrix build_kernel_matrix(const Domain& domain, const Kernel& kernel, double sigma) {
    if (!(sigma > 0.0)) {
        throw ValidationError("sigma must be positive");
    }
    if (kernel.dimension != domain.dimension) {
        throw ShapeMismatch("kernel family is " + std::to_string(kernel.dimension) +
                            "D but domain is " + std::to_string(domain.dimension) + "D");
    }
    const double reach = kernel.gamma * sigma;
    if (domain.h > reach) {
        auto need = minimal_resolvable_cells(domain, kernel.gamma, sigma);
        throw GridTooCoarse("grid too coarse: h = " + std::to_string(domain.h) +
                                " exceeds gamma*sigma = " + std::to_string(reach) +
                                "; need at least " + std::to_string(need[0]) +
                                (domain.dimension == 2 ? "x" + std::to_string(need[1]) : "") +
                                " cells",
                            need[0], need[1]);
    }

    const int n = domain.size();
    KernelMatrix km;
    km.n = n;
    km.sigma = sigma;
    km.row_ptr.assign(n + 1, 0);
    km.degree.assign(n, 0.0);

    const double inv_mass = (domain.dimension == 1) ? 1.0 / sigma : 1.0 / (sigma * sigma);

    if (domain.dimension == 1) {
        const double dx = domain.spacing(0);
        const int reach_cells = static_cast<int>(std::ceil(reach / dx));
        km.cols.reserve(static_cast<size_t>(n) * std::min(n, 2 * reach_cells + 1));
        km.vals.reserve(km.cols.capacity());
        for (int i = 0; i < n; ++i) {
            const int j0 = std::max(0, i - reach_cells);
            const int j1 = std::min(n - 1, i + reach_cells);
            double deg = 0.0;
            for (int j = j0; j <= j1; ++j) {
                const double z = (domain.points[i].x - domain.points[j].x) / sigma;
                const double jv = kernel(z);
                if (jv > 0.0 || j == i) {
                    const double kij = inv_mass * jv * domain.weights[j];
                    km.cols.push_back(j);
                    km.vals.push_back(kij);
                    deg += kij;
                }
            }
            km.degree[i] = deg;
            km.row_ptr[i + 1] = static_cast<int>(km.cols.size());
        }
    } else {
        const int nx = domain.cells[0];
        const int ny = domain.cells[1];
        const double dx = domain.spacing(0);
        const double dy = domain.spacing(1);
        const int rx = static_cast<int>(std::ceil(reach / dx));
        const int ry = static_cast<int>(std::ceil(reach / dy));
        for (int iy = 0; iy < ny; ++iy) {
            for (int ix = 0; ix < nx; ++ix) {
                const int i = iy * nx + ix;
                const Point& pi = domain.points[i];
                double deg = 0.0;
                const int jy0 = std::max(0, iy - ry), jy1 = std::min(ny - 1, iy + ry);
                const int jx0 = std::max(0, ix - rx), jx1 = std::min(nx - 1, ix + rx);
                for (int jy = jy0; jy <= jy1; ++jy) {
                    for (int jx = jx0; jx <= jx1; ++jx) {
                        const int j = jy * nx + jx;
                        const double zx = (pi.x - domain.points[j].x) / sigma;
                        const double zy = (pi.y - domain.points[j].y) / sigma;
                        const double jv = kernel(zx, zy);
                        if (jv > 0.0 || j == i) {
                            const double kij = inv_mass * jv * domain.weights[j];
                            km.cols.push_back(j);
                            km.vals.push_back(kij);
                            deg += kij;
                        }
                    }
                }
                km.degree[i] = deg;
                km.row_ptr[i + 1] = static_cast<int>(km.cols.size());
            }
        }
    }
    return km;
}

}  // namespace nls
