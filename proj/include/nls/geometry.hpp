#pragma once

#include <array>
#include <span>
#include <vector>

#include "nls/errors.hpp"

namespace nls {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Uniform cell-center quadrature grid over a 1D interval or a 2D rectangle.
/// Weights are exact cell measures, so integrate() reproduces constants and
/// affine functions exactly. 2D points are ordered row-major (x fastest).
struct Domain {
    int dimension = 1;
    std::array<std::array<double, 2>, 2> bounds{};  // [axis]{lo, hi}
    std::array<int, 2> cells{};                     // cells per axis (cells[1]=0 in 1D)
    std::vector<Point> points;
    std::vector<double> weights;
    double h = 0.0;       // max cell diameter: spacing in 1D, cell diagonal in 2D
    double volume = 0.0;  // |Omega|

    int size() const { return static_cast<int>(points.size()); }

    double spacing(int axis) const {
        return (bounds[axis][1] - bounds[axis][0]) / cells[axis];
    }

    /// Distance from a point to the boundary of the rectangle.
    double boundary_distance(const Point& p) const;
};

Domain build_domain(int dimension,
                    std::span<const std::array<double, 2>> bounds,
                    std::span<const int> cells);

/// Midpoint-rule quadrature: sum of w_i * values_i.
double integrate(const Domain& domain, std::span<const double> values);

}  // namespace nls
