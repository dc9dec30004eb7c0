#include "nls/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nls {

double Domain::boundary_distance(const Point& p) const {
    double d = std::min(p.x - bounds[0][0], bounds[0][1] - p.x);
    if (dimension == 2) {
        d = std::min({d, p.y - bounds[1][0], bounds[1][1] - p.y});
    }
    return d;
}

Domain build_domain(int dimension,
                    std::span<const std::array<double, 2>> bounds,
                    std::span<const int> cells) {
    if (dimension != 1 && dimension != 2) {
        throw ValidationError("dimension must be 1 or 2, got " + std::to_string(dimension));
    }
    if (static_cast<int>(bounds.size()) < dimension || static_cast<int>(cells.size()) < dimension) {
        throw ShapeMismatch("need one interval and one cell count per axis");
    }
    for (int axis = 0; axis < dimension; ++axis) {
        if (!(bounds[axis][1] - bounds[axis][0] > 0.0)) {
            throw DegenerateBounds("axis " + std::to_string(axis) + " interval [" +
                                   std::to_string(bounds[axis][0]) + ", " +
                                   std::to_string(bounds[axis][1]) + "] has no length");
        }
        if (cells[axis] < 2) {
            throw TooFewCells("axis " + std::to_string(axis) + " needs at least 2 cells, got " +
                              std::to_string(cells[axis]));
        }
    }

    Domain d;
    d.dimension = dimension;
    for (int axis = 0; axis < dimension; ++axis) {
        d.bounds[axis] = bounds[axis];
        d.cells[axis] = cells[axis];
    }

    if (dimension == 1) {
        const int n = cells[0];
        const double lo = bounds[0][0];
        const double dx = (bounds[0][1] - lo) / n;
        d.points.resize(n);
        d.weights.assign(n, dx);
        for (int i = 0; i < n; ++i) {
            d.points[i] = {lo + (i + 0.5) * dx, 0.0};
        }
        d.h = dx;
        d.volume = bounds[0][1] - lo;
    } else {
        const int nx = cells[0];
        const int ny = cells[1];
        const double dx = (bounds[0][1] - bounds[0][0]) / nx;
        const double dy = (bounds[1][1] - bounds[1][0]) / ny;
        d.points.resize(static_cast<size_t>(nx) * ny);
        d.weights.assign(static_cast<size_t>(nx) * ny, dx * dy);
        for (int iy = 0; iy < ny; ++iy) {
            for (int ix = 0; ix < nx; ++ix) {
                d.points[static_cast<size_t>(iy) * nx + ix] = {
                    bounds[0][0] + (ix + 0.5) * dx,
                    bounds[1][0] + (iy + 0.5) * dy,
                };
            }
        }
        d.h = std::hypot(dx, dy);
        d.volume = (bounds[0][1] - bounds[0][0]) * (bounds[1][1] - bounds[1][0]);
    }
    return d;
}

double integrate(const Domain& domain, std::span<const double> values) {
    if (values.size() != domain.weights.size()) {
        throw ShapeMismatch("grid function has " + std::to_string(values.size()) +
                            " entries, domain has " + std::to_string(domain.weights.size()));
    }
    double acc = 0.0;
    for (size_t i = 0; i < values.size(); ++i) {
        acc += domain.weights[i] * values[i];
    }
    return acc;
}

}  // namespace nls
