#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "nls/expression.hpp"
#include "nls/geometry.hpp"

namespace nls {

/// A space-time function known on the grid: callbacks fill phi(t, x_i) and,
/// when the function varies in time, its exact time derivative. Operators
/// refuse time-varying fields without a derivative (MissingTimeDerivative)
/// rather than finite-differencing them.
struct SpaceTimeField {
    std::function<void(double t, std::span<double> out)> values;
    std::function<void(double t, std::span<double> out)> time_derivative;  // empty if none
    bool time_varying = false;

    std::vector<double> values_at(double t, int n) const {
        std::vector<double> out(n);
        values(t, out);
        return out;
    }
};

inline SpaceTimeField constant_field(std::vector<double> v) {
    SpaceTimeField f;
    f.values = [v = std::move(v)](double, std::span<double> out) {
        for (size_t i = 0; i < out.size(); ++i) out[i] = v[i];
    };
    f.time_varying = false;
    return f;
}

inline SpaceTimeField analytic_field(const Domain& domain,
                                     std::function<double(double, const Point&)> f,
                                     std::function<double(double, const Point&)> dfdt = {},
                                     bool time_varying = true) {
    SpaceTimeField field;
    auto points = domain.points;
    field.values = [points, f = std::move(f)](double t, std::span<double> out) {
        for (size_t i = 0; i < out.size(); ++i) out[i] = f(t, points[i]);
    };
    if (dfdt) {
        field.time_derivative = [points, g = std::move(dfdt)](double t, std::span<double> out) {
            for (size_t i = 0; i < out.size(); ++i) out[i] = g(t, points[i]);
        };
    }
    field.time_varying = time_varying;
    return field;
}

/// Field from expression strings in (t, x, y); `dphi` may be null for
/// time-constant expressions.
inline SpaceTimeField expression_field(const Domain& domain, const Expression& phi,
                                       const Expression* dphi = nullptr) {
    SpaceTimeField field = analytic_field(
        domain,
        [phi](double t, const Point& p) { return phi.eval(t, p.x, p.y); },
        dphi ? std::function<double(double, const Point&)>(
                   [d = *dphi](double t, const Point& p) { return d.eval(t, p.x, p.y); })
             : std::function<double(double, const Point&)>{},
        phi.uses_t());
    return field;
}

}  // namespace nls
