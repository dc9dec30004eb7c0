#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nls/geometry.hpp"

namespace nls {

enum class CoefficientForm { Constant, TimeOnly, SpaceOnly, Separable, Product, Tabulated };

/// T-periodic growth rate a(t,x). Analytic forms wrap callables (expression
/// strings are compiled to these by the config loader); the tabulated form
/// interpolates linearly in t between slices sampled on a fixed grid, with the
/// first and the last slice required to coincide.
class Coefficient {
public:
    using SpaceFn = std::function<double(const Point&)>;
    using TimeFn = std::function<double(double)>;

    Coefficient() = default;

    static Coefficient constant(double value, double T = 1.0);
    static Coefficient time_only(TimeFn c, double T, bool lipschitz = true);
    static Coefficient space_only(SpaceFn b, double T = 1.0, bool lipschitz = true);
    static Coefficient separable(SpaceFn b, TimeFn c, double T, bool lipschitz = true);
    static Coefficient product(SpaceFn b, TimeFn c, double T, bool lipschitz = true);
    /// slices[j][i] = a(j*T/(slices.size()-1), x_i) on grid->points.
    static Coefficient tabulated(double T, std::vector<std::vector<double>> slices,
                                 Domain grid, bool lipschitz = true);

    double operator()(double t, const Point& p) const;

    double period() const { return period_; }
    CoefficientForm form() const { return form_; }
    bool time_dependent() const {
        return form_ != CoefficientForm::Constant && form_ != CoefficientForm::SpaceOnly;
    }
    bool lipschitz_in_x() const { return lipschitz_in_x_; }
    void set_lipschitz_in_x(bool v) { lipschitz_in_x_ = v; }

private:
    CoefficientForm form_ = CoefficientForm::Constant;
    double period_ = 1.0;
    double constant_ = 0.0;
    SpaceFn space_;
    TimeFn time_;
    bool lipschitz_in_x_ = true;

    // tabulated data
    std::vector<std::vector<double>> slices_;
    Domain grid_;
};

/// Per-point time average a_T, its extrema, and the space-time average,
/// computed with the rectangle rule on mt uniform nodes over one period.
struct CoefficientStats {
    std::vector<double> a_T;
    double max_aT = 0.0;
    double min_aT = 0.0;
    double spacetime_avg = 0.0;  // (1/(T|Omega|)) int_0^T int_Omega a
    double sup_a = 0.0;          // over the sampled space-time grid
    double inf_a = 0.0;
    int mt = 0;
};

CoefficientStats time_average(const Coefficient& coeff, const Domain& domain, int mt);

/// a(t, x_i) for every grid point.
std::vector<double> sample_on_grid(const Coefficient& coeff, const Domain& domain, double t);

}  // namespace nls
