#include "nls/coefficient.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nls {

Coefficient Coefficient::constant(double value, double T) {
    Coefficient c;
    c.form_ = CoefficientForm::Constant;
    c.period_ = T;
    c.constant_ = value;
    return c;
}

Coefficient Coefficient::time_only(TimeFn fn, double T, bool lipschitz) {
    Coefficient c;
    c.form_ = CoefficientForm::TimeOnly;
    c.period_ = T;
    c.time_ = std::move(fn);
    c.lipschitz_in_x_ = lipschitz;
    return c;
}

Coefficient Coefficient::space_only(SpaceFn fn, double T, bool lipschitz) {
    Coefficient c;
    c.form_ = CoefficientForm::SpaceOnly;
    c.period_ = T;
    c.space_ = std::move(fn);
    c.lipschitz_in_x_ = lipschitz;
    return c;
}

Coefficient Coefficient::separable(SpaceFn b, TimeFn cfn, double T, bool lipschitz) {
    Coefficient c;
    c.form_ = CoefficientForm::Separable;
    c.period_ = T;
    c.space_ = std::move(b);
    c.time_ = std::move(cfn);
    c.lipschitz_in_x_ = lipschitz;
    return c;
}

Coefficient Coefficient::product(SpaceFn b, TimeFn cfn, double T, bool lipschitz) {
    Coefficient c;
    c.form_ = CoefficientForm::Product;
    c.period_ = T;
    c.space_ = std::move(b);
    c.time_ = std::move(cfn);
    c.lipschitz_in_x_ = lipschitz;
    return c;
}

Coefficient Coefficient::tabulated(double T, std::vector<std::vector<double>> slices,
                                   Domain grid, bool lipschitz) {
    if (!(T > 0.0)) {
        throw ValidationError("tabulated coefficient needs a positive period");
    }
    if (slices.size() < 2) {
        throw ValidationError("tabulated coefficient needs at least 2 time slices");
    }
    const size_t n = grid.points.size();
    for (const auto& s : slices) {
        if (s.size() != n) {
            throw ShapeMismatch("tabulated slice has " + std::to_string(s.size()) +
                                " entries, grid has " + std::to_string(n));
        }
    }
    for (size_t i = 0; i < n; ++i) {
        if (std::abs(slices.front()[i] - slices.back()[i]) > 1e-12) {
            throw ValidationError("tabulated coefficient is not periodic: first and last "
                                  "time slices differ at point " + std::to_string(i));
        }
    }
    Coefficient c;
    c.form_ = CoefficientForm::Tabulated;
    c.period_ = T;
    c.slices_ = std::move(slices);
    c.grid_ = std::move(grid);
    c.lipschitz_in_x_ = lipschitz;
    return c;
}

double Coefficient::operator()(double t, const Point& p) const {
    switch (form_) {
        case CoefficientForm::Constant:
            return constant_;
        case CoefficientForm::TimeOnly:
            return time_(t);
        case CoefficientForm::SpaceOnly:
            return space_(p);
        case CoefficientForm::Separable:
            return space_(p) + time_(t);
        case CoefficientForm::Product:
            return space_(p) * time_(t);
        case CoefficientForm::Tabulated: {
            // nearest grid point, then linear interpolation in t with wrap
            int ix = static_cast<int>(std::floor((p.x - grid_.bounds[0][0]) / grid_.spacing(0)));
            ix = std::clamp(ix, 0, grid_.cells[0] - 1);
            int idx = ix;
            if (grid_.dimension == 2) {
                int iy = static_cast<int>(
                    std::floor((p.y - grid_.bounds[1][0]) / grid_.spacing(1)));
                iy = std::clamp(iy, 0, grid_.cells[1] - 1);
                idx = iy * grid_.cells[0] + ix;
            }
            const int mt = static_cast<int>(slices_.size()) - 1;
            double s = std::fmod(t, period_);
            if (s < 0.0) s += period_;
            const double pos = s / period_ * mt;
            int j = std::min(static_cast<int>(std::floor(pos)), mt - 1);
            const double frac = pos - j;
            return (1.0 - frac) * slices_[j][idx] + frac * slices_[j + 1][idx];
        }
    }
    return 0.0;
}

std::vector<double> sample_on_grid(const Coefficient& coeff, const Domain& domain, double t) {
    std::vector<double> out(domain.points.size());
    for (size_t i = 0; i < out.size(); ++i) {
        out[i] = coeff(t, domain.points[i]);
    }
    return out;
}

CoefficientStats time_average(const Coefficient& coeff, const Domain& domain, int mt) {
    if (mt < 2) {
        throw ValidationError("time averaging needs mt >= 2 nodes, got " + std::to_string(mt));
    }
    const int n = domain.size();
    CoefficientStats st;
    st.mt = mt;
    st.a_T.assign(n, 0.0);
    st.sup_a = -std::numeric_limits<double>::infinity();
    st.inf_a = std::numeric_limits<double>::infinity();

    if (!coeff.time_dependent()) {
        auto vals = sample_on_grid(coeff, domain, 0.0);
        st.a_T = vals;
        st.sup_a = *std::max_element(vals.begin(), vals.end());
        st.inf_a = *std::min_element(vals.begin(), vals.end());
    } else {
        const double T = coeff.period();
        for (int j = 0; j < mt; ++j) {
            const double t = T * j / mt;
            for (int i = 0; i < n; ++i) {
                const double v = coeff(t, domain.points[i]);
                st.a_T[i] += v;
                st.sup_a = std::max(st.sup_a, v);
                st.inf_a = std::min(st.inf_a, v);
            }
        }
        for (double& v : st.a_T) v /= mt;
    }

    st.max_aT = *std::max_element(st.a_T.begin(), st.a_T.end());
    st.min_aT = *std::min_element(st.a_T.begin(), st.a_T.end());
    st.spacetime_avg = integrate(domain, st.a_T) / domain.volume;
    return st;
}

}  // namespace nls
