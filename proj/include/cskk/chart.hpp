#pragma once
// Rectangular coordinate charts: per-axis closed intervals, optionally
// periodic. Dimension is 2 (base surface) or 3 (base x fiber); axis 2 is the
// fiber coordinate by convention.

#include <array>
#include <cmath>
#include <string>

#include "cskk/errors.hpp"

namespace cskk {

struct chart_domain {
    int dim = 2;
    std::array<double, 3> lo{0, 0, 0};
    std::array<double, 3> hi{1, 1, 1};
    std::array<bool, 3> periodic{false, false, false};

    chart_domain() = default;

    chart_domain(int dimension, std::array<double, 3> lo_, std::array<double, 3> hi_,
                 std::array<bool, 3> periodic_)
        : dim(dimension), lo(lo_), hi(hi_), periodic(periodic_) {
        if (dim != 2 && dim != 3)
            throw chart_error("chart_domain: dim must be 2 or 3");
        for (int a = 0; a < dim; ++a) {
            if (!(hi[a] - lo[a] > 0.0) || !std::isfinite(lo[a]) || !std::isfinite(hi[a]))
                throw chart_error("chart_domain: axis " + std::to_string(a) +
                                  " must have strictly positive finite length");
        }
    }

    /// Convenience: 2-axis chart.
    static chart_domain make2(double lo0, double hi0, bool per0,
                              double lo1, double hi1, bool per1) {
        return chart_domain(2, {lo0, lo1, 0}, {hi0, hi1, 1}, {per0, per1, false});
    }

    double length(int axis) const {
        check_axis(axis);
        return hi[axis] - lo[axis];
    }

    bool is_periodic(int axis) const {
        check_axis(axis);
        return periodic[axis];
    }

    /// Wrap a coordinate into the fundamental interval on a periodic axis;
    /// identity on non-periodic axes.
    double wrap(int axis, double x) const {
        check_axis(axis);
        if (!periodic[axis]) return x;
        const double L = hi[axis] - lo[axis];
        double t = std::fmod(x - lo[axis], L);
        if (t < 0) t += L;
        return lo[axis] + t;
    }

    /// True if x lies inside (or on the boundary of) the axis interval.
    bool contains(int axis, double x) const {
        check_axis(axis);
        return periodic[axis] || (x >= lo[axis] && x <= hi[axis]);
    }

    /// True if the point lies inside the chart on every axis.
    bool contains(const vec2& x) const { return contains(0, x[0]) && contains(1, x[1]); }

private:
    void check_axis(int axis) const {
        if (axis < 0 || axis >= dim)
            throw chart_error("chart_domain: axis index out of range");
    }
};

} // namespace cskk
