#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "bdlab/common.hpp"

namespace bdlab {

// A function sampled on a uniform grid x_i = x0 + i*dx. Integrals are
// trapezoid sums throughout; values are linearly interpolated and treated as
// zero outside the grid.
struct GridFunction {
    double x0 = 0.0;
    double dx = 1.0;
    std::vector<double> values;

    GridFunction() = default;
    GridFunction(double origin, double step, std::vector<double> vals)
        : x0(origin), dx(step), values(std::move(vals)) {}

    static GridFunction sampled(double origin, double step, std::size_t n,
                                const std::function<double(double)>& fn) {
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = fn(origin + static_cast<double>(i) * step);
        return {origin, step, std::move(v)};
    }

    std::size_t size() const { return values.size(); }
    double x_at(std::size_t i) const { return x0 + static_cast<double>(i) * dx; }
    double x_back() const { return values.empty() ? x0 : x_at(values.size() - 1); }

    double trapezoid_weight(std::size_t i) const {
        return (i == 0 || i + 1 == values.size()) ? 0.5 * dx : dx;
    }

    double integral() const {
        if (values.size() < 2) return 0.0;
        double s = 0.5 * (values.front() + values.back());
        for (std::size_t i = 1; i + 1 < values.size(); ++i) s += values[i];
        return s * dx;
    }

    // int x f(x) dx, trapezoid.
    double first_moment() const {
        if (values.size() < 2) return 0.0;
        double s = 0.5 * (values.front() * x0 + values.back() * x_back());
        for (std::size_t i = 1; i + 1 < values.size(); ++i) s += values[i] * x_at(i);
        return s * dx;
    }

    double value_at(double x) const {
        if (values.empty()) return 0.0;
        const double u = (x - x0) / dx;
        if (u < 0.0 || u > static_cast<double>(values.size() - 1)) return 0.0;
        const auto i = static_cast<std::size_t>(u);
        if (i + 1 >= values.size()) return values.back();
        const double w = u - static_cast<double>(i);
        return values[i] * (1.0 - w) + values[i + 1] * w;
    }

    // Trapezoid cumulative from the right: out[i] = int_{x_i}^{x_end} f.
    std::vector<double> right_cumulative() const {
        std::vector<double> out(values.size(), 0.0);
        for (std::size_t i = values.size(); i-- > 1;) {
            out[i - 1] = out[i] + 0.5 * dx * (values[i - 1] + values[i]);
        }
        return out;
    }

    void scale(double s) {
        for (double& v : values) v *= s;
    }

    void normalize_to(double target_mass) {
        const double m = integral();
        if (m <= 0.0) throw ValidationError("normalize_to: non-positive mass");
        scale(target_mass / m);
    }
};

// Tail values F(x) = int_x^inf f at query points, interpolating the trapezoid
// cumulative linearly inside cells. Left of the grid returns total mass, right
// of it returns 0.
inline std::vector<double> tail_of(const GridFunction& f, const std::vector<double>& xs) {
    const std::vector<double> cum = f.right_cumulative();
    std::vector<double> out;
    out.reserve(xs.size());
    const double total = cum.empty() ? 0.0 : cum.front();
    for (double x : xs) {
        const double u = (x - f.x0) / f.dx;
        if (u <= 0.0) {
            out.push_back(total);
        } else if (u >= static_cast<double>(f.size() - 1)) {
            out.push_back(0.0);
        } else {
            const auto i = static_cast<std::size_t>(u);
            const double w = u - static_cast<double>(i);
            out.push_back(cum[i] * (1.0 - w) + cum[i + 1] * w);
        }
    }
    return out;
}

}  // namespace bdlab
