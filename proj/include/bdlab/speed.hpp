#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "bdlab/common.hpp"
#include "bdlab/kernels.hpp"

namespace bdlab {

// Analytic backbone: the critical tilt lambda* minimizing c(lambda) =
// phi(lambda)/lambda over (0, theta_max), the asymptotic speed a =
// c(lambda*), and the large-deviation rate Lambda.
struct SpeedReport {
    DisplacementKernel kernel;
    double lambda_star = 0.0;
    double a = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    double lambda_star_golden = 0.0;  // golden-section result before Newton polish

    double c_of_lambda(double lambda) const { return kernel.mgf(lambda) / lambda; }
};

namespace detail {

inline double golden_section_min(const DisplacementKernel& k, double lo, double hi,
                                 double tol) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    double f1 = k.mgf(x1) / x1;
    double f2 = k.mgf(x2) / x2;
    while (b - a > tol * std::max(1.0, a)) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = k.mgf(x1) / x1;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = k.mgf(x2) / x2;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace detail

// Locates lambda* by bracket expansion (doubling, capped below theta_max),
// golden section, then Newton on g(lambda) = lambda phi'(lambda) - phi(lambda).
inline SpeedReport compute_lambda_star(const DisplacementKernel& kernel, double tol = 1e-12) {
    const double theta = kernel.theta_max();
    auto c = [&](double l) { return kernel.mgf(l) / l; };
    auto step_up = [&](double l) {
        return std::isfinite(theta) ? std::min(2.0 * l, 0.5 * (l + theta)) : 2.0 * l;
    };

    double start = 1e-3;
    if (std::isfinite(theta)) start = std::min(start, theta / 4.0);
    // Walk down onto the decreasing branch (c blows up at 0, so this stops).
    for (int i = 0; i < 900 && c(0.5 * start) < c(start); ++i) start *= 0.5;

    std::vector<double> ls{start}, cs{c(start)};
    int rises = 0;
    for (int iter = 0; iter < 260; ++iter) {
        const double next = step_up(ls.back());
        if (std::isfinite(theta) && theta - next < 1e-13 * theta) break;
        const double cn = c(next);
        rises = cn > cs.back() ? rises + 1 : 0;
        ls.push_back(next);
        cs.push_back(cn);
        if (rises >= 2) break;
    }
    if (rises < 2) {
        throw BracketFailure(
            "no interior minimum of phi(lambda)/lambda bracketed below theta_max; "
            "kernel violates the phi(theta)/theta growth assumption");
    }
    std::size_t b = 0;
    for (std::size_t i = 1; i < cs.size(); ++i) {
        if (cs[i] < cs[b]) b = i;
    }
    const double lo = b == 0 ? 0.5 * ls[0] : ls[b - 1];
    const double hi = ls[std::min(b + 1, ls.size() - 1)];

    const double golden = detail::golden_section_min(kernel, lo, hi, 1e-10);

    // Newton polish on g(lambda) = lambda phi' - phi, g' = lambda phi''.
    double l = golden;
    for (int i = 0; i < 60; ++i) {
        const double g = l * kernel.mgf_d1(l) - kernel.mgf(l);
        const double gp = l * kernel.mgf_d2(l);
        if (!(std::isfinite(g) && std::isfinite(gp)) || gp == 0.0) break;
        double step = g / gp;
        double nl = l - step;
        if (nl <= 0.0) nl = 0.5 * l;
        if (std::isfinite(theta) && nl >= theta) nl = 0.5 * (l + theta);
        l = nl;
        if (std::fabs(step) < tol * std::max(1.0, l)) break;
    }

    SpeedReport rep{kernel, l, c(l), lo, hi, golden};
    return rep;
}

// Unique lambda in (0, lambda*] with phi(lambda)/lambda = c, for c >= a;
// bisection on the decreasing branch.
inline double lambda_for_speed(const DisplacementKernel& kernel, double c,
                               const SpeedReport& report) {
    if (c < report.a) {
        throw SpeedBelowCritical("requested speed is below the critical speed a");
    }
    double hi = report.lambda_star;
    if (kernel.mgf(hi) / hi >= c) return hi;
    double lo = hi;
    while (kernel.mgf(lo) / lo < c) {
        lo *= 0.5;
        if (lo < 1e-300) throw NoConvergence("lambda_for_speed bisection bracket failed");
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (kernel.mgf(mid) / mid > c) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-15 * hi) break;
    }
    return 0.5 * (lo + hi);
}

// Lambda(x) = -(sup_{theta>0} [x theta - phi(theta)] + 1). The supremum is
// attained where phi'(theta) = x; -inf marker if the sup is unbounded.
inline double rate_function(const DisplacementKernel& kernel, double x) {
    if (!(x > 0.0)) throw ValidationError("rate_function requires x > 0");
    const double theta_cap = kernel.theta_max();

    // Bracket phi'(theta) = x; phi' is increasing from 0.
    double lo = 1e-12, hi = 1e-3;
    if (std::isfinite(theta_cap)) hi = std::min(hi, theta_cap / 2.0);
    int guard = 0;
    while (kernel.mgf_d1(hi) < x) {
        lo = hi;
        hi = std::isfinite(theta_cap) ? 0.5 * (hi + theta_cap) : 2.0 * hi;
        if (++guard > 400 || (std::isfinite(theta_cap) && theta_cap - hi < 1e-14 * theta_cap)) {
            const double edge = kernel.mgf_d1(hi);
            if (edge < x) return -kInf;  // unbounded supremum
            break;
        }
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (kernel.mgf_d1(mid) < x) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-14 * std::max(1.0, hi)) break;
    }
    const double th = 0.5 * (lo + hi);
    return -(x * th - kernel.mgf(th) + 1.0);
}

}  // namespace bdlab
