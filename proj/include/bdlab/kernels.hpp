#pragma once

#include <algorithm>
#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bdlab/common.hpp"
#include "bdlab/grid_function.hpp"
#include "bdlab/rng.hpp"

namespace bdlab {

enum class KernelFamily { Uniform, Gaussian, Laplace, Tabulated };

// Symmetric displacement distribution rho together with its tail R, moment
// generating function phi (with derivatives), maximal decay rate theta_max,
// and an inverse-CDF sampler. Immutable after construction.
class DisplacementKernel {
  public:
    static DisplacementKernel uniform(double half_width) {
        require_positive(half_width, "uniform half width");
        return DisplacementKernel(KernelFamily::Uniform, half_width, kInf);
    }

    static DisplacementKernel gaussian(double sigma) {
        require_positive(sigma, "gaussian sigma");
        return DisplacementKernel(KernelFamily::Gaussian, sigma, kInf);
    }

    static DisplacementKernel laplace(double scale) {
        require_positive(scale, "laplace scale");
        return DisplacementKernel(KernelFamily::Laplace, scale, 1.0 / scale);
    }

    // Density on a uniform grid. theta_max cannot be inferred from finite
    // data; callers that do not declare it get infinity and a warning.
    static DisplacementKernel tabulated(GridFunction density,
                                        std::optional<double> theta_max = std::nullopt) {
        if (density.size() < 3) throw ValidationError("tabulated kernel needs >= 3 points");
        if (!theta_max) {
            std::cerr << "bdlab: tabulated kernel without declared theta_max, assuming infinity\n";
        }
        DisplacementKernel k(KernelFamily::Tabulated, 0.0, theta_max.value_or(kInf));
        const double mass = density.integral();
        if (mass <= 0.0) throw ValidationError("tabulated kernel has non-positive mass");
        density.scale(1.0 / mass);
        k.table_ = std::move(density);
        k.build_table_aux();
        return k;
    }

    KernelFamily family() const { return family_; }
    double parameter() const { return param_; }
    double theta_max() const { return theta_max_; }

    double density(double x) const {
        switch (family_) {
            case KernelFamily::Uniform:
                return std::fabs(x) < param_ ? 0.5 / param_ : 0.0;
            case KernelFamily::Gaussian: {
                const double z = x / param_;
                return std::exp(-0.5 * z * z) / (param_ * std::sqrt(2.0 * 3.14159265358979323846));
            }
            case KernelFamily::Laplace:
                return 0.5 / param_ * std::exp(-std::fabs(x) / param_);
            case KernelFamily::Tabulated:
                return table_.value_at(x);
        }
        return 0.0;
    }

    // R(x) = int_x^inf rho.
    double tail(double x) const {
        switch (family_) {
            case KernelFamily::Uniform:
                if (x <= -param_) return 1.0;
                if (x >= param_) return 0.0;
                return (param_ - x) / (2.0 * param_);
            case KernelFamily::Gaussian:
                return 0.5 * std::erfc(x / (param_ * std::sqrt(2.0)));
            case KernelFamily::Laplace:
                return x >= 0.0 ? 0.5 * std::exp(-x / param_)
                                : 1.0 - 0.5 * std::exp(x / param_);
            case KernelFamily::Tabulated: {
                if (table_cum_.empty()) return 0.0;
                const double u = (x - table_.x0) / table_.dx;
                if (u <= 0.0) return 1.0;
                if (u >= static_cast<double>(table_.size() - 1)) return 0.0;
                const auto i = static_cast<std::size_t>(u);
                const double w = u - static_cast<double>(i);
                return table_cum_[i] * (1.0 - w) + table_cum_[i + 1] * w;
            }
        }
        return 0.0;
    }

    // phi(theta) = int e^{theta x} rho(x) dx; +inf marker at |theta| >= theta_max.
    double mgf(double theta) const {
        if (std::fabs(theta) >= theta_max_) return kInf;
        switch (family_) {
            case KernelFamily::Uniform: {
                const double u = theta * param_;
                if (std::fabs(u) < 1e-4) return 1.0 + u * u / 6.0 + u * u * u * u / 120.0;
                return std::sinh(u) / u;
            }
            case KernelFamily::Gaussian:
                return std::exp(0.5 * theta * theta * param_ * param_);
            case KernelFamily::Laplace: {
                const double u = theta * param_;
                return 1.0 / (1.0 - u * u);
            }
            case KernelFamily::Tabulated:
                return tabulated_exp_moment(theta, 0);
        }
        return kInf;
    }

    double mgf_d1(double theta) const {
        if (std::fabs(theta) >= theta_max_) return kInf;
        switch (family_) {
            case KernelFamily::Uniform: {
                const double h = param_, u = theta * h;
                if (std::fabs(u) < 1e-4) return h * (u / 3.0 + u * u * u / 30.0);
                return h * (u * std::cosh(u) - std::sinh(u)) / (u * u);
            }
            case KernelFamily::Gaussian:
                return theta * param_ * param_ * mgf(theta);
            case KernelFamily::Laplace: {
                const double s = param_, u = theta * s;
                const double d = 1.0 - u * u;
                return 2.0 * s * u / (d * d);
            }
            case KernelFamily::Tabulated: {
                const double h = 1e-5 * std::max(std::fabs(theta), 1e-3);
                return (tabulated_exp_moment(theta + h, 0) - tabulated_exp_moment(theta - h, 0)) /
                       (2.0 * h);
            }
        }
        return kInf;
    }

    double mgf_d2(double theta) const {
        if (std::fabs(theta) >= theta_max_) return kInf;
        switch (family_) {
            case KernelFamily::Uniform: {
                const double h = param_, u = theta * h;
                if (std::fabs(u) < 1e-3) return h * h * (1.0 / 3.0 + u * u / 10.0);
                return h * h * ((u * u + 2.0) * std::sinh(u) - 2.0 * u * std::cosh(u)) /
                       (u * u * u);
            }
            case KernelFamily::Gaussian: {
                const double s2 = param_ * param_;
                return (s2 + theta * theta * s2 * s2) * mgf(theta);
            }
            case KernelFamily::Laplace: {
                const double s = param_, u = theta * s;
                const double d = 1.0 - u * u;
                return 2.0 * s * s * (1.0 + 3.0 * u * u) / (d * d * d);
            }
            case KernelFamily::Tabulated: {
                const double h = 1e-5 * std::max(std::fabs(theta), 1e-3);
                return (tabulated_exp_moment(theta + h, 0) - 2.0 * tabulated_exp_moment(theta, 0) +
                        tabulated_exp_moment(theta - h, 0)) /
                       (h * h);
            }
        }
        return kInf;
    }

    // i.i.d. draw by inverse CDF; one uniform per draw.
    double sample(RandomStream& rng) const {
        const double u = rng.uniform01();
        switch (family_) {
            case KernelFamily::Uniform:
                return param_ * (2.0 * u - 1.0);
            case KernelFamily::Gaussian:
                return param_ * detail::inverse_normal_cdf(std::min(std::max(u, 1e-300), 1.0 - 1e-16));
            case KernelFamily::Laplace:
                return u < 0.5 ? param_ * std::log(2.0 * std::max(u, 1e-300))
                               : -param_ * std::log(2.0 * std::max(1.0 - u, 1e-300));
            case KernelFamily::Tabulated:
                return sample_table(u);
        }
        return 0.0;
    }

    // b = int_0^inf x rho(x) dx. For N = 1 the selection process is a random
    // walk with jump law max(R, 0) and speed b.
    double positive_mean() const {
        switch (family_) {
            case KernelFamily::Uniform:
                return param_ / 4.0;
            case KernelFamily::Gaussian:
                return param_ / std::sqrt(2.0 * 3.14159265358979323846);
            case KernelFamily::Laplace:
                return 0.5 * param_;
            case KernelFamily::Tabulated: {
                double s = 0.0;
                for (std::size_t i = 0; i < table_.size(); ++i) {
                    const double x = table_.x_at(i);
                    if (x > 0.0) s += x * table_.values[i] * table_.trapezoid_weight(i);
                }
                return s;
            }
        }
        return 0.0;
    }

    // Radius beyond which the density falls under 1e-14 of its peak; used for
    // kernel-row truncation and spatial padding.
    double cutoff_radius() const {
        switch (family_) {
            case KernelFamily::Uniform:
                return param_;
            case KernelFamily::Gaussian:
                return param_ * std::sqrt(2.0 * 14.0 * std::log(10.0));
            case KernelFamily::Laplace:
                return param_ * 14.0 * std::log(10.0);
            case KernelFamily::Tabulated:
                return std::max(std::fabs(table_.x0), std::fabs(table_.x_back()));
        }
        return 1.0;
    }

    // Rejects kernels violating the standing assumptions: asymmetry,
    // unnormalized mass, or phi(theta)/theta staying bounded near theta_max.
    void validate() const {
        const double L = cutoff_radius();
        for (int i = 0; i <= 1000; ++i) {
            const double x = -L + 2.0 * L * static_cast<double>(i) / 1000.0;
            if (std::fabs(density(x) - density(-x)) > 1e-12) {
                throw ValidationError("displacement density is not symmetric");
            }
        }
        if (family_ == KernelFamily::Tabulated) {
            const double mass = table_.integral();
            if (std::fabs(mass - 1.0) > 1e-6) {
                throw ValidationError("tabulated density mass deviates from 1");
            }
        }
        if (std::isfinite(theta_max_)) {
            // phi(theta)/theta must blow up approaching theta_max.
            double cmin = kInf;
            for (int j = 1; j <= 20; ++j) {
                const double th = theta_max_ * (1.0 - std::pow(2.0, -j));
                const double c = mgf(th) / th;
                if (std::isfinite(c)) cmin = std::min(cmin, c);
            }
            const double edge = theta_max_ * (1.0 - 1e-9);
            const double cedge = mgf(edge) / edge;
            if (!(cedge > 1e3 * cmin || cedge == kInf)) {
                throw ValidationError("phi(theta)/theta stays bounded near theta_max");
            }
        }
    }

    std::string spec_string() const {
        std::ostringstream os;
        os.precision(17);
        switch (family_) {
            case KernelFamily::Uniform: os << "uniform(" << param_ << ")"; break;
            case KernelFamily::Gaussian: os << "gaussian(" << param_ << ")"; break;
            case KernelFamily::Laplace: os << "laplace(" << param_ << ")"; break;
            case KernelFamily::Tabulated:
                os << "tabulated(n=" << table_.size() << ",theta_max=" << theta_max_ << ")";
                break;
        }
        return os.str();
    }

  private:
    DisplacementKernel(KernelFamily fam, double param, double theta_max)
        : family_(fam), param_(param), theta_max_(theta_max) {}

    static void require_positive(double v, const char* what) {
        if (!(v > 0.0)) throw ValidationError(std::string(what) + " must be positive");
    }

    void build_table_aux() {
        table_cum_ = table_.right_cumulative();
        // Node CDF for inverse sampling: C_i = 1 - tail_i.
        table_cdf_.resize(table_cum_.size());
        for (std::size_t i = 0; i < table_cum_.size(); ++i) {
            table_cdf_[i] = std::clamp(1.0 - table_cum_[i] / table_cum_.front(), 0.0, 1.0);
        }
        table_cdf_.front() = 0.0;
        table_cdf_.back() = 1.0;
    }

    double tabulated_exp_moment(double theta, int power) const {
        double s = 0.0;
        for (std::size_t i = 0; i < table_.size(); ++i) {
            const double x = table_.x_at(i);
            s += std::pow(x, power) * std::exp(theta * x) * table_.values[i] *
                 table_.trapezoid_weight(i);
        }
        return s;
    }

    double sample_table(double u) const {
        const auto it = std::upper_bound(table_cdf_.begin(), table_cdf_.end(), u);
        std::size_t i = it == table_cdf_.begin()
                            ? 0
                            : static_cast<std::size_t>(it - table_cdf_.begin()) - 1;
        if (i + 1 >= table_cdf_.size()) i = table_cdf_.size() - 2;
        const double c0 = table_cdf_[i], c1 = table_cdf_[i + 1];
        const double w = c1 > c0 ? (u - c0) / (c1 - c0) : 0.0;
        return table_.x_at(i) + w * table_.dx;
    }

    KernelFamily family_;
    double param_;
    double theta_max_;
    GridFunction table_;
    std::vector<double> table_cum_;
    std::vector<double> table_cdf_;
};

}  // namespace bdlab
