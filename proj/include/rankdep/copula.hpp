#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rankdep/errors.hpp"

namespace rankdep {

/// A bivariate copula: a cdf on the unit square with uniform margins.
/// Families without a density (the Frechet bounds) report has_density() ==
/// false and throw from density().
class Copula {
public:
    virtual ~Copula() = default;

    virtual double cdf(double u, double v) const = 0;
    virtual bool has_density() const noexcept { return false; }
    virtual double density(double /*u*/, double /*v*/) const {
        throw DensityUnavailable("copula '" + name() + "' has no density");
    }
    virtual std::string name() const = 0;

    /// C-volume of the rectangle [u1,u2] x [v1,v2] by inclusion-exclusion;
    /// nonnegative for every valid copula.
    double rectangle_mass(double u1, double u2, double v1, double v2) const {
        return cdf(u2, v2) - cdf(u1, v2) - cdf(u2, v1) + cdf(u1, v1);
    }
};

class IndependenceCopula final : public Copula {
public:
    double cdf(double u, double v) const override { return u * v; }
    bool has_density() const noexcept override { return true; }
    double density(double, double) const override { return 1.0; }
    std::string name() const override { return "independence"; }
};

/// Upper Frechet bound M(u,v) = min(u,v): perfect positive dependence.
class FrechetUpperCopula final : public Copula {
public:
    double cdf(double u, double v) const override { return std::min(u, v); }
    std::string name() const override { return "frechet-upper"; }
};

/// Lower Frechet bound W(u,v) = max(u+v-1, 0): perfect negative dependence.
class FrechetLowerCopula final : public Copula {
public:
    double cdf(double u, double v) const override { return std::max(u + v - 1.0, 0.0); }
    std::string name() const override { return "frechet-lower"; }
};

class ClaytonCopula final : public Copula {
public:
    explicit ClaytonCopula(double theta) : theta_(theta) {
        if (!(theta > 0.0)) throw InvalidInput("clayton copula: theta must be > 0");
    }

    double cdf(double u, double v) const override {
        if (u <= 0.0 || v <= 0.0) return 0.0;
        if (u >= 1.0 && v >= 1.0) return 1.0;
        return std::pow(std::pow(u, -theta_) + std::pow(v, -theta_) - 1.0, -1.0 / theta_);
    }

    bool has_density() const noexcept override { return true; }

    double density(double u, double v) const override {
        u = clamp01(u);
        v = clamp01(v);
        const double su = std::pow(u, -theta_);
        const double sv = std::pow(v, -theta_);
        return (1.0 + theta_) * std::pow(u * v, -theta_ - 1.0) *
               std::pow(su + sv - 1.0, -2.0 - 1.0 / theta_);
    }

    double theta() const noexcept { return theta_; }
    std::string name() const override { return "clayton"; }

private:
    static double clamp01(double x) { return std::min(std::max(x, 1e-12), 1.0 - 1e-12); }
    double theta_;
};

class FrankCopula final : public Copula {
public:
    explicit FrankCopula(double theta) : theta_(theta) {
        if (theta == 0.0) throw InvalidInput("frank copula: theta must be nonzero");
    }

    double cdf(double u, double v) const override {
        const double num = std::expm1(-theta_ * u) * std::expm1(-theta_ * v);
        return -std::log1p(num / std::expm1(-theta_)) / theta_;
    }

    bool has_density() const noexcept override { return true; }

    double density(double u, double v) const override {
        const double e = 1.0 - std::exp(-theta_);
        const double num = theta_ * e * std::exp(-theta_ * (u + v));
        const double den = e - (1.0 - std::exp(-theta_ * u)) * (1.0 - std::exp(-theta_ * v));
        return num / (den * den);
    }

    double theta() const noexcept { return theta_; }
    std::string name() const override { return "frank"; }

private:
    double theta_;
};

inline std::unique_ptr<Copula> make_independence() {
    return std::make_unique<IndependenceCopula>();
}
inline std::unique_ptr<Copula> make_frechet_upper() {
    return std::make_unique<FrechetUpperCopula>();
}
inline std::unique_ptr<Copula> make_frechet_lower() {
    return std::make_unique<FrechetLowerCopula>();
}
inline std::unique_ptr<Copula> make_clayton(double theta) {
    return std::make_unique<ClaytonCopula>(theta);
}
inline std::unique_ptr<Copula> make_frank(double theta) {
    return std::make_unique<FrankCopula>(theta);
}

/// Parses "independence", "frechet-upper", "frechet-lower", "clayton:2.0",
/// "frank:-1.5".
inline std::unique_ptr<Copula> parse_copula(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string family = spec.substr(0, colon);
    std::optional<double> param;
    if (colon != std::string::npos) {
        try {
            std::size_t used = 0;
            param = std::stod(spec.substr(colon + 1), &used);
            if (used != spec.size() - colon - 1) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw InvalidInput("copula spec '" + spec + "': bad parameter");
        }
    }
    if (family == "independence") {
        if (param) throw InvalidInput("independence copula takes no parameter");
        return make_independence();
    }
    if (family == "frechet-upper") return make_frechet_upper();
    if (family == "frechet-lower") return make_frechet_lower();
    if (family == "clayton") {
        if (!param) throw InvalidInput("clayton copula requires a theta, e.g. clayton:2.0");
        return make_clayton(*param);
    }
    if (family == "frank") {
        if (!param) throw InvalidInput("frank copula requires a theta, e.g. frank:5.0");
        return make_frank(*param);
    }
    throw InvalidInput("unknown copula family '" + family + "'");
}

/// Population association measures of a copula model.
struct PopulationMeasures {
    double rho = 0.0;
    std::optional<double> tau; // absent when the model has no density
    double gamma = 0.0;
};

/// Population Spearman rho, Kendall tau and Gini gamma by midpoint
/// quadrature:
///   rho   = 12 * int int [C(u,v) - uv] du dv
///   tau   = 4 * E[C(U,V)] - 1          (needs the density)
///   gamma = 4 * [ int C(u,1-u) du - int (u - C(u,u)) du ]
/// Rows are accumulated in fixed order, so results are deterministic.
inline PopulationMeasures population_measures(const Copula& model, int quadrature_points = 256,
                                              bool include_tau = true) {
    if (quadrature_points < 64)
        throw InvalidInput("population_measures: need at least 64 quadrature points");
    if (include_tau && !model.has_density())
        throw DensityUnavailable("population_measures: tau needs a density; "
                                 "pass include_tau = false for cdf-only families");

    const int q = quadrature_points;
    const double w = 1.0 / static_cast<double>(q);

    double rho_acc = 0.0;
    double tau_acc = 0.0;
    for (int i = 0; i < q; ++i) {
        const double u = (i + 0.5) * w;
        double row_rho = 0.0;
        double row_tau = 0.0;
        for (int j = 0; j < q; ++j) {
            const double v = (j + 0.5) * w;
            const double c = model.cdf(u, v);
            row_rho += c - u * v;
            if (include_tau) row_tau += c * model.density(u, v);
        }
        rho_acc += row_rho;
        tau_acc += row_tau;
    }

    double diag_acc = 0.0; // int [C(u,1-u) - u + C(u,u)] du
    for (int i = 0; i < q; ++i) {
        const double u = (i + 0.5) * w;
        diag_acc += model.cdf(u, 1.0 - u) - (u - model.cdf(u, u));
    }

    PopulationMeasures out;
    out.rho = 12.0 * rho_acc * w * w;
    if (include_tau) out.tau = 4.0 * tau_acc * w * w - 1.0;
    out.gamma = 4.0 * diag_acc * w;
    return out;
}

} // namespace rankdep
