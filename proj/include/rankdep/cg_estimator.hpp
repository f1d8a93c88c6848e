#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "rankdep/copula.hpp"
#include "rankdep/errors.hpp"

namespace rankdep {

/// Competing-risks observations: T = min(X, Y) with delta = 1 when the X
/// event was observed (X < Y) and delta = 0 when the Y event was (Y < X).
class CompetingRisksData {
public:
    struct Record {
        double time;
        int delta;
    };

    explicit CompetingRisksData(std::vector<Record> records) : records_(std::move(records)) {
        if (records_.empty()) throw InvalidInput("competing risks data: empty");
        for (const auto& r : records_) {
            if (!(r.time > 0.0) || !std::isfinite(r.time))
                throw InvalidInput("competing risks data: times must be positive and finite");
            if (r.delta != 0 && r.delta != 1)
                throw InvalidInput("competing risks data: delta must be 0 or 1");
        }
    }

    int n() const noexcept { return static_cast<int>(records_.size()); }
    const std::vector<Record>& records() const noexcept { return records_; }

    CompetingRisksData without(int index) const {
        std::vector<Record> rest;
        rest.reserve(records_.size() - 1);
        for (int i = 0; i < n(); ++i)
            if (i != index) rest.push_back(records_[static_cast<std::size_t>(i)]);
        return CompetingRisksData(std::move(rest));
    }

private:
    std::vector<Record> records_;
};

/// Step estimates of the marginal distribution functions F (X margin) and
/// G (Y margin) on the grid of distinct observed times.
struct StepSurvivalEstimate {
    std::vector<double> times; // distinct, ascending
    std::vector<double> f_hat; // F at each grid time, nondecreasing
    std::vector<double> g_hat; // G at each grid time, nondecreasing

    /// Step-function lookup: value at the largest grid time <= t, 0 before
    /// the first grid time, last value beyond the grid.
    double f_at(double t) const { return step_at(f_hat, t); }
    double g_at(double t) const { return step_at(g_hat, t); }

private:
    double step_at(const std::vector<double>& v, double t) const {
        auto it = std::upper_bound(times.begin(), times.end(), t);
        if (it == times.begin()) return 0.0;
        return v[static_cast<std::size_t>(std::distance(times.begin(), it)) - 1];
    }
};

enum class Cause { X, Y };

namespace detail {

struct GridStep {
    double time;
    bool has_event;   // any delta = 1 at this time
    bool has_censor;  // any delta = 0 at this time
    int n_greater;    // count of records with T > time
    int n_censor_here;
};

inline std::vector<GridStep> build_grid(const CompetingRisksData& data) {
    std::vector<double> times;
    times.reserve(data.records().size());
    for (const auto& r : data.records()) times.push_back(r.time);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    std::vector<GridStep> grid;
    grid.reserve(times.size());
    for (double t : times) {
        GridStep step{t, false, false, 0, 0};
        for (const auto& r : data.records()) {
            if (r.time > t) ++step.n_greater;
            if (r.time == t) {
                if (r.delta == 1)
                    step.has_event = true;
                else {
                    step.has_censor = true;
                    ++step.n_censor_here;
                }
            }
        }
        grid.push_back(step);
    }
    return grid;
}

/// Solves h(x) = 1 - x - other + C(...) - target = 0 for x on
/// [previous, 1] by bisection. h is nonincreasing in x, h(1) = -target <= 0,
/// and h(previous) >= 0 whenever the data and copula are consistent.
template <class Residual>
double bisect_step(Residual&& h, double previous, double tol, int max_iter) {
    double lo = previous, hi = 1.0;
    const double h_lo = h(lo);
    const double h_hi = h(hi);
    if (h_lo < -tol || h_hi > tol)
        throw NumericError("copula-graphic step: residual does not bracket a root");
    if (std::fabs(h_lo) < tol) return lo;
    if (std::fabs(h_hi) < tol) return hi;

    double mid = 0.5 * (lo + hi);
    for (int i = 0; i < max_iter; ++i) {
        mid = 0.5 * (lo + hi);
        const double hm = h(mid);
        if (std::fabs(hm) < tol) return mid;
        if (hm > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    throw NumericError("copula-graphic step: bisection did not converge");
}

} // namespace detail

/// Copula-graphic estimator of the marginal distribution functions from
/// competing-risks data under an assumed copula.
///
/// Per distinct observed time t_i (ascending), with k_hat(t_i) the fraction
/// of records with T > t_i:
///   delta = 1 events: solve  1 - F - G_prev + C(F, G_prev) = k_hat  for F,
///                     holding G at its previous value;
///   delta = 0 events: the symmetric equation solved for G.
/// Each solve is a bisection on [previous value, 1] run until the residual
/// is below `tol`. Tied times are processed once per cause, events before
/// censorings; within a tie the event solve targets the survivor count that
/// still includes the records censored at that time. Beyond the last grid
/// time the estimates continue as constants.
///
/// Requires a copula with a strictly positive density on the unit square;
/// under the independence copula the output coincides with the Kaplan-Meier
/// estimates.
inline StepSurvivalEstimate cg_estimate(const CompetingRisksData& data, const Copula& model,
                                        double tol = 1e-8, int max_iter = 200) {
    if (!model.has_density())
        throw DensityUnavailable("cg_estimate: copula '" + model.name() +
                                 "' has no density; the estimator needs one");
    if (!(tol > 0.0)) throw InvalidInput("cg_estimate: tol must be positive");
    if (max_iter < 1) throw InvalidInput("cg_estimate: max_iter must be >= 1");

    const auto grid = detail::build_grid(data);
    const double n = static_cast<double>(data.n());

    StepSurvivalEstimate out;
    out.times.reserve(grid.size());
    out.f_hat.reserve(grid.size());
    out.g_hat.reserve(grid.size());

    double f_prev = 0.0, g_prev = 0.0;
    for (const auto& step : grid) {
        double f_cur = f_prev, g_cur = g_prev;
        if (step.has_event) {
            // Records censored at this same time are still at risk for the
            // event solve.
            const double target = (step.n_greater + step.n_censor_here) / n;
            const double g_fix = g_cur;
            f_cur = detail::bisect_step(
                [&](double f) { return 1.0 - f - g_fix + model.cdf(f, g_fix) - target; },
                f_cur, tol, max_iter);
        }
        if (step.has_censor) {
            const double target = step.n_greater / n;
            const double f_fix = f_cur;
            g_cur = detail::bisect_step(
                [&](double g) { return 1.0 - f_fix - g + model.cdf(f_fix, g) - target; },
                g_cur, tol, max_iter);
        }
        out.times.push_back(step.time);
        out.f_hat.push_back(f_cur);
        out.g_hat.push_back(g_cur);
        f_prev = f_cur;
        g_prev = g_cur;
    }
    return out;
}

/// Kaplan-Meier product-limit estimate for one cause, treating the other
/// cause as right censoring; reported as cumulative incidence 1 - survival
/// on the grid of distinct observed times. Events precede censorings at
/// tied times. The other margin of the result is identically zero.
inline StepSurvivalEstimate kaplan_meier(const CompetingRisksData& data, Cause cause) {
    const auto grid = detail::build_grid(data);
    const int event_delta = (cause == Cause::X) ? 1 : 0;

    StepSurvivalEstimate out;
    out.times.reserve(grid.size());
    out.f_hat.assign(grid.size(), 0.0);
    out.g_hat.assign(grid.size(), 0.0);

    double survival = 1.0;
    int at_risk = data.n();
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        const double t = grid[gi].time;
        int events = 0, censored = 0;
        for (const auto& r : data.records()) {
            if (r.time == t) {
                if (r.delta == event_delta)
                    ++events;
                else
                    ++censored;
            }
        }
        if (events > 0)
            survival *= 1.0 - static_cast<double>(events) / static_cast<double>(at_risk);
        at_risk -= events + censored;
        out.times.push_back(t);
        auto& margin = (cause == Cause::X) ? out.f_hat : out.g_hat;
        margin[gi] = 1.0 - survival;
    }
    return out;
}

/// Leave-one-out jackknife variance of the copula-graphic estimate of the
/// chosen margin at time t:
///   ((n-1)/n) * sum_i ( S_(i)(t) - S_(.)(t) )^2.
inline double jackknife_variance(const CompetingRisksData& data, const Copula& model, double t,
                                 Cause cause = Cause::X, double tol = 1e-8, int max_iter = 200) {
    const int n = data.n();
    if (n < 2) throw InvalidInput("jackknife_variance: need at least 2 records");

    std::vector<double> loo(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const StepSurvivalEstimate est = cg_estimate(data.without(i), model, tol, max_iter);
        loo[static_cast<std::size_t>(i)] = (cause == Cause::X) ? est.f_at(t) : est.g_at(t);
    }
    double mean = 0.0;
    for (double v : loo) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : loo) ss += (v - mean) * (v - mean);
    return (static_cast<double>(n - 1) / n) * ss;
}

} // namespace rankdep
