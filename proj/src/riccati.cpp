#include "causal_horizon/riccati.hpp"

#include <cmath>
#include <numbers>

#include "causal_horizon/errors.hpp"

namespace ch {

void RiccatiConfig::validate() const {
    if (n < 1) throw DomainError("riccati: n must be >= 1");
    if (!(dt > 0) || dt > t_max) throw DomainError("riccati: need 0 < dt <= t_max");
    if (!(theta_floor < 0)) throw DomainError("riccati: theta_floor must be negative");
}

namespace {

constexpr double kHalvingTrigger = 1e3;
constexpr int kMaxHalvings = 20;

int halvings_for(double theta) {
    double a = std::abs(theta);
    if (a <= kHalvingTrigger) return 0;
    int k = static_cast<int>(std::ceil(std::log2(a / kHalvingTrigger)));
    return std::min(std::max(k, 1), kMaxHalvings);
}

}  // namespace

RiccatiTrace integrate_riccati(const RiccatiConfig& c) {
    c.validate();
    auto rhs = [&](double t, double th) {
        double s = c.shear ? c.shear(t) : 0.0;
        if (s < 0) throw DomainError("riccati: shear must be non-negative");
        return -th * th / c.n - s + c.curvature_forcing;
    };

    RiccatiTrace tr;
    double t = 0.0, th = c.theta0, lj = 0.0;
    tr.times.push_back(t);
    tr.theta.push_back(th);
    tr.logJ.push_back(lj);

    while (t < c.t_max) {
        double h = std::ldexp(c.dt, -halvings_for(th));
        h = std::min(h, c.t_max - t);
        if (h <= 0) break;
        double f = rhs(t, th);
        double next = th + h * f;
        if (!std::isfinite(next)) throw NumericalInstabilityError("riccati: non-finite theta", tr);

        if (next <= c.theta_floor) {
            // Euler substep is linear in its length; bisect for the floor crossing.
            double lo = 0.0, hi = h;
            for (int i = 0; i < 60; ++i) {
                double mid = 0.5 * (lo + hi);
                if (th + mid * f <= c.theta_floor) hi = mid; else lo = mid;
            }
            double thc = th + hi * f;
            lj += 0.5 * (th + thc) * hi;
            t += hi;
            tr.times.push_back(t);
            tr.theta.push_back(thc);
            tr.logJ.push_back(lj);
            tr.blew_up = true;
            tr.blowup_time = t;
            return tr;
        }
        lj += 0.5 * (th + next) * h;
        th = next;
        t += h;
        tr.times.push_back(t);
        tr.theta.push_back(th);
        tr.logJ.push_back(lj);
    }
    return tr;
}

double analytic_blowup_time(AnalyticKind kind, int n, double p) {
    if (kind == AnalyticKind::euclidean) return n / p;
    return 0.5 * std::numbers::pi * std::sqrt(n / p);
}

AnalyticValue analytic_reference(AnalyticKind kind, int n, double p, double t) {
    if (n < 1 || !(p > 0)) throw DomainError("analytic_reference: need n >= 1 and a positive rate");
    if (t < 0 || t >= analytic_blowup_time(kind, n, p))
        throw DomainError("analytic_reference: t at or past the analytic blow-up");
    if (kind == AnalyticKind::euclidean) {
        double base = 1.0 - p * t / n;
        double lj = n * std::log(base);
        return {n * p / (p * t - n), lj, std::pow(base, n)};
    }
    double w = std::sqrt(p / n);
    double c = std::cos(w * t);
    double lj = n * std::log(c);
    return {-std::sqrt(n * p) * std::tan(w * t), lj, std::pow(c, n)};
}

std::optional<double> constant_forcing_blowup(int n, double theta0, double b) {
    double rn = std::sqrt(static_cast<double>(n));
    if (b == 0) {
        if (theta0 < 0) return -n / theta0;
        return std::nullopt;
    }
    if (b < 0) {
        double a = std::sqrt(-b);
        double phi = std::atan(-theta0 / (rn * a));
        return (rn / a) * (0.5 * std::numbers::pi - phi);
    }
    double a = std::sqrt(b);
    double e = rn * a;
    if (theta0 >= -e) return std::nullopt;
    double z = -theta0 / e;
    return (rn / a) * 0.5 * std::log((z + 1.0) / (z - 1.0));
}

}  // namespace ch
