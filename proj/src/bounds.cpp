#include "causal_horizon/bounds.hpp"

#include <cmath>
#include <iostream>
#include <numbers>

#include "causal_horizon/errors.hpp"

namespace ch {

void GeometryParams::validate() const {
    if (n < 1) throw DomainError("n must be >= 1");
    if (!(Delta > 0)) throw DomainError("Delta must be > 0");
    if (!(sigma > 0)) throw DomainError("sigma must be > 0");
    if (kappa < 0 || K_pos < 0 || kappa_minus < 0) throw DomainError("curvature magnitudes must be >= 0");
    if (D < 0) throw DomainError("D must be >= 0");
    if (!(C_V > 0) || !(C0 > 0)) throw DomainError("C_V and C0 must be > 0");
    if (density_ratio < 1) throw DomainError("density_ratio must be >= 1");
    if (kappa != 0 && K_pos != 0) throw DomainError("kappa and K_pos are mutually exclusive");
}

std::string to_string(BoundResult::Status s) {
    switch (s) {
        case BoundResult::Status::value: return "value";
        case BoundResult::Status::no_guarantee: return "no-guarantee";
        case BoundResult::Status::unbounded: return "unbounded";
        case BoundResult::Status::impossible: return "impossible";
    }
    return "unknown";
}

double x_coth_x(double x) {
    double ax = std::abs(x);
    if (ax < 1e-4) return 1.0 + ax * ax / 3.0;
    return ax / std::tanh(ax);
}

double mollified_entropy(int n, double sigma) {
    if (n < 1) throw DomainError("mollified_entropy: n must be >= 1");
    if (!(sigma > 0)) throw DomainError("mollified_entropy: sigma must be > 0");
    return n * std::log(sigma) + 0.5 * n * std::log(2.0 * std::numbers::pi * std::numbers::e);
}

double horizon_energy_lower_bound(const GeometryParams& p, double epsilon) {
    if (!(epsilon > 0)) throw DomainError("horizon_energy_lower_bound: epsilon must be > 0");
    if (!(p.sigma > 0)) throw DomainError("horizon_energy_lower_bound: sigma must be > 0");
    return (p.C_V / epsilon) * p.D * p.D + (p.n / epsilon) * std::log(1.0 / p.sigma);
}

double initial_contraction_bound(const GeometryParams& p) {
    if (!(p.Delta > 0)) throw DomainError("initial_contraction_bound: Delta must be > 0");
    if (p.density_ratio < 1) throw DomainError("initial_contraction_bound: density_ratio must be >= 1");
    if (p.sigma / p.Delta > 0.5)
        std::cerr << "warning: sigma/Delta = " << p.sigma / p.Delta
                  << " > 0.5, outside the sigma << Delta regime\n";
    return 1.0 - (p.sigma / p.Delta) * std::pow(p.density_ratio, 1.0 / p.n) + x_coth_x(p.kappa * p.D);
}

BoundResult tearing_time_bound(int n, double K, double D, double lambda0) {
    if (!(lambda0 > 0)) throw DomainError("tearing_time_bound: lambda0 must be > 0");
    if (K < 0 || D < 0) throw DomainError("tearing_time_bound: K and D must be >= 0");
    if (n < 1) throw DomainError("tearing_time_bound: n must be >= 1");
    if (K == 0) return BoundResult::of(n / lambda0);
    double s = std::sqrt(n * K) * D;
    if (lambda0 <= s) return BoundResult::verdict(BoundResult::Status::no_guarantee);
    double z = lambda0 / s;
    return BoundResult::of((n / s) * 0.5 * std::log((z + 1.0) / (z - 1.0)));
}

BoundResult conjugate_point_distance(double K_pos) {
    if (K_pos < 0) throw DomainError("conjugate_point_distance: K_pos must be >= 0");
    if (K_pos == 0) return BoundResult::verdict(BoundResult::Status::unbounded);
    return BoundResult::of(std::numbers::pi / std::sqrt(K_pos));
}

BoundResult required_viscosity(double C0, double Delta, double kappa_minus, double D) {
    if (!(C0 > 0) || !(Delta > 0)) throw DomainError("required_viscosity: C0 and Delta must be > 0");
    if (kappa_minus < 0 || D < 0) throw DomainError("required_viscosity: kappa_minus and D must be >= 0");
    double denom = 1.0 - kappa_minus * Delta * Delta;
    if (denom <= 0) return BoundResult::verdict(BoundResult::Status::impossible);
    return BoundResult::of(C0 * Delta * D / denom);
}

double identity_entropy_bound(int n, double epsilon) {
    if (!(epsilon > 0)) throw DomainError("identity_entropy_bound: epsilon must be > 0");
    return 0.5 * n * std::log(4.0 * std::numbers::pi * std::numbers::e * epsilon);
}

double shock_thickness(double epsilon, double D) {
    if (!(D > 0)) throw DomainError("shock_thickness: D must be > 0");
    if (epsilon < 0) throw DomainError("shock_thickness: epsilon must be >= 0");
    return epsilon / D;
}

}  // namespace ch
