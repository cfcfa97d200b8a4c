#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ch {

struct RiccatiConfig {
    int n = 2;
    double theta0 = 0.0;
    double curvature_forcing = 0.0;
    std::function<double(double)> shear;  // empty means zero
    double dt = 1e-4;
    double t_max = 1.0;
    double theta_floor = -1e6;

    void validate() const;
};

struct RiccatiTrace {
    std::vector<double> times;
    std::vector<double> theta;
    std::vector<double> logJ;
    std::optional<double> blowup_time;
    bool blew_up = false;
};

struct NumericalInstabilityError : std::runtime_error {
    RiccatiTrace partial;
    NumericalInstabilityError(const std::string& what, RiccatiTrace p)
        : std::runtime_error(what), partial(std::move(p)) {}
};

// Explicit Euler on dtheta/dt = -theta^2/n - shear(t) + forcing, halving the step while
// |theta| > 1e3 (at most 20 halvings), with the floor crossing refined by bisection.
RiccatiTrace integrate_riccati(const RiccatiConfig& config);

enum class AnalyticKind { euclidean, focusing };

struct AnalyticValue {
    double theta;
    double logJ;
    double J;
};

// euclidean: theta0 = -lambda0, no forcing. focusing: theta0 = 0, forcing = -b.
AnalyticValue analytic_reference(AnalyticKind kind, int n, double lambda0_or_b, double t);

double analytic_blowup_time(AnalyticKind kind, int n, double lambda0_or_b);

// Exact blow-up time of the constant-coefficient equation from theta0 < 0 with forcing b;
// empty when the solution stays finite.
std::optional<double> constant_forcing_blowup(int n, double theta0, double b);

}  // namespace ch
