#pragma once

#include <string>

namespace ch {

struct GeometryParams {
    int n = 2;
    double kappa = 0.0;
    double K_pos = 0.0;
    double kappa_minus = 0.0;
    double Delta = 1.0;
    double D = 0.0;
    double sigma = 0.1;
    double C_V = 1.0;
    double C0 = 2.0;
    double density_ratio = 1.0;

    // Throws DomainError when an invariant is broken.
    void validate() const;
};

// Value or one of the verdicts some bounds return instead of a number.
struct BoundResult {
    enum class Status { value, no_guarantee, unbounded, impossible };
    Status status = Status::value;
    double value = 0.0;

    bool has_value() const { return status == Status::value; }
    static BoundResult of(double v) { return {Status::value, v}; }
    static BoundResult verdict(Status s) { return {s, 0.0}; }
};

std::string to_string(BoundResult::Status s);

// x * coth(x) with the x -> 0 limit taken analytically.
double x_coth_x(double x);

double mollified_entropy(int n, double sigma);

// Leading terms only; the unspecified -O(1) term is dropped.
double horizon_energy_lower_bound(const GeometryParams& p, double epsilon);

// Emits a warning on stderr when sigma/Delta > 0.5 (outside sigma << Delta).
double initial_contraction_bound(const GeometryParams& p);

BoundResult tearing_time_bound(int n, double K, double D, double lambda0);

BoundResult conjugate_point_distance(double K_pos);

BoundResult required_viscosity(double C0, double Delta, double kappa_minus, double D);

double identity_entropy_bound(int n, double epsilon);

double shock_thickness(double epsilon, double D);

}  // namespace ch
