#pragma once

#include <optional>

#include "causal_horizon/fields.hpp"
#include "causal_horizon/rng.hpp"

namespace ch {

struct RadarEstimate {
    double mean = 0.0;
    int samples = 0;
    std::optional<double> sample_std;  // undefined for a single probe
    std::uint64_t probe_seed = 0;
};

// Mean of z^T (grad u) z over M Rademacher probes drawn from rng.
RadarEstimate estimate_divergence(const VelocityField& field, const Vec& x, double t, int M, Rng& rng,
                                  std::uint64_t probe_seed = 0);

struct VarianceResult {
    double variance = 0.0;
    bool asymmetric = false;  // true when the input was symmetrized first
};

// 2 |A|_F^2 - 2 sum a_ii^2, evaluated on the symmetric part of A.
VarianceResult estimator_variance(const Mat& jacobian, double symmetry_tol = 1e-8);

}  // namespace ch
