#include "causal_horizon/hutchinson.hpp"

#include <cmath>
#include <iostream>

#include "causal_horizon/errors.hpp"

namespace ch {

RadarEstimate estimate_divergence(const VelocityField& field, const Vec& x, double t, int M, Rng& rng,
                                  std::uint64_t probe_seed) {
    if (M < 1) throw DomainError("estimate_divergence: M must be >= 1");
    const int n = field.dim();
    Vec z(n);
    double sum = 0.0, sumsq = 0.0;
    for (int m = 0; m < M; ++m) {
        for (int i = 0; i < n; ++i) z[i] = rademacher(rng);
        double q = z.dot(field.jvp(x, t, z));
        sum += q;
        sumsq += q * q;
    }
    RadarEstimate r;
    r.mean = sum / M;
    r.samples = M;
    r.probe_seed = probe_seed;
    if (M > 1) {
        double var = (sumsq - M * r.mean * r.mean) / (M - 1);
        r.sample_std = std::sqrt(std::max(var, 0.0));
    }
    return r;
}

VarianceResult estimator_variance(const Mat& A, double tol) {
    if (A.rows() != A.cols()) throw DomainError("estimator_variance: matrix must be square");
    VarianceResult r;
    Mat S = A;
    double asym = (A - A.transpose()).cwiseAbs().maxCoeff();
    if (asym > tol) {
        r.asymmetric = true;
        S = 0.5 * (A + A.transpose());
        std::cerr << "warning: estimator_variance symmetrized a non-symmetric Jacobian (max |a_ij - a_ji| = "
                  << asym << ")\n";
    }
    r.variance = 2.0 * S.squaredNorm() - 2.0 * S.diagonal().squaredNorm();
    return r;
}

}  // namespace ch
