#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "causal_horizon/fields.hpp"
#include "causal_horizon/report.hpp"

namespace ch {

inline const std::vector<std::string> kExperimentKinds = {"scaling", "curvature", "pareto", "sensitivity",
                                                          "highdim", "radar",     "navigate"};

struct ExperimentSpec {
    std::string kind;
    json params = json::object();  // overrides of the per-kind defaults
    std::uint64_t master_seed = 0;
};

// Per-kind defaults, merged under spec.params by run_experiment.
json default_parameters(const std::string& kind);

// Throws UsageError on an unknown kind or parameter key, or a malformed sweep.
ExperimentReport run_experiment(const ExperimentSpec& spec);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

// 2D two-blob cloud: isotropic Gaussians truncated to `radius`, centred at (+-separation/2, 0).
PointCloud synthetic_two_clusters(std::uint64_t seed, int per_cluster = 250, double separation = 6.0,
                                  double std_dev = 0.2, double radius = 0.5);

// beta such that the opposing score peak on the factual-target segment is ratio * D.
double calibrate_stall_beta(const KdeScoreField& score_only, const Vec& factual, const Vec& target, double D,
                            double ratio, int samples = 601);

}  // namespace ch
