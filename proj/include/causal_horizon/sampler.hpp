#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "causal_horizon/fields.hpp"
#include "causal_horizon/rng.hpp"

namespace ch {

enum class FlowMode { ode, sde, gacf };
enum class DivergenceMode { exact, hutchinson };

std::string to_string(FlowMode m);
FlowMode flow_mode_from(const std::string& s);

struct SamplerConfig {
    FlowMode mode = FlowMode::ode;
    double dt = 0.005;
    double t_end = 1.0;
    double epsilon_fixed = 0.0;
    double epsilon_req = 0.0;
    double lambda_thresh = -2.5;
    int M = 1;
    double det_floor = 1e-6;
    DivergenceMode divergence_mode = DivergenceMode::hutchinson;
    // Also integrate exact divergence alongside the radar estimate.
    bool track_exact = false;
    // Decide the det_floor crossing from the exact shadow instead of the radar.
    bool terminate_on_exact = false;
    bool record_path = true;

    void validate() const;
};

enum class FlowStatus { completed, det_floor, past_singularity, non_finite };
std::string to_string(FlowStatus s);

struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<Vec> states;
    std::vector<double> divergence_estimates;
    std::vector<double> epsilon_schedule;
    std::vector<double> logJ;
    std::vector<double> exact_logJ;
    bool triggered = false;
    std::optional<double> trigger_time;
    std::optional<double> collapse_time;  // exact shadow crossing, when tracked
    double survival_time = 0.0;
    Vec terminal_state;
    FlowStatus status = FlowStatus::completed;
    std::string error;

    bool survived() const { return status == FlowStatus::completed; }
};

struct FlowBlowupError : std::runtime_error {
    TrajectoryRecord partial;
    FlowBlowupError(const std::string& what, TrajectoryRecord p)
        : std::runtime_error(what), partial(std::move(p)) {}
};

// x <- x + u dt + sqrt(2 eps_t dt) xi. A Gaussian xi is drawn every step whatever eps_t is,
// so ode, sde and gacf runs consume identical stream positions.
TrajectoryRecord run_flow(const VelocityField& field, const Vec& x0, const SamplerConfig& config,
                          StreamPair& streams);

// Trajectory i uses StreamPair(master_seed, i). Errors are recorded in the returned records.
std::vector<TrajectoryRecord> ensemble_run(const VelocityField& field, const std::vector<Vec>& initials,
                                           const SamplerConfig& config, std::uint64_t master_seed,
                                           int threads = 0);

// Mean over dimensions of the sample variance of terminal states.
double identity_loss(const std::vector<TrajectoryRecord>& records);

double survival_fraction(const std::vector<TrajectoryRecord>& records);

}  // namespace ch
