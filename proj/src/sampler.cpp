#include "causal_horizon/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "causal_horizon/errors.hpp"
#include "causal_horizon/hutchinson.hpp"

namespace ch {

std::string to_string(FlowMode m) {
    switch (m) {
        case FlowMode::ode: return "ode";
        case FlowMode::sde: return "sde";
        case FlowMode::gacf: return "gacf";
    }
    return "?";
}

FlowMode flow_mode_from(const std::string& s) {
    if (s == "ode") return FlowMode::ode;
    if (s == "sde") return FlowMode::sde;
    if (s == "gacf") return FlowMode::gacf;
    throw DomainError("unknown flow mode: " + s);
}

std::string to_string(FlowStatus s) {
    switch (s) {
        case FlowStatus::completed: return "completed";
        case FlowStatus::det_floor: return "det_floor";
        case FlowStatus::past_singularity: return "past_singularity";
        case FlowStatus::non_finite: return "non_finite";
    }
    return "?";
}

void SamplerConfig::validate() const {
    if (!(dt > 0)) throw DomainError("sampler: dt must be > 0");
    if (!(det_floor > 0 && det_floor < 1)) throw DomainError("sampler: det_floor must lie in (0,1)");
    if (epsilon_fixed < 0 || epsilon_req < 0) throw DomainError("sampler: epsilon values must be >= 0");
    if (M < 1) throw DomainError("sampler: M must be >= 1");
    if (!(t_end > 0)) throw DomainError("sampler: t_end must be > 0");
}

namespace {

struct Probe {
    double estimate;
    double exact;
};

Probe probe(const VelocityField& f, const Vec& x, double t, const SamplerConfig& c, Rng& rng) {
    Probe p{0.0, 0.0};
    if (c.divergence_mode == DivergenceMode::exact) {
        p.estimate = f.divergence(x, t);
        p.exact = p.estimate;
    } else {
        p.estimate = estimate_divergence(f, x, t, c.M, rng).mean;
        if (c.track_exact) p.exact = f.divergence(x, t);
    }
    return p;
}

}  // namespace

TrajectoryRecord run_flow(const VelocityField& field, const Vec& x0, const SamplerConfig& c, StreamPair& streams) {
    c.validate();
    if (x0.size() != field.dim()) throw DomainError("run_flow: x0 has wrong dimension");
    if (!x0.allFinite()) throw DomainError("run_flow: x0 must be finite");

    const int steps = static_cast<int>(std::llround(c.t_end / c.dt));
    const double log_floor = std::log(c.det_floor);
    const bool shadow = c.track_exact || c.divergence_mode == DivergenceMode::exact;
    std::normal_distribution<double> normal(0.0, 1.0);

    TrajectoryRecord rec;
    auto epsilon_for = [&](double est) {
        switch (c.mode) {
            case FlowMode::ode: return 0.0;
            case FlowMode::sde: return c.epsilon_fixed;
            case FlowMode::gacf: return est < c.lambda_thresh ? c.epsilon_req : 0.0;
        }
        return 0.0;
    };
    auto push = [&](double t, const Vec& x, double est, double lj, double ljx) {
        if (c.record_path || rec.times.empty()) {
            rec.times.push_back(t);
            rec.states.push_back(x);
            rec.divergence_estimates.push_back(est);
            rec.epsilon_schedule.push_back(epsilon_for(est));
            rec.logJ.push_back(lj);
            if (shadow) rec.exact_logJ.push_back(ljx);
        }
        if (!rec.triggered && est < c.lambda_thresh) {
            rec.triggered = true;
            rec.trigger_time = t;
        }
    };

    Vec x = x0;
    double t = 0.0, lj = 0.0, ljx = 0.0;
    Probe cur;
    try {
        cur = probe(field, x, t, c, streams.probes);
    } catch (const PastSingularityError& e) {
        rec.status = FlowStatus::past_singularity;
        rec.error = e.what();
        rec.survival_time = 0.0;
        rec.terminal_state = x;
        return rec;
    }
    push(t, x, cur.estimate, lj, ljx);
    rec.survival_time = c.t_end;

    const int dim = field.dim();
    Vec xi(dim);
    for (int k = 0; k < steps; ++k) {
        double eps = epsilon_for(cur.estimate);
        for (int i = 0; i < dim; ++i) xi[i] = normal(streams.noise);
        double t_next = (k + 1) * c.dt;
        Vec xn;
        try {
            xn = x + field.eval(x, t) * c.dt;
        } catch (const PastSingularityError& e) {
            rec.status = FlowStatus::past_singularity;
            rec.error = e.what();
            rec.survival_time = t;
            break;
        }
        if (eps > 0) xn += std::sqrt(2.0 * eps * c.dt) * xi;
        if (!xn.allFinite()) {
            rec.status = FlowStatus::non_finite;
            rec.error = "non-finite state";
            rec.survival_time = t_next;
            rec.terminal_state = x;
            throw FlowBlowupError("run_flow: non-finite state", rec);
        }
        x = xn;
        t = t_next;

        Probe nxt;
        try {
            nxt = probe(field, x, t, c, streams.probes);
        } catch (const PastSingularityError& e) {
            rec.status = FlowStatus::past_singularity;
            rec.error = e.what();
            rec.survival_time = t;
            if (c.record_path) {
                rec.times.push_back(t);
                rec.states.push_back(x);
                rec.divergence_estimates.push_back(NAN);
                rec.epsilon_schedule.push_back(0.0);
                rec.logJ.push_back(lj);
                if (shadow) rec.exact_logJ.push_back(ljx);
            }
            break;
        }
        lj += 0.5 * (cur.estimate + nxt.estimate) * c.dt;
        if (shadow) ljx += 0.5 * (cur.exact + nxt.exact) * c.dt;
        cur = nxt;
        push(t, x, cur.estimate, lj, ljx);

        if (shadow && !rec.collapse_time && ljx < log_floor) rec.collapse_time = t;
        bool crossed = c.terminate_on_exact ? (shadow && ljx < log_floor) : (lj < log_floor);
        if (crossed) {
            rec.status = FlowStatus::det_floor;
            rec.survival_time = t;
            break;
        }
    }
    rec.terminal_state = x;
    if (!c.record_path) {
        rec.times.push_back(t);
        rec.states.push_back(x);
        rec.divergence_estimates.push_back(cur.estimate);
        rec.epsilon_schedule.push_back(epsilon_for(cur.estimate));
        rec.logJ.push_back(lj);
        if (shadow) rec.exact_logJ.push_back(ljx);
    }
    return rec;
}

std::vector<TrajectoryRecord> ensemble_run(const VelocityField& field, const std::vector<Vec>& initials,
                                           const SamplerConfig& config, std::uint64_t master_seed, int threads) {
    if (initials.empty()) throw DomainError("ensemble_run: no initial states");
    config.validate();
    std::vector<TrajectoryRecord> out(initials.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < initials.size(); i = next++) {
            StreamPair streams(master_seed, i);
            try {
                out[i] = run_flow(field, initials[i], config, streams);
            } catch (const FlowBlowupError& e) {
                out[i] = e.partial;
            } catch (const std::exception& e) {
                out[i].status = FlowStatus::non_finite;
                out[i].error = e.what();
                out[i].terminal_state = initials[i];
            }
        }
    };
    int nt = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    nt = static_cast<int>(std::min<std::size_t>(nt, initials.size()));
    if (nt <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nt; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return out;
}

double identity_loss(const std::vector<TrajectoryRecord>& records) {
    if (records.size() < 2) throw DomainError("identity_loss: need at least 2 records");
    const Eigen::Index d = records.front().terminal_state.size();
    const double m = static_cast<double>(records.size());
    Vec mean = Vec::Zero(d);
    for (const auto& r : records) {
        if (r.terminal_state.size() != d) throw DomainError("identity_loss: mixed dimensions");
        mean += r.terminal_state;
    }
    mean /= m;
    Vec var = Vec::Zero(d);
    for (const auto& r : records) var += (r.terminal_state - mean).cwiseAbs2();
    return (var / (m - 1.0)).mean();
}

double survival_fraction(const std::vector<TrajectoryRecord>& records) {
    if (records.empty()) return 0.0;
    std::size_t s = 0;
    for (const auto& r : records) s += r.survived() ? 1 : 0;
    return static_cast<double>(s) / records.size();
}

}  // namespace ch
