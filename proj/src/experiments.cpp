#include "causal_horizon/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "causal_horizon/bounds.hpp"
#include "causal_horizon/errors.hpp"
#include "causal_horizon/io.hpp"
#include "causal_horizon/riccati.hpp"
#include "causal_horizon/sampler.hpp"

namespace ch {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

json defaults_for(const std::string& kind) {
    if (kind == "scaling")
        return {{"n", 2},         {"D", {2, 3, 4, 5, 6, 7, 8, 9, 10}}, {"sigma", 0.1}, {"Delta", 1.0},
                {"kappa", 1.0},   {"density_ratio", 100.0},             {"dt", 0.005}, {"det_floor", 1e-6}};
    if (kind == "curvature")
        return {{"n", 2},     {"lambda0", 4.0}, {"D", 1.0}, {"curvature", {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0}},
                {"dt", 1e-4}, {"t_max", 2.0},   {"theta_floor", -1e6}};
    if (kind == "pareto")
        return {{"D", 6.0},          {"amplitude", 6.0},       {"sharpness", 5.0}, {"tau", 0.1},
                {"particles", 1000}, {"x0", {0.0, 0.0}},       {"C0", 2.0},        {"Delta", 0.2},
                {"kappa_minus", 0.0}, {"lambda_thresh", -2.5}, {"M", 1},           {"dt", 0.005},
                {"det_floor", 1e-6}};
    if (kind == "sensitivity")
        return {{"kappa_minus", 0.1403}, {"Delta", {0.5, 1.0, 1.5, 2.0, 2.4, 2.6, 2.65}}, {"C0", 2.0},
                {"D", 6.0},              {"sharpness", 5.0},   {"tau", 0.1},  {"amplitude_scale", 6.0},
                {"particles", 256},      {"cap", 1000.0},      {"bisection_steps", 30}, {"dt", 0.005},
                {"det_floor", 1e-6}};
    if (kind == "highdim")
        return {{"n", {2, 10, 50, 100}}, {"sigma", 0.1}, {"Delta", 1.0}, {"density_ratio", 100.0},
                {"kappa", 0.0},          {"D", 1.0},     {"dt", 0.005},  {"det_floor", 1e-6}};
    if (kind == "radar")
        return {{"n", 100},       {"width", 128},       {"seeds", 20},        {"lambda_thresh", -10.0},
                {"tear_rate", 40.0}, {"D", 1.0},        {"gamma", 0.02},      {"epochs", 1000},
                {"learning_rate", 1e-3}, {"samples", 256}, {"M", 1},          {"Delta", 0.1},
                {"C0", 100.0},    {"x0_spread", 0.5},   {"dt", 0.005},        {"det_floor", 1e-6}};
    if (kind == "navigate")
        return {{"cloud_path", ""},   {"D", 40.0},           {"beta_ratio", 1.02}, {"epsilon_req", 16.0},
                {"lambda_thresh", -2.5}, {"seeds", 5},       {"M", 1},             {"factual", {-3.0, 0.0}},
                {"target", {3.0, 0.0}},  {"stop_radius", 0.1}, {"validity_factor", 2.0}, {"bandwidth", 0.0},
                {"dt", 0.005},        {"det_floor", 1e-6}};
    throw UsageError("unknown experiment kind: " + kind);
}

json merged(const ExperimentSpec& spec) {
    json p = defaults_for(spec.kind);
    for (auto it = spec.params.begin(); it != spec.params.end(); ++it) {
        if (!p.contains(it.key())) throw UsageError("unknown parameter '" + it.key() + "' for " + spec.kind);
        p[it.key()] = it.value();
    }
    return p;
}

template <class T>
T get(const json& p, const char* key) {
    try {
        return p.at(key).get<T>();
    } catch (const json::exception&) {
        throw UsageError(std::string("bad value for parameter '") + key + "'");
    }
}

std::vector<double> sweep(const json& p, const char* key, bool increasing) {
    auto v = get<std::vector<double>>(p, key);
    if (v.empty()) throw UsageError(std::string("sweep '") + key + "' is empty");
    if (increasing)
        for (std::size_t i = 1; i < v.size(); ++i)
            if (!(v[i] > v[i - 1])) throw UsageError(std::string("sweep '") + key + "' must be strictly increasing");
    return v;
}

Vec vec_of(const std::vector<double>& v) { return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size())); }

double value_or(const BoundResult& b, double fallback) { return b.has_value() ? b.value : fallback; }

Cell opt(const std::optional<double>& v) { return v ? Cell(*v) : Cell(); }

ExperimentReport start(const ExperimentSpec& spec, const json& p) {
    ExperimentReport r;
    r.kind = spec.kind;
    r.parameters = p;
    r.provenance = {{"master_seed", spec.master_seed}, {"kind", spec.kind}};
    if (p.contains("dt")) r.provenance["dt"] = p["dt"];
    if (p.contains("lambda_thresh")) r.provenance["lambda_thresh"] = p["lambda_thresh"];
    if (p.contains("det_floor")) r.provenance["det_floor"] = p["det_floor"];
    return r;
}

SamplerConfig ode_exact(const json& p) {
    SamplerConfig c;
    c.mode = FlowMode::ode;
    c.divergence_mode = DivergenceMode::exact;
    c.dt = get<double>(p, "dt");
    c.det_floor = get<double>(p, "det_floor");
    return c;
}

// ---- scaling ----

ExperimentReport run_scaling(const ExperimentSpec& spec, const json& p) {
    auto r = start(spec, p);
    const int n = get<int>(p, "n");
    auto Ds = sweep(p, "D", true);
    auto cfg = ode_exact(p);
    Table t{"scaling", {"D", "lambda0", "t_c_measured", "t_c_theory"}, {}};
    std::vector<double> lx, ly;
    for (double D : Ds) {
        auto f = make_tearing(n, D, get<double>(p, "sigma"), get<double>(p, "Delta"), get<double>(p, "kappa"),
                              get<double>(p, "density_ratio"));
        StreamPair s(spec.master_seed, 0);
        cfg.record_path = false;
        auto rec = run_flow(*f, Vec::Zero(n), cfg, s);
        t.add({D, f->lambda0(), rec.survival_time, f->critical_time()});
        lx.push_back(std::log(D));
        ly.push_back(std::log(rec.survival_time));
    }
    auto fit = least_squares(lx, ly);
    bool decreasing = true;
    auto tc = t.numeric_column("t_c_measured");
    for (std::size_t i = 1; i < tc.size(); ++i) decreasing = decreasing && tc[i] < tc[i - 1];
    r.statistics = {{"exponent", fit.slope}, {"intercept", fit.intercept}, {"r2", fit.r2},
                    {"strictly_decreasing", decreasing}};
    r.tables.push_back(std::move(t));
    r.plots.push_back({"scaling", "D", "t_c_measured", "", "t_c vs D"});
    return r;
}

// ---- curvature ----

ExperimentReport run_curvature(const ExperimentSpec& spec, const json& p) {
    auto r = start(spec, p);
    const int n = get<int>(p, "n");
    const double lambda0 = get<double>(p, "lambda0"), D = get<double>(p, "D");
    Table t{"curvature", {"curvature", "forcing", "blew_up", "blowup_time", "t_c_exact"}, {}};
    for (double c : sweep(p, "curvature", true)) {
        RiccatiConfig rc;
        rc.n = n;
        rc.theta0 = -lambda0;
        rc.curvature_forcing = c * n * D * D;
        rc.dt = get<double>(p, "dt");
        rc.t_max = get<double>(p, "t_max");
        rc.theta_floor = get<double>(p, "theta_floor");
        auto tr = integrate_riccati(rc);
        auto exact = constant_forcing_blowup(n, rc.theta0, rc.curvature_forcing);
        t.add({c, rc.curvature_forcing, tr.blew_up ? 1.0 : 0.0, tr.blew_up ? Cell(*tr.blowup_time) : Cell(rc.t_max),
               opt(exact)});
    }
    auto bt = t.numeric_column("blowup_time");
    bool monotone = true;
    for (std::size_t i = 1; i < bt.size(); ++i) monotone = monotone && bt[i] >= bt[i - 1];
    r.statistics = {{"weakly_increasing_in_buffer", monotone}};
    r.tables.push_back(std::move(t));
    r.plots.push_back({"curvature", "curvature", "blowup_time", "", "blow-up time vs signed curvature"});
    return r;
}

// ---- pareto ----

ExperimentReport run_pareto(const ExperimentSpec& spec, const json& p) {
    auto r = start(spec, p);
    const double D = get<double>(p, "D");
    auto field = make_canyon_class(get<double>(p, "amplitude"), get<double>(p, "sharpness"), get<double>(p, "tau"), D);
    auto eps = required_viscosity(get<double>(p, "C0"), get<double>(p, "Delta"), get<double>(p, "kappa_minus"), D);
    if (!eps.has_value()) throw UsageError("pareto: required viscosity is impossible for these parameters");
    const int N = get<int>(p, "particles");
    std::vector<Vec> init(N, vec_of(get<std::vector<double>>(p, "x0")));

    SamplerConfig c;
    c.dt = get<double>(p, "dt");
    c.det_floor = get<double>(p, "det_floor");
    c.lambda_thresh = get<double>(p, "lambda_thresh");
    c.M = get<int>(p, "M");
    c.epsilon_fixed = eps.value;
    c.epsilon_req = eps.value;
    c.record_path = false;

    Table t{"pareto", {"mode", "survival_fraction", "identity_loss", "identity_loss_surviving", "trigger_fraction"}, {}};
    json losses = json::object();
    for (FlowMode m : {FlowMode::ode, FlowMode::sde, FlowMode::gacf}) {
        c.mode = m;
        auto recs = ensemble_run(*field, init, c, spec.master_seed);
        std::vector<TrajectoryRecord> alive;
        std::size_t trig = 0;
        for (const auto& rec : recs) {
            if (rec.survived()) alive.push_back(rec);
            trig += rec.triggered ? 1 : 0;
        }
        double loss = identity_loss(recs);
        t.add({to_string(m), survival_fraction(recs), loss, alive.size() >= 2 ? Cell(identity_loss(alive)) : Cell(),
               static_cast<double>(trig) / N});
        losses[to_string(m)] = loss;
    }
    r.statistics = {{"epsilon_req", eps.value},
                    {"gacf_over_sde", losses["gacf"].get<double>() / losses["sde"].get<double>()}};
    r.tables.push_back(std::move(t));
    return r;
}

// ---- sensitivity ----

bool all_survive(const VelocityField& f, const std::vector<Vec>& init, SamplerConfig c, double eps,
                 std::uint64_t seed) {
    c.epsilon_fixed = eps;
    auto recs = ensemble_run(f, init, c, seed);
    return std::all_of(recs.begin(), recs.end(), [](const TrajectoryRecord& x) { return x.survived(); });
}

ExperimentReport run_sensitivity(const ExperimentSpec& spec, const json& p) {
    auto r = start(spec, p);
    const double km = get<double>(p, "kappa_minus"), C0 = get<double>(p, "C0"), D = get<double>(p, "D");
    const double cap = get<double>(p, "cap");
    const int steps = get<int>(p, "bisection_steps");
    std::vector<Vec> init(get<int>(p, "particles"), Vec::Zero(2));
    SamplerConfig c;
    c.mode = FlowMode::sde;
    c.divergence_mode = DivergenceMode::exact;
    c.dt = get<double>(p, "dt");
    c.det_floor = get<double>(p, "det_floor");
    c.record_path = false;

    Table t{"sensitivity", {"Delta", "epsilon_req", "amplitude", "epsilon_star", "divergent"}, {}};
    for (double Delta : sweep(p, "Delta", true)) {
        auto er = required_viscosity(C0, Delta, km, D);
        if (!er.has_value()) {
            t.add({Delta, std::string("impossible"), Cell(), std::string("inf"), 1.0});
            continue;
        }
        double A = std::sqrt(get<double>(p, "amplitude_scale") * er.value);
        auto f = make_canyon_class(A, get<double>(p, "sharpness"), get<double>(p, "tau"), D);
        if (!all_survive(*f, init, c, cap, spec.master_seed)) {
            t.add({Delta, er.value, A, std::string("inf"), 1.0});
            continue;
        }
        double lo = 0.0, hi = cap;
        for (int i = 0; i < steps; ++i) {
            double mid = 0.5 * (lo + hi);
            if (all_survive(*f, init, c, mid, spec.master_seed)) hi = mid; else lo = mid;
        }
        t.add({Delta, er.value, A, hi, 0.0});
    }
    auto es = t.numeric_column("epsilon_star");
    bool monotone = true;
    double prev = -kInf;
    for (double e : es) {
        double v = std::isnan(e) ? kInf : e;
        monotone = monotone && v >= prev;
        prev = v;
    }
    r.statistics = {{"monotone", monotone}, {"cap", cap}};
    r.tables.push_back(std::move(t));
    r.plots.push_back({"sensitivity", "Delta", "epsilon_star", "", "critical viscosity vs Delta"});
    return r;
}

// ---- highdim ----

ExperimentReport run_highdim(const ExperimentSpec& spec, const json& p) {
    auto r = start(spec, p);
    auto cfg = ode_exact(p);
    cfg.record_path = false;
    const double floor = get<double>(p, "det_floor");
    Table t{"highdim", {"n", "lambda0_axis", "lambda0_trace", "t_c_measured", "t_c_floor_theory", "t_c_singular"}, {}};
    for (double nd : sweep(p, "n", true)) {
        int n = static_cast<int>(nd);
        GeometryParams g;
        g.n = n;
        g.sigma = get<double>(p, "sigma");
        g.Delta = get<double>(p, "Delta");
        g.density_ratio = get<double>(p, "density_ratio");
        g.kappa = get<double>(p, "kappa");
        g.D = get<double>(p, "D");
        double lam = initial_contraction_bound(g);
        auto f = make_tearing_rate(n, n * lam, g.D);
        StreamPair s(spec.master_seed, 0);
        auto rec = run_flow(*f, Vec::Zero(n), cfg, s);
        t.add({nd, lam, n * lam, rec.survival_time, (1.0 - std::pow(floor, 1.0 / n)) / lam, 1.0 / lam});
    }
    auto tc = t.numeric_column("t_c_measured");
    bool nonincreasing = true;
    for (std::size_t i = 1; i < tc.size(); ++i) nonincreasing = nonincreasing && tc[i] <= tc[i - 1];
    r.statistics = {{"nonincreasing", nonincreasing}};
    r.tables.push_back(std::move(t));
    r.plots.push_back({"highdim", "n", "t_c_measured", "", "t_c vs dimension"});
    return r;
}

// ---- radar ----

ExperimentReport run_radar(const ExperimentSpec& spec, const json& p) {
    auto r = start(spec, p);
    const int n = get<int>(p, "n");
    const double D = get<double>(p, "D"), gamma = get<double>(p, "gamma");

    // Mild convergent drift toward the moving centre D t e1.
    auto drift = std::make_shared<CustomField>(n, [n, D, gamma](const std::vector<Dual>& x, double t) {
        std::vector<Dual> u(n);
        for (int i = 0; i < n; ++i) u[i] = Dual(-gamma) * (x[i] - Dual(i == 0 ? D * t : 0.0));
        u[0] += Dual(D);
        return u;
    });
    TrainingSpec ts;
    ts.reference = drift;
    ts.support = [n, D](double t, Rng& rng) {
        std::normal_distribution<double> nd(0.0, 1.0);
        Vec x(n);
        for (int i = 0; i < n; ++i) x[i] = nd(rng);
        x[0] += D * t;
        return x;
    };
    ts.learning_rate = get<double>(p, "learning_rate");
    ts.epochs = get<int>(p, "epochs");
    ts.samples = get<int>(p, "samples");
    MlpSpec ms{n, get<int>(p, "width"), ts};
    auto net = make_mlp(ms, spec.master_seed);
    auto tear = make_tearing_rate(n, get<double>(p, "tear_rate"), 0.0);
    SumField field(net, tear);

    auto eps = required_viscosity(get<double>(p, "C0"), get<double>(p, "Delta"), 0.0, D);
    SamplerConfig c;
    c.mode = FlowMode::gacf;
    c.divergence_mode = DivergenceMode::hutchinson;
    c.track_exact = true;
    c.terminate_on_exact = true;
    c.M = get<int>(p, "M");
    c.lambda_thresh = get<double>(p, "lambda_thresh");
    c.epsilon_req = value_or(eps, 0.0);
    c.dt = get<double>(p, "dt");
    c.det_floor = get<double>(p, "det_floor");
    c.record_path = false;

    const int seeds = get<int>(p, "seeds");
    const double spread = get<double>(p, "x0_spread");
    std::vector<Vec> init;
    for (int i = 0; i < seeds; ++i) {
        Rng g = make_stream(spec.master_seed, i, Lane::init);
        std::normal_distribution<double> nd(0.0, spread);
        Vec x(n);
        for (int j = 0; j < n; ++j) x[j] = nd(g);
        init.push_back(x);
    }
    auto recs = ensemble_run(field, init, c, spec.master_seed);

    Table t{"radar", {"seed_index", "trigger_time", "collapse_time", "lead_time", "false_negative", "status"}, {}};
    int false_neg = 0, collapsed = 0;
    double min_lead = kInf;
    for (int i = 0; i < seeds; ++i) {
        const auto& rec = recs[i];
        bool fn = rec.collapse_time && (!rec.trigger_time || !(*rec.trigger_time < *rec.collapse_time));
        false_neg += fn ? 1 : 0;
        Cell lead;
        if (rec.collapse_time) {
            ++collapsed;
            if (rec.trigger_time) {
                double l = *rec.collapse_time - *rec.trigger_time;
                lead = l;
                min_lead = std::min(min_lead, l);
            }
        }
        t.add({static_cast<double>(i), opt(rec.trigger_time), opt(rec.collapse_time), lead, fn ? 1.0 : 0.0,
               to_string(rec.status)});
    }
    const auto& tr = *net->training_report();
    r.statistics = {{"false_negatives", false_neg},
                    {"collapsed_runs", collapsed},
                    {"min_lead_time", collapsed > 0 ? json(min_lead) : json(nullptr)},
                    {"training_initial_loss", tr.initial_loss},
                    {"training_final_loss", tr.final_loss},
                    {"training_reduction", tr.reduction()},
                    {"epsilon_req", c.epsilon_req}};
    r.tables.push_back(std::move(t));
    r.plots.push_back({"radar", "seed_index", "lead_time", "", "radar lead time per seed"});
    return r;
}

// ---- navigate ----

double nearest_distance(const PointCloud& c, const Vec& x) {
    double best = kInf;
    for (const auto& q : c.points) best = std::min(best, (q - x).norm());
    return best;
}

}  // namespace

json default_parameters(const std::string& kind) { return defaults_for(kind); }

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw DomainError("least_squares: need >= 2 paired points");
    const double m = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) { mx += x[i]; my += y[i]; }
    mx /= m;
    my /= m;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return f;
}

PointCloud synthetic_two_clusters(std::uint64_t seed, int per_cluster, double separation, double std_dev,
                                  double radius) {
    PointCloud c;
    Rng g = make_stream(seed, 0, Lane::data);
    std::normal_distribution<double> nd(0.0, std_dev);
    for (int k = 0; k < 2; ++k) {
        double cx = (k == 0 ? -0.5 : 0.5) * separation;
        for (int i = 0; i < per_cluster;) {
            double a = nd(g), b = nd(g);
            if (a * a + b * b > radius * radius) continue;
            Vec p(2);
            p << cx + a, b;
            c.points.push_back(p);
            c.labels.push_back(k == 0 ? "A" : "B");
            ++i;
        }
    }
    c.h = silverman_bandwidth(c.points);
    return c;
}

double calibrate_stall_beta(const KdeScoreField& f, const Vec& factual, const Vec& target, double D, double ratio,
                            int samples) {
    Vec e = (target - factual).normalized();
    double peak = 0.0;
    for (int i = 0; i < samples; ++i) {
        Vec x = factual + (static_cast<double>(i) / (samples - 1)) * (target - factual);
        peak = std::max(peak, -f.score(x).dot(e));
    }
    if (!(peak > 0)) throw DomainError("calibrate_stall_beta: no opposing score on the segment");
    return ratio * D / peak;
}

namespace {

ExperimentReport run_navigate(const ExperimentSpec& spec, const json& p) {
    auto r = start(spec, p);
    auto path = get<std::string>(p, "cloud_path");
    PointCloud cloud = path.empty() ? synthetic_two_clusters(spec.master_seed) : ingest_pointcloud(path, 2).cloud;
    if (get<double>(p, "bandwidth") > 0) cloud.h = get<double>(p, "bandwidth");
    Vec factual = vec_of(get<std::vector<double>>(p, "factual"));
    Vec target = vec_of(get<std::vector<double>>(p, "target"));
    const double D = get<double>(p, "D");

    auto score_only = make_kde_score(cloud, target, 1.0, 0.0);
    double beta = calibrate_stall_beta(*score_only, factual, target, D, get<double>(p, "beta_ratio"));
    auto field = make_kde_score(cloud, target, beta, D, get<double>(p, "stop_radius"));
    const double radius = get<double>(p, "validity_factor") * cloud.h;

    SamplerConfig c;
    c.dt = get<double>(p, "dt");
    c.det_floor = get<double>(p, "det_floor");
    c.lambda_thresh = get<double>(p, "lambda_thresh");
    c.M = get<int>(p, "M");
    c.epsilon_req = get<double>(p, "epsilon_req");

    Table res{"navigate",
              {"mode", "seed_index", "terminal_x0", "terminal_x1", "nearest_distance", "valid", "survival_time",
               "trigger_time"},
              {}};
    Table paths{"trajectories", {"run", "mode", "seed_index", "t", "x0", "x1", "epsilon"}, {}};
    int gacf_valid = 0;
    bool ode_chimera = false;
    const int seeds = get<int>(p, "seeds");
    int run_id = 0;
    auto one = [&](FlowMode m, int idx) {
        c.mode = m;
        StreamPair s(spec.master_seed, idx);
        auto rec = run_flow(*field, factual, c, s);
        double d = nearest_distance(cloud, rec.terminal_state);
        bool valid = d <= radius;
        res.add({to_string(m), static_cast<double>(idx), rec.terminal_state[0], rec.terminal_state[1], d,
                 valid ? 1.0 : 0.0, rec.survival_time, opt(rec.trigger_time)});
        for (std::size_t k = 0; k < rec.times.size(); ++k)
            paths.add({static_cast<double>(run_id), to_string(m), static_cast<double>(idx), rec.times[k],
                       rec.states[k][0], rec.states[k][1], rec.epsilon_schedule[k]});
        ++run_id;
        return valid;
    };
    ode_chimera = !one(FlowMode::ode, 0);
    for (int i = 0; i < seeds; ++i) gacf_valid += one(FlowMode::gacf, i) ? 1 : 0;

    r.statistics = {{"bandwidth", cloud.h},         {"beta", beta},
                    {"validity_radius", radius},    {"ode_chimera", ode_chimera},
                    {"gacf_valid_runs", gacf_valid}, {"gacf_runs", seeds},
                    {"void_width_over_h", (target - factual).norm() / cloud.h}};
    r.tables.push_back(std::move(res));
    r.tables.push_back(std::move(paths));
    r.plots.push_back({"trajectories", "x0", "x1", "run", "navigation paths"});
    return r;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentSpec& spec) {
    json p = merged(spec);
    if (spec.kind == "scaling") return run_scaling(spec, p);
    if (spec.kind == "curvature") return run_curvature(spec, p);
    if (spec.kind == "pareto") return run_pareto(spec, p);
    if (spec.kind == "sensitivity") return run_sensitivity(spec, p);
    if (spec.kind == "highdim") return run_highdim(spec, p);
    if (spec.kind == "radar") return run_radar(spec, p);
    if (spec.kind == "navigate") return run_navigate(spec, p);
    throw UsageError("unknown experiment kind: " + spec.kind);
}

}  // namespace ch
