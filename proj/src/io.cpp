#include "causal_horizon/io.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "causal_horizon/bounds.hpp"
#include "causal_horizon/errors.hpp"
#include "causal_horizon/experiments.hpp"

namespace ch {

namespace fs = std::filesystem;

// ---- formatting ----

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string cell_text(const Cell& c) {
    if (std::holds_alternative<std::monostate>(c)) return "";
    if (const double* d = std::get_if<double>(&c)) return format_double(*d);
    return csv_escape(std::get<std::string>(c));
}

json cell_json(const Cell& c) {
    if (std::holds_alternative<std::monostate>(c)) return nullptr;
    if (const double* d = std::get_if<double>(&c)) return std::isfinite(*d) ? json(*d) : json(format_double(*d));
    return std::get<std::string>(c);
}

Cell cell_from_json(const json& j) {
    if (j.is_null()) return std::monostate{};
    if (j.is_number()) return j.get<double>();
    return j.get<std::string>();
}

std::string trim(std::string s) {
    auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && ws(s.back())) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && ws(s[i])) ++i;
    return s.substr(i);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') { cur += '"'; ++i; }
            else if (c == '"') quoted = false;
            else cur += c;
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

}  // namespace

std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + csv_escape(t.columns[i]);
    out += "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + cell_text(row[i]);
        out += "\n";
    }
    return out;
}

json to_json(const ExperimentReport& r) {
    json tables = json::array();
    for (const auto& t : r.tables) {
        json rows = json::array();
        for (const auto& row : t.rows) {
            json jr = json::array();
            for (const auto& c : row) jr.push_back(cell_json(c));
            rows.push_back(std::move(jr));
        }
        tables.push_back({{"name", t.name}, {"columns", t.columns}, {"rows", std::move(rows)}});
    }
    json plots = json::array();
    for (const auto& p : r.plots)
        plots.push_back({{"table", p.table}, {"x", p.x}, {"y", p.y}, {"group_by", p.group_by}, {"title", p.title}});
    return {{"kind", r.kind},           {"parameters", r.parameters}, {"statistics", r.statistics},
            {"provenance", r.provenance}, {"tables", tables},         {"plots", plots}};
}

ExperimentReport report_from_json(const json& j) {
    ExperimentReport r;
    r.kind = j.at("kind").get<std::string>();
    r.parameters = j.at("parameters");
    r.statistics = j.at("statistics");
    r.provenance = j.at("provenance");
    for (const auto& jt : j.at("tables")) {
        Table t{jt.at("name").get<std::string>(), jt.at("columns").get<std::vector<std::string>>(), {}};
        for (const auto& jr : jt.at("rows")) {
            std::vector<Cell> row;
            for (const auto& c : jr) row.push_back(cell_from_json(c));
            t.add(std::move(row));
        }
        r.tables.push_back(std::move(t));
    }
    for (const auto& p : j.at("plots"))
        r.plots.push_back({p.at("table"), p.at("x"), p.at("y"), p.at("group_by"), p.at("title")});
    return r;
}

std::string to_svg(const ExperimentReport& r, const PlotSpec& plot) {
    const Table& t = r.table(plot.table);
    auto xs = t.numeric_column(plot.x), ys = t.numeric_column(plot.y);
    std::map<std::string, std::vector<std::pair<double, double>>> groups;
    std::size_t gcol = plot.group_by.empty() ? 0 : t.column(plot.group_by);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) continue;
        std::string g = plot.group_by.empty() ? plot.y : cell_text(t.rows[i][gcol]);
        groups[g].emplace_back(xs[i], ys[i]);
    }
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const auto& [g, pts] : groups)
        for (auto [x, y] : pts) {
            x0 = std::min(x0, x); x1 = std::max(x1, x);
            y0 = std::min(y0, y); y1 = std::max(y1, y);
        }
    if (!(x1 > x0)) { x0 -= 1; x1 += 1; }
    if (!(y1 > y0)) { y0 -= 1; y1 += 1; }
    const double W = 640, H = 400, L = 70, R = 20, T = 40, B = 50;
    auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
    auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    s << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\">" << plot.title << "</text>\n";
    s << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << W / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">" << plot.x << "</text>\n";
    s << "<text x=\"16\" y=\"" << H / 2 << "\" transform=\"rotate(-90 16 " << H / 2 << ")\" text-anchor=\"middle\">"
      << plot.y << "</text>\n";
    s << "<text x=\"" << L << "\" y=\"" << H - B + 16 << "\">" << format_double(x0) << "</text>\n";
    s << "<text x=\"" << W - R << "\" y=\"" << H - B + 16 << "\" text-anchor=\"end\">" << format_double(x1) << "</text>\n";
    s << "<text x=\"" << L - 4 << "\" y=\"" << H - B << "\" text-anchor=\"end\">" << format_double(y0) << "</text>\n";
    s << "<text x=\"" << L - 4 << "\" y=\"" << T + 4 << "\" text-anchor=\"end\">" << format_double(y1) << "</text>\n";
    for (const auto& [g, pts] : groups) {
        s << "<polyline fill=\"none\" stroke=\"black\" data-series=\"" << g << "\" points=\"";
        for (auto [x, y] : pts) s << px(x) << "," << py(y) << " ";
        s << "\"/>\n";
    }
    s << "</svg>\n";
    return s.str();
}

ExperimentReport trace_report(const RiccatiTrace& tr, json parameters) {
    ExperimentReport r;
    r.kind = "riccati";
    r.parameters = std::move(parameters);
    Table t{"trace", {"t", "theta", "logJ"}, {}};
    for (std::size_t i = 0; i < tr.times.size(); ++i) t.add({tr.times[i], tr.theta[i], tr.logJ[i]});
    r.tables.push_back(std::move(t));
    r.statistics = {{"blew_up", tr.blew_up},
                    {"blowup_time", tr.blowup_time ? json(*tr.blowup_time) : json(nullptr)}};
    r.plots.push_back({"trace", "t", "theta", "", "expansion scalar"});
    return r;
}

ExperimentReport trajectory_report(const TrajectoryRecord& rec, json parameters) {
    ExperimentReport r;
    r.kind = "trajectory";
    r.parameters = std::move(parameters);
    std::vector<std::string> cols = {"t"};
    const auto d = rec.terminal_state.size();
    for (Eigen::Index j = 0; j < d; ++j) cols.push_back("x" + std::to_string(j));
    cols.insert(cols.end(), {"divergence_estimate", "epsilon", "logJ"});
    if (!rec.exact_logJ.empty()) cols.push_back("exact_logJ");
    Table t{"trajectory", cols, {}};
    for (std::size_t i = 0; i < rec.times.size(); ++i) {
        std::vector<Cell> row = {rec.times[i]};
        for (Eigen::Index j = 0; j < d; ++j) row.push_back(rec.states[i][j]);
        row.push_back(rec.divergence_estimates[i]);
        row.push_back(rec.epsilon_schedule[i]);
        row.push_back(rec.logJ[i]);
        if (!rec.exact_logJ.empty()) row.push_back(rec.exact_logJ[i]);
        t.add(std::move(row));
    }
    r.tables.push_back(std::move(t));
    r.statistics = {{"survival_time", rec.survival_time},
                    {"status", to_string(rec.status)},
                    {"triggered", rec.triggered},
                    {"trigger_time", rec.trigger_time ? json(*rec.trigger_time) : json(nullptr)}};
    r.plots.push_back({"trajectory", "t", "logJ", "", "log-Jacobian"});
    return r;
}

Manifest emit_report(const ExperimentReport& r, const std::vector<std::string>& formats, const std::string& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec || !fs::is_directory(out_dir)) throw IoError("cannot create output directory " + out_dir);
    Manifest m;
    auto write = [&](const std::string& name, const std::string& body) {
        fs::path p = fs::path(out_dir) / name;
        std::ofstream f(p, std::ios::binary);
        if (!f) throw IoError("cannot write " + p.string());
        f << body;
        if (!f) throw IoError("write failed for " + p.string());
        m.files.push_back(p.string());
    };
    std::set<std::string> want(formats.begin(), formats.end());
    for (const auto& f : want)
        if (f != "csv" && f != "json" && f != "svg") throw UsageError("unknown format: " + f);
    if (want.count("csv"))
        for (const auto& t : r.tables) write(r.kind + "_" + t.name + ".csv", to_csv(t));
    if (want.count("json")) write(r.kind + ".json", to_json(r).dump(2) + "\n");
    if (want.count("svg"))
        for (std::size_t i = 0; i < r.plots.size(); ++i)
            write(r.kind + "_" + std::to_string(i) + ".svg", to_svg(r, r.plots[i]));
    std::string listing;
    for (const auto& f : m.files) listing += fs::path(f).filename().string() + "\n";
    fs::path mp = fs::path(out_dir) / (r.kind + "_manifest.txt");
    std::ofstream mf(mp, std::ios::binary);
    if (!mf) throw IoError("cannot write " + mp.string());
    mf << listing;
    m.manifest_path = mp.string();
    return m;
}

// ---- point clouds ----

IngestResult parse_pointcloud(const std::string& text, int dim, const std::string& source) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || trim(line).empty()) throw IngestError(source + ": empty file");
    auto header = split_csv_line(line);
    std::vector<int> cols(dim, -1);
    int label = -1;
    for (int i = 0; i < static_cast<int>(header.size()); ++i) {
        if (header[i] == "label") label = i;
        for (int j = 0; j < dim; ++j)
            if (header[i] == "x" + std::to_string(j)) cols[j] = i;
    }
    for (int j = 0; j < dim; ++j)
        if (cols[j] < 0) throw IngestError(source + ": missing column x" + std::to_string(j));

    IngestResult res;
    int row = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        ++row;
        auto f = split_csv_line(line);
        if (f.size() != header.size()) {
            res.rejections.push_back("row " + std::to_string(row) + ": expected " + std::to_string(header.size()) +
                                     " fields");
            continue;
        }
        Vec p(dim);
        bool ok = true;
        for (int j = 0; j < dim && ok; ++j) {
            const std::string& s = f[cols[j]];
            char* end = nullptr;
            double v = std::strtod(s.c_str(), &end);
            if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
                res.rejections.push_back("row " + std::to_string(row) + ": non-finite or unparsable x" +
                                         std::to_string(j) + " '" + s + "'");
                ok = false;
            } else {
                p[j] = v;
            }
        }
        if (!ok) continue;
        res.cloud.points.push_back(p);
        if (label >= 0) res.cloud.labels.push_back(f[label]);
    }
    if (row == 0) throw IngestError(source + ": no data rows");
    if (res.cloud.points.empty()) throw IngestError(source + ": all rows rejected");
    if (res.cloud.points.size() < 2) throw IngestError(source + ": need at least 2 valid points");
    res.cloud.h = silverman_bandwidth(res.cloud.points);
    return res;
}

IngestResult ingest_pointcloud(const std::string& path, int dim) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IngestError("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_pointcloud(ss.str(), dim, path);
}

// ---- configuration ----

json bounds_defaults() {
    return {{"n", 2},   {"sigma", 0.1}, {"epsilon", 1.0},     {"D", 1.0},     {"K", 0.0},
            {"kappa", 0.0}, {"K_pos", 0.0}, {"kappa_minus", 0.0}, {"Delta", 1.0}, {"C0", nullptr},
            {"C_V", 1.0}, {"density_ratio", 1.0}, {"lambda0", 1.0}};
}

json simulate_defaults() {
    return {{"target", "flow"},      {"field", "canyon"},   {"mode", "ode"},    {"divergence", "hutchinson"},
            {"n", 2},                {"D", 6.0},            {"lambda0", 4.0},   {"amplitude", 6.0},
            {"sharpness", 0.1},      {"tau", 0.1},          {"epsilon", 1.0},   {"lambda_thresh", -2.5},
            {"M", 1},                {"dt", 0.005},         {"det_floor", 1e-6}, {"theta0", -4.0},
            {"forcing", 0.0},        {"t_max", 1.0},        {"theta_floor", -1e6}};
}

namespace {

const std::vector<std::pair<std::string, std::string>> kBoundOps = {
    {"entropy", "mollified_entropy"},      {"energy", "horizon_energy_lower_bound"},
    {"contraction", "initial_contraction_bound"}, {"tc", "tearing_time_bound"},
    {"conjugate", "conjugate_point_distance"}, {"viscosity", "required_viscosity"},
    {"identity", "identity_entropy_bound"},  {"shock", "shock_thickness"}};

std::string flag_name(const std::string& key) {
    std::string s = key;
    std::replace(s.begin(), s.end(), '_', '-');
    return s;
}

std::string key_name(const std::string& flag) {
    std::string s = flag;
    std::replace(s.begin(), s.end(), '-', '_');
    return s;
}

json parse_value(const std::string& s) {
    try {
        return json::parse(s);
    } catch (const json::exception&) {
        return s;
    }
}

std::vector<std::string> split_formats(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!trim(item).empty()) out.push_back(trim(item));
    for (const auto& f : out)
        if (f != "csv" && f != "json" && f != "svg") throw UsageError("unknown format '" + f + "' in --format");
    return out;
}

json merge_known(json base, const json& overrides, const std::string& what) {
    for (auto it = overrides.begin(); it != overrides.end(); ++it) {
        if (!base.contains(it.key())) throw UsageError("unknown key '" + it.key() + "' for " + what);
        base[it.key()] = it.value();
    }
    return base;
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
    CLI::App app{"causal_horizon: bounds, Riccati tracking and GACF sampling experiments"};
    app.require_subcommand(1, 1);

    std::string seed_s, config_path, out_dir, format_s;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--seed", seed_s, "64-bit master seed (default 0)");
        sub->add_option("--config", config_path, "JSON file whose keys mirror flag names");
        sub->add_option("--out", out_dir, "output directory (default $CAUSAL_HORIZON_OUT or ./out)");
        sub->add_option("--format", format_s, "comma list of csv,json,svg");
    };

    std::map<std::string, std::string> values;
    auto param_flags = [&](CLI::App* sub, const json& keys) {
        for (auto it = keys.begin(); it != keys.end(); ++it) {
            std::string k = it.key();
            if (sub->get_option_no_throw("--" + flag_name(k))) continue;
            sub->add_option("--" + flag_name(k), values[sub->get_name() + ":" + k], "parameter " + k);
        }
    };

    auto* bounds = app.add_subcommand("bounds", "closed-form bound calculators");
    common(bounds);
    param_flags(bounds, bounds_defaults());
    std::map<std::string, bool> ops;
    for (const auto& [flag, name] : kBoundOps) bounds->add_flag("--" + flag, ops[flag], name);

    auto* simulate = app.add_subcommand("simulate", "single flow trajectory or Riccati trace");
    common(simulate);
    param_flags(simulate, simulate_defaults());

    auto* experiment = app.add_subcommand("experiment", "run one experiment kind");
    common(experiment);
    std::string kind;
    experiment->add_option("kind", kind, "experiment kind")->required()->check(CLI::IsMember(kExperimentKinds));
    for (const auto& k : kExperimentKinds) param_flags(experiment, default_parameters(k));

    auto* ingest = app.add_subcommand("ingest-check", "validate a point-cloud CSV");
    common(ingest);
    std::string path;
    int dim = 2;
    ingest->add_option("path", path, "CSV path")->required();
    ingest->add_option("--dim", dim, "point dimension");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();  // program name
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    RunConfig cfg;
    CLI::App* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    cfg.kind = kind;
    cfg.path = path;
    cfg.dim = dim;

    json file = json::object();
    if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f) throw UsageError("cannot open config file " + config_path);
        try {
            f >> file;
        } catch (const json::exception& e) {
            throw UsageError("malformed config file " + config_path + ": " + e.what());
        }
        if (!file.is_object()) throw UsageError("config file must hold a JSON object");
    }

    json overrides = json::object();
    std::string file_seed, file_out, file_format;
    for (auto it = file.begin(); it != file.end(); ++it) {
        std::string k = key_name(it.key());
        if (k == "seed") file_seed = it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
        else if (k == "out") file_out = it.value().get<std::string>();
        else if (k == "format")
            file_format = it.value().is_array() ? [&] {
                std::string s;
                for (const auto& v : it.value()) s += v.get<std::string>() + ",";
                return s;
            }() : it.value().get<std::string>();
        else if (k == "dim") cfg.dim = it.value().get<int>();
        else overrides[k] = it.value();
    }
    const std::string prefix = cfg.command + ":";
    for (const auto& [k, v] : values) {
        if (k.rfind(prefix, 0) != 0) continue;
        std::string key = k.substr(prefix.size());
        auto* opt = sub->get_option_no_throw("--" + flag_name(key));
        if (opt && opt->count() > 0) overrides[key] = parse_value(v);
    }
    cfg.overrides = overrides;

    std::string seed = !seed_s.empty() ? seed_s : file_seed;
    if (!seed.empty()) {
        try {
            std::size_t pos = 0;
            cfg.seed = std::stoull(seed, &pos, 0);
            if (pos != seed.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw UsageError("key 'seed' is not a 64-bit integer: " + seed);
        }
    }
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    else if (!file_out.empty()) cfg.out_dir = file_out;
    else if (const char* env = std::getenv("CAUSAL_HORIZON_OUT"); env && *env) cfg.out_dir = env;
    else cfg.out_dir = "out";
    if (!format_s.empty()) cfg.formats = split_formats(format_s);
    else if (!file_format.empty()) cfg.formats = split_formats(file_format);

    if (cfg.command == "experiment") {
        cfg.params = merge_known(default_parameters(kind), overrides, "experiment " + kind);
    } else if (cfg.command == "bounds") {
        cfg.params = merge_known(bounds_defaults(), overrides, "bounds");
        if (cfg.params["C0"].is_null()) cfg.params["C0"] = cfg.params["n"];
        for (const auto& [flag, name] : kBoundOps)
            if (ops[flag]) cfg.bound_ops.push_back(name);
    } else if (cfg.command == "simulate") {
        cfg.params = merge_known(simulate_defaults(), overrides, "simulate");
    } else if (!overrides.empty()) {
        throw UsageError("unknown key '" + overrides.begin().key() + "' for ingest-check");
    }
    return cfg;
}

RunConfig parse_config(int argc, const char* const* argv) {
    return parse_config(std::vector<std::string>(argv, argv + argc));
}

// ---- command execution ----

namespace {

template <class T>
T param(const json& p, const char* key) {
    try {
        return p.at(key).get<T>();
    } catch (const json::exception&) {
        throw UsageError(std::string("bad value for key '") + key + "'");
    }
}

void print_manifest(const Manifest& m) {
    for (const auto& f : m.files) std::cout << f << "\n";
    std::cout << m.manifest_path << "\n";
}

int run_bounds(const RunConfig& cfg) {
    const json& p = cfg.params;
    GeometryParams g;
    g.n = param<int>(p, "n");
    g.sigma = param<double>(p, "sigma");
    g.D = param<double>(p, "D");
    g.kappa = param<double>(p, "kappa");
    g.K_pos = param<double>(p, "K_pos");
    g.kappa_minus = param<double>(p, "kappa_minus");
    g.Delta = param<double>(p, "Delta");
    g.C0 = param<double>(p, "C0");
    g.C_V = param<double>(p, "C_V");
    g.density_ratio = param<double>(p, "density_ratio");
    const double eps = param<double>(p, "epsilon"), K = param<double>(p, "K"), lam = param<double>(p, "lambda0");

    auto ops = cfg.bound_ops;
    if (ops.empty())
        for (const auto& op : kBoundOps) ops.push_back(op.second);

    ExperimentReport r;
    r.kind = "bounds";
    r.parameters = p;
    r.provenance = {{"seed", cfg.seed}};
    Table t{"bounds", {"operation", "status", "value"}, {}};
    auto add = [&](const std::string& name, const BoundResult& b) {
        t.add({name, to_string(b.status), b.has_value() ? Cell(b.value) : Cell()});
        std::cout << name << " = " << (b.has_value() ? format_double(b.value) : to_string(b.status)) << "\n";
    };
    int failed = 0;
    for (const auto& op : ops) {
        try {
            if (op == "mollified_entropy") add(op, BoundResult::of(mollified_entropy(g.n, g.sigma)));
            else if (op == "horizon_energy_lower_bound") add(op, BoundResult::of(horizon_energy_lower_bound(g, eps)));
            else if (op == "initial_contraction_bound") add(op, BoundResult::of(initial_contraction_bound(g)));
            else if (op == "tearing_time_bound") add(op, tearing_time_bound(g.n, K, g.D, lam));
            else if (op == "conjugate_point_distance") add(op, conjugate_point_distance(g.K_pos));
            else if (op == "required_viscosity") add(op, required_viscosity(g.C0, g.Delta, g.kappa_minus, g.D));
            else if (op == "identity_entropy_bound") add(op, BoundResult::of(identity_entropy_bound(g.n, eps)));
            else if (op == "shock_thickness") add(op, BoundResult::of(shock_thickness(eps, g.D)));
        } catch (const DomainError& e) {
            t.add({op, std::string("domain_error"), Cell()});
            std::cerr << "error: " << e.what() << "\n";
            ++failed;
        }
    }
    r.tables.push_back(std::move(t));
    print_manifest(emit_report(r, cfg.formats, cfg.out_dir));
    return failed ? 1 : 0;
}

int run_simulate(const RunConfig& cfg) {
    const json& p = cfg.params;
    json prov = {{"seed", cfg.seed}};
    if (param<std::string>(p, "target") == "riccati") {
        RiccatiConfig rc;
        rc.n = param<int>(p, "n");
        rc.theta0 = param<double>(p, "theta0");
        rc.curvature_forcing = param<double>(p, "forcing");
        rc.dt = std::min(param<double>(p, "dt"), param<double>(p, "t_max"));
        rc.t_max = param<double>(p, "t_max");
        rc.theta_floor = param<double>(p, "theta_floor");
        auto r = trace_report(integrate_riccati(rc), p);
        r.provenance = prov;
        print_manifest(emit_report(r, cfg.formats, cfg.out_dir));
        return 0;
    }
    const std::string kind = param<std::string>(p, "field");
    const double D = param<double>(p, "D");
    FieldPtr field;
    if (kind == "canyon") field = make_canyon(D);
    else if (kind == "canyon-class")
        field = make_canyon_class(param<double>(p, "amplitude"), param<double>(p, "sharpness"), param<double>(p, "tau"), D);
    else if (kind == "tearing") field = make_tearing_rate(param<int>(p, "n"), param<double>(p, "lambda0"), D);
    else throw UsageError("key 'field' must be canyon, canyon-class or tearing");

    SamplerConfig c;
    c.mode = flow_mode_from(param<std::string>(p, "mode"));
    c.divergence_mode = param<std::string>(p, "divergence") == "exact" ? DivergenceMode::exact : DivergenceMode::hutchinson;
    c.dt = param<double>(p, "dt");
    c.epsilon_fixed = c.epsilon_req = param<double>(p, "epsilon");
    c.lambda_thresh = param<double>(p, "lambda_thresh");
    c.M = param<int>(p, "M");
    c.det_floor = param<double>(p, "det_floor");
    StreamPair s(cfg.seed, 0);
    auto r = trajectory_report(run_flow(*field, Vec::Zero(field->dim()), c, s), p);
    r.provenance = prov;
    print_manifest(emit_report(r, cfg.formats, cfg.out_dir));
    return 0;
}

int run_ingest(const RunConfig& cfg) {
    auto res = ingest_pointcloud(cfg.path, cfg.dim);
    std::cout << "points " << res.cloud.points.size() << "\n";
    std::cout << "bandwidth " << format_double(res.cloud.h) << "\n";
    std::cout << "rejected " << res.rejections.size() << "\n";
    for (const auto& r : res.rejections) std::cout << "  " << r << "\n";
    return 0;
}

}  // namespace

int run_command(const RunConfig& cfg) {
    if (cfg.command == "bounds") return run_bounds(cfg);
    if (cfg.command == "simulate") return run_simulate(cfg);
    if (cfg.command == "ingest-check") return run_ingest(cfg);
    if (cfg.command == "experiment") {
        ExperimentSpec spec{cfg.kind, cfg.overrides, cfg.seed};
        auto r = run_experiment(spec);
        print_manifest(emit_report(r, cfg.formats, cfg.out_dir));
        for (auto it = r.statistics.begin(); it != r.statistics.end(); ++it)
            std::cout << it.key() << " = " << it.value().dump() << "\n";
        return 0;
    }
    throw UsageError("unknown command " + cfg.command);
}

}  // namespace ch
