#include "cli_core.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <limits>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

namespace dcsb::cli {

namespace {

using nlohmann::json;

double parse_double(const std::string& v, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError(where + ": invalid number '" + v + "'");
    }
}

int parse_int(const std::string& v, const std::string& where) {
    try {
        std::size_t pos = 0;
        const int x = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError(where + ": invalid integer '" + v + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

void check_params(const PhysParams& p, const std::string& where) {
    try {
        p.validate();
    } catch (const DomainError& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::dc: return "dc";
        case Variant::sb: return "sb";
        case Variant::nn: return "nn";
        default: return "ib";
    }
}

json config_json(const RunConfig& cfg, const std::string& command) {
    json j;
    j["version"] = "0.1.0";
    j["command"] = command;
    j["params"] = {{"kt_mev", cfg.params.kT},
                   {"delta_mev", cfg.params.delta},
                   {"omega_c_mev", cfg.params.omega_c},
                   {"gamma", cfg.params.gamma},
                   {"zeta", cfg.params.zeta},
                   {"hbar_mev_ps", PhysParams::hbar},
                   {"high_t_warning", cfg.params.high_t_warning()}};
    j["kernel"] = {
        {"variant", variant_name(cfg.kernel.variant)},
        {"f_mode", cfg.kernel.f_mode == FMode::exact ? "exact" : "high-t"},
        {"kernel_scale",
         cfg.kernel.kernel_scale == KernelScale::calibrated ? "calibrated" : "paper"},
        {"gamma_eff",
         cfg.kernel.gamma_eff_mode == GammaEffMode::scaled ? "scaled" : "literal"},
        {"fc_exponent",
         cfg.kernel.exponent_mode == ExponentMode::rederived ? "rederived" : "paper"}};
    j["grid"] = {{"t_max", cfg.grid.t_max}, {"n_points", cfg.grid.n_points}};
    if (cfg.sweep.present)
        j["sweep"] = {{"gamma_start", cfg.sweep.start},
                      {"gamma_stop", cfg.sweep.stop},
                      {"gamma_count", cfg.sweep.count},
                      {"zeta_list", cfg.sweep.zeta_list}};
    if (!cfg.models.empty()) j["models"] = cfg.models;
    j["out"] = cfg.out_path;
    j["jobs"] = cfg.jobs;
    return j;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot open output file: " + path);
    os << content;
}

void write_metadata(const RunConfig& cfg, const std::string& command, json extra,
                    std::chrono::steady_clock::time_point start) {
    json j = config_json(cfg, command);
    const auto dt = std::chrono::steady_clock::now() - start;
    j["duration_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(dt).count();
    for (auto& [k, v] : extra.items()) j[k] = v;
    write_file(cfg.out_path + ".meta.json", j.dump(2) + "\n");
}

std::vector<double> linspace(double t_max, int n) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = t_max * double(i) / double(n - 1);
    return out;
}

// pole set in the configured f-mode (high-T rational seeds, optionally
// Newton-refined on the exact kernel)
PoleSet poles_for(const PhysParams& p, const KernelConfig& c) {
    KernelConfig ch = c;
    ch.f_mode = FMode::high_t;
    PoleSet ps = find_poles(build_rational(p, ch));
    if (c.f_mode == FMode::exact) ps = refine_poles_exact(p, c, ps);
    return ps;
}

} // namespace

std::string format_sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

void apply_key_value(RunConfig& cfg, const std::string& key, const std::string& value,
                     const std::string& where) {
    if (key == "gamma") {
        cfg.params.gamma = parse_double(value, where);
        check_params(cfg.params, where);
    } else if (key == "zeta") {
        cfg.params.zeta = parse_double(value, where);
        check_params(cfg.params, where);
    } else if (key == "kt_mev") {
        cfg.params.kT = parse_double(value, where);
        check_params(cfg.params, where);
    } else if (key == "delta_mev") {
        cfg.params.delta = parse_double(value, where);
        check_params(cfg.params, where);
    } else if (key == "omega_c_mev") {
        cfg.params.omega_c = parse_double(value, where);
        check_params(cfg.params, where);
    } else if (key == "model") {
        if (value == "dc") cfg.kernel.variant = Variant::dc;
        else if (value == "sb") cfg.kernel.variant = Variant::sb;
        else if (value == "nn") cfg.kernel.variant = Variant::nn;
        else throw ConfigError(where + ": model must be dc|sb|nn, got '" + value + "'");
    } else if (key == "f_mode") {
        if (value == "exact") cfg.kernel.f_mode = FMode::exact;
        else if (value == "high-t" || value == "high_t") cfg.kernel.f_mode = FMode::high_t;
        else throw ConfigError(where + ": f_mode must be exact|high-t, got '" + value + "'");
    } else if (key == "kernel_scale") {
        if (value == "calibrated") cfg.kernel.kernel_scale = KernelScale::calibrated;
        else if (value == "paper") cfg.kernel.kernel_scale = KernelScale::paper_literal;
        else throw ConfigError(where + ": kernel_scale must be calibrated|paper");
    } else if (key == "gamma_eff") {
        if (value == "scaled") cfg.kernel.gamma_eff_mode = GammaEffMode::scaled;
        else if (value == "literal") cfg.kernel.gamma_eff_mode = GammaEffMode::literal;
        else throw ConfigError(where + ": gamma_eff must be scaled|literal");
    } else if (key == "fc_exponent") {
        if (value == "paper") cfg.kernel.exponent_mode = ExponentMode::paper;
        else if (value == "rederived") cfg.kernel.exponent_mode = ExponentMode::rederived;
        else throw ConfigError(where + ": fc_exponent must be paper|rederived");
    } else if (key == "t_max") {
        cfg.grid.t_max = parse_double(value, where);
        if (!(cfg.grid.t_max > 0.0)) throw ConfigError(where + ": t_max must be > 0");
    } else if (key == "n_points") {
        cfg.grid.n_points = parse_int(value, where);
        if (cfg.grid.n_points < 2) throw ConfigError(where + ": n_points must be >= 2");
    } else if (key == "out") {
        cfg.out_path = value;
    } else if (key == "jobs") {
        cfg.jobs = parse_int(value, where);
        if (cfg.jobs < 1) throw ConfigError(where + ": jobs must be >= 1");
    } else if (key == "gamma_range") {
        const auto parts = split(value, ':');
        if (parts.size() != 3)
            throw ConfigError(where + ": gamma_range must be start:stop:count");
        cfg.sweep.start = parse_double(parts[0], where);
        cfg.sweep.stop = parse_double(parts[1], where);
        cfg.sweep.count = parse_int(parts[2], where);
        if (cfg.sweep.count < 2) throw ConfigError(where + ": sweep count must be >= 2");
        if (!(cfg.sweep.stop > cfg.sweep.start))
            throw ConfigError(where + ": sweep stop must exceed start");
        cfg.sweep.present = true;
    } else if (key == "zeta_list") {
        cfg.sweep.zeta_list.clear();
        for (const auto& z : split(value, ',')) {
            const double zz = parse_double(trim(z), where);
            if (zz < 0.0) throw ConfigError(where + ": zeta must be >= 0");
            cfg.sweep.zeta_list.push_back(zz);
        }
        if (cfg.sweep.zeta_list.empty())
            throw ConfigError(where + ": zeta_list must not be empty");
    } else if (key == "models") {
        cfg.models.clear();
        for (const auto& m : split(value, ',')) {
            const std::string mm = trim(m);
            if (mm != "dc" && mm != "sb" && mm != "nn")
                throw ConfigError(where + ": models must be a subset of dc,sb,nn");
            cfg.models.push_back(mm);
        }
    } else {
        throw ConfigError(where + ": unknown key '" + key + "'");
    }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("config file not found: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = path + ":" + std::to_string(lineno);
        if (eq == std::string::npos)
            throw ConfigError(where + ": expected 'key = value'");
        apply_key_value(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), where);
    }
}

int cmd_simulate(const RunConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    cfg.kernel.validate(cfg.params);
    const PoleSet ps = poles_for(cfg.params, cfg.kernel);
    const auto grid = linspace(cfg.grid.t_max, cfg.grid.n_points);
    const Trace tr = reconstruct_time(ps, grid);

    // independent Talbot cross-check on a window where the fixed contour is
    // guaranteed to enclose all poles (undamped modes escape beyond ~53 ps)
    std::vector<double> check_ts;
    const double t_hi = std::min(cfg.grid.t_max, 40.0);
    for (int k = 1; k <= 16; ++k) check_ts.push_back(t_hi * double(k) / 16.0);
    const Trace tb = invert_talbot(cfg.params, cfg.kernel, check_ts);
    const Trace pr = reconstruct_time(ps, check_ts);
    double max_diff = 0.0;
    for (std::size_t i = 0; i < check_ts.size(); ++i)
        max_diff = std::max(max_diff, std::fabs(tb.values[i] - pr.values[i]));
    if (max_diff > 1e-4)
        throw OracleMismatch("simulate: pole-residue vs Talbot disagreement " +
                             format_sci(max_diff));

    std::string csv = "t_ps,sigma_z\n";
    for (std::size_t i = 0; i < tr.times.size(); ++i)
        csv += format_sci(tr.times[i]) + "," + format_sci(tr.values[i]) + "\n";
    write_file(cfg.out_path, csv);
    write_metadata(cfg, "simulate", {{"oracle", {{"talbot_max_abs_diff", max_diff}}}},
                   start);
    return 0;
}

int cmd_poles(const RunConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    cfg.kernel.validate(cfg.params);
    const PoleSet ps = poles_for(cfg.params, cfg.kernel); // sorted by |residue| desc
    std::string csv = "re_per_ps,im_per_ps,residue_re,residue_im,tau_ps,freq_per_ps\n";
    for (std::size_t i = 0; i < ps.poles.size(); ++i) {
        const cdouble z = ps.poles[i], r = ps.residues[i];
        const double tau = std::fabs(z.real()) < 1e-12
                               ? std::numeric_limits<double>::infinity()
                               : 1.0 / std::fabs(z.real());
        csv += format_sci(z.real()) + "," + format_sci(z.imag()) + "," +
               format_sci(r.real()) + "," + format_sci(r.imag()) + "," +
               format_sci(tau) + "," + format_sci(std::fabs(z.imag())) + "\n";
    }
    write_file(cfg.out_path, csv);
    write_metadata(cfg, "poles", {{"n_poles", ps.poles.size()}}, start);
    return 0;
}

int cmd_sweep(const RunConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    if (!cfg.sweep.present)
        throw ConfigError("sweep: gamma_range (start:stop:count) is required");
    std::vector<double> gammas(cfg.sweep.count);
    for (int i = 0; i < cfg.sweep.count; ++i)
        gammas[i] = cfg.sweep.start + (cfg.sweep.stop - cfg.sweep.start) * double(i) /
                                          double(cfg.sweep.count - 1);
    std::vector<double> zetas = cfg.sweep.zeta_list;
    if (zetas.empty()) zetas.push_back(cfg.params.zeta);

    struct Point {
        double gamma, zeta;
        PoleSet ps;
        bool failed_no_modes = false;
    };
    std::vector<Point> pts;
    for (double z : zetas)
        for (double g : gammas) pts.push_back({g, z, {}, false});

    // schedule-independent: results land in a preallocated slot per point
    std::exception_ptr first_error;
    std::mutex err_mtx;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= pts.size()) return;
            try {
                PhysParams p = cfg.params;
                p.gamma = pts[i].gamma;
                p.zeta = pts[i].zeta;
                pts[i].ps = find_poles(build_rational(p, cfg.kernel));
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mtx);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    const int nthreads = std::max(1, std::min<int>(cfg.jobs, int(pts.size())));
    std::vector<std::thread> threads;
    for (int i = 0; i < nthreads; ++i) threads.emplace_back(worker);
    for (auto& th : threads) th.join();
    if (first_error) std::rethrow_exception(first_error);

    // mode identity by nearest-neighbor continuation along gamma, per zeta
    struct Row {
        double gamma, zeta;
        int mode_index;
        double tau, freq, res_mag;
    };
    std::vector<Row> rows;
    int omitted = 0;
    for (std::size_t zi = 0; zi < zetas.size(); ++zi) {
        std::vector<std::pair<cdouble, int>> tracked;
        int next_index = 0;
        for (std::size_t gi = 0; gi < gammas.size(); ++gi) {
            const Point& pt = pts[zi * gammas.size() + gi];
            struct Cand {
                cdouble z;
                double res_mag;
            };
            std::vector<Cand> cands;
            for (std::size_t k = 0; k < pt.ps.poles.size(); ++k)
                if (pt.ps.poles[k].imag() > 0.0 && std::abs(pt.ps.residues[k]) > 1e-6)
                    cands.push_back({pt.ps.poles[k], std::abs(pt.ps.residues[k])});
            if (cands.empty()) {
                ++omitted;
                tracked.clear();
                continue;
            }
            std::vector<std::pair<cdouble, int>> new_tracked;
            std::vector<char> taken(tracked.size(), 0);
            for (const auto& cand : cands) { // already |res|-descending from PoleSet
                int best = -1;
                double bestd = std::numeric_limits<double>::infinity();
                for (std::size_t t = 0; t < tracked.size(); ++t) {
                    if (taken[t]) continue;
                    const double d = std::abs(cand.z - tracked[t].first);
                    if (d < bestd) {
                        bestd = d;
                        best = int(t);
                    }
                }
                int idx;
                if (best >= 0 && bestd < 0.5 * (1.0 + std::abs(cand.z))) {
                    taken[best] = 1;
                    idx = tracked[best].second;
                } else {
                    idx = next_index++;
                }
                new_tracked.push_back({cand.z, idx});
                rows.push_back({pt.gamma, pt.zeta, idx, 1.0 / std::fabs(cand.z.real()),
                                cand.z.imag(), cand.res_mag});
            }
            tracked = std::move(new_tracked);
        }
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.gamma != b.gamma) return a.gamma < b.gamma;
        if (a.zeta != b.zeta) return a.zeta < b.zeta;
        return a.mode_index < b.mode_index;
    });

    std::string csv = "gamma,zeta,mode_index,tau_ps,freq_per_ps,residue_mag\n";
    for (const auto& r : rows)
        csv += format_sci(r.gamma) + "," + format_sci(r.zeta) + "," +
               std::to_string(r.mode_index) + "," + format_sci(r.tau) + "," +
               format_sci(r.freq) + "," + format_sci(r.res_mag) + "\n";
    write_file(cfg.out_path, csv);
    write_metadata(cfg, "sweep",
                   {{"omitted_points", omitted}, {"n_rows", rows.size()}}, start);
    return 0;
}

int cmd_compare(const RunConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    if (cfg.models.empty())
        throw ConfigError("compare: models (subset of dc,sb,nn) is required");
    const auto grid = linspace(cfg.grid.t_max, cfg.grid.n_points);
    std::vector<std::vector<double>> cols;
    for (const auto& m : cfg.models) {
        PhysParams p = cfg.params;
        KernelConfig c = cfg.kernel;
        if (m == "dc") c.variant = Variant::dc;
        else if (m == "sb") c.variant = Variant::sb;
        else {
            c.variant = Variant::nn;
            p.zeta = 0.0; // NN correction is defined for the SB model
        }
        cols.push_back(reconstruct_time(poles_for(p, c), grid).values);
    }
    std::string csv = "t_ps";
    for (const auto& m : cfg.models) csv += "," + m;
    csv += "\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        csv += format_sci(grid[i]);
        for (const auto& col : cols) csv += "," + format_sci(col[i]);
        csv += "\n";
    }
    write_file(cfg.out_path, csv);
    write_metadata(cfg, "compare", json::object(), start);
    return 0;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"dual-coupling spin-boson NIBA dynamics"};
    app.require_subcommand(1);

    struct FlagSet {
        std::string config, gamma, zeta, kt, delta, omega_c, model, f_mode, scale,
            gamma_eff, fc_exp, t_max, n_points, out, jobs, gamma_range, zeta_list,
            models;
    };
    FlagSet fl;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", fl.config, "config file (key = value lines)");
        sub->add_option("--gamma", fl.gamma);
        sub->add_option("--zeta", fl.zeta);
        sub->add_option("--kt-mev", fl.kt);
        sub->add_option("--delta-mev", fl.delta);
        sub->add_option("--omega-c-mev", fl.omega_c);
        sub->add_option("--model", fl.model, "dc|sb|nn");
        sub->add_option("--f-mode", fl.f_mode, "exact|high-t");
        sub->add_option("--kernel-scale", fl.scale, "calibrated|paper");
        sub->add_option("--gamma-eff", fl.gamma_eff, "scaled|literal");
        sub->add_option("--fc-exponent", fl.fc_exp, "paper|rederived");
        sub->add_option("--t-max", fl.t_max);
        sub->add_option("--n-points", fl.n_points);
        sub->add_option("--out", fl.out);
        sub->add_option("--jobs", fl.jobs);
        return sub;
    };
    CLI::App* sim = add_common(app.add_subcommand("simulate", "time trace CSV"));
    CLI::App* pol = add_common(app.add_subcommand("poles", "pole table CSV"));
    CLI::App* swp = add_common(app.add_subcommand("sweep", "coherence-time sweep CSV"));
    swp->add_option("--gamma-range", fl.gamma_range, "start:stop:count");
    swp->add_option("--zeta-list", fl.zeta_list, "comma-separated zeta values");
    CLI::App* cmp = add_common(app.add_subcommand("compare", "multi-model trace CSV"));
    cmp->add_option("--models", fl.models, "comma-separated subset of dc,sb,nn");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg;
        CLI::App* sub = sim->parsed() ? sim : pol->parsed() ? pol
                        : swp->parsed() ? swp : cmp;
        if (!fl.config.empty()) apply_config_file(cfg, fl.config);
        auto flag = [&](const char* name, const std::string& val, const char* key) {
            const CLI::Option* opt = sub->get_option_no_throw(name);
            if (opt && opt->count() > 0)
                apply_key_value(cfg, key, val, std::string("flag ") + name);
        };
        flag("--gamma", fl.gamma, "gamma");
        flag("--zeta", fl.zeta, "zeta");
        flag("--kt-mev", fl.kt, "kt_mev");
        flag("--delta-mev", fl.delta, "delta_mev");
        flag("--omega-c-mev", fl.omega_c, "omega_c_mev");
        flag("--model", fl.model, "model");
        flag("--f-mode", fl.f_mode, "f_mode");
        flag("--kernel-scale", fl.scale, "kernel_scale");
        flag("--gamma-eff", fl.gamma_eff, "gamma_eff");
        flag("--fc-exponent", fl.fc_exp, "fc_exponent");
        flag("--t-max", fl.t_max, "t_max");
        flag("--n-points", fl.n_points, "n_points");
        flag("--out", fl.out, "out");
        flag("--jobs", fl.jobs, "jobs");
        flag("--gamma-range", fl.gamma_range, "gamma_range");
        flag("--zeta-list", fl.zeta_list, "zeta_list");
        flag("--models", fl.models, "models");

        if (sim->parsed()) return cmd_simulate(cfg);
        if (pol->parsed()) return cmd_poles(cfg);
        if (swp->parsed()) return cmd_sweep(cfg);
        return cmd_compare(cfg);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}

} // namespace dcsb::cli
