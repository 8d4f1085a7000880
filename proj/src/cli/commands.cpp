#include <collapse/cli/commands.hpp>

#include <collapse/cli/csv.hpp>
#include <collapse/engine/engine.hpp>
#include <collapse/nearlinear/sampler.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <thread>

namespace collapse::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json num(double x) {
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return "nan";
    return x > 0 ? "inf" : "-inf";
}

json nums(const std::vector<double>& xs) {
    json a = json::array();
    for (double x : xs) a.push_back(num(x));
    return a;
}

std::string flag(bool b) { return b ? "true" : "false"; }

std::string cell(double x) { return format17(x); }

std::string sanitize(std::string s) {
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

fs::path prepare_out_dir(const RunConfig& cfg) {
    fs::path dir(cfg.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
    return dir;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

bool wants_high(const RunConfig& cfg, bool default_high) {
    switch (cfg.precision) {
        case Precision::high: return true;
        case Precision::double_precision: return false;
        case Precision::automatic: return default_high;
    }
    return default_high;
}

RunLimits limits_of(const RunConfig& cfg) {
    RunLimits lim;
    lim.max_collisions = cfg.max_collisions;
    lim.max_time = cfg.max_time;
    lim.collapse.min_events = cfg.min_events;
    lim.record_trajectory = true;
    return lim;
}

bool strict_stop(const RunConfig& cfg, Termination t) {
    return cfg.strict && (t == Termination::triple_collision || t == Termination::grazing);
}

struct RunArtifacts {
    CsvTable events;
    json report = json::object();
    Termination termination = Termination::max_collisions;
    long collisions = 0;
    std::optional<double> decay_rate;
    std::optional<double> zeta_max_ratio;
    std::optional<RecursionCertificate> certificate;
};

template <class T>
std::optional<double> zeta_max_ratio(const std::vector<BasicCollisionEvent<T>>& events) {
    std::optional<double> m;
    for (std::size_t k = 1; k < events.size(); ++k) {
        if (events[k - 1].zeta <= 0) continue;
        const double q = to_double(events[k].zeta / events[k - 1].zeta);
        m = m ? std::max(*m, q) : q;
    }
    return m;
}

template <class T>
RunArtifacts analyse(const BasicSimulationOutcome<T>& out, const ZkConstruction* zk) {
    RunArtifacts a;
    a.events = events_table(out.events);
    a.termination = out.termination;
    a.collisions = long(out.events.size());
    a.decay_rate = fit_decay_rate(out.events);
    a.zeta_max_ratio = zeta_max_ratio(out.events);
    a.report["order"] = to_json(classify_order(out.events, 10, out.termination));
    a.report["convergence"] = to_json(convergence_report(out.events, out.trajectory));
    if (zk) {
        a.certificate = verify_recursion(out, *zk);
        a.report["certificate"] = to_json(*a.certificate);
        a.report["zk_construction"] = to_json(*zk);
    }
    return a;
}

template <class T>
RunArtifacts construct_and_run(const ZkConstruction& zk, std::uint64_t seed, const RunConfig& cfg) {
    const auto state = sample_initial_configuration<T>(zk, seed, cfg.dim);
    const auto out = run(state, Restitution(cfg.r), limits_of(cfg));
    return analyse(out, &zk);
}

RunArtifacts construct_and_run(const ZkConstruction& zk, std::uint64_t seed, const RunConfig& cfg, bool high) {
    return high ? construct_and_run<HighPrecision>(zk, seed, cfg) : construct_and_run<double>(zk, seed, cfg);
}

int finish_run(const RunConfig& cfg, const RunArtifacts& a) {
    const fs::path dir = prepare_out_dir(cfg);
    write_csv(dir / "events.csv", a.events);
    write_json(dir / "report.json", a.report);
    return strict_stop(cfg, a.termination) ? exit_strict : exit_ok;
}

int cmd_simulate(const RunConfig& cfg) {
    auto s = BasicSystemState<double>::at_rest(cfg.dim);
    for (int i = 0; i < 3; ++i) {
        s.x[i] = VecD(cfg.x[i]);
        s.v[i] = VecD(cfg.v[i]);
    }
    RunArtifacts a;
    if (wants_high(cfg, false))
        a = analyse(run(state_cast<HighPrecision>(s), Restitution(cfg.r), limits_of(cfg)), nullptr);
    else
        a = analyse(run(s, Restitution(cfg.r), limits_of(cfg)), nullptr);
    return finish_run(cfg, a);
}

int cmd_construct_zk(const RunConfig& cfg) {
    const ZkConstruction zk = build_construction(cfg.r, *cfg.cos_theta0, cfg.delta_theta);
    return finish_run(cfg, construct_and_run(zk, cfg.seed, cfg, wants_high(cfg, true)));
}

struct SweepJob {
    double r;
    double cos_theta0;
    std::uint64_t seed;
};

std::vector<std::string> sweep_row(const SweepJob& job, const RunConfig& base) {
    std::vector<std::string> row{cell(job.r), cell(job.cos_theta0), std::to_string(job.seed)};
    RunConfig cfg = base;
    cfg.r = job.r;
    cfg.cos_theta0 = job.cos_theta0;
    cfg.seed = job.seed;
    ZkConstruction zk;
    try {
        zk = build_construction(job.r, job.cos_theta0, cfg.delta_theta);
    } catch (const NoConstructionError& e) {
        row.insert(row.end(), {"no-construction", "", "", "", "", "", "", "", sanitize(e.what())});
        return row;
    }
    try {
        const RunArtifacts a = construct_and_run(zk, job.seed, cfg, wants_high(cfg, true));
        const auto& cert = *a.certificate;
        row.insert(row.end(), {"ok", termination_label(a.termination),
                               a.termination == Termination::collapse_detected ? "1" : "0",
                               std::to_string(a.collisions), cell(cert.final_cos_theta),
                               a.decay_rate ? cell(*a.decay_rate) : "",
                               a.zeta_max_ratio ? cell(*a.zeta_max_ratio) : "", flag(cert.clean()), ""});
    } catch (const std::exception& e) {
        row.insert(row.end(), {"error", "", "", "", "", "", "", "", sanitize(e.what())});
    }
    return row;
}

int cmd_sweep(const RunConfig& cfg) {
    std::vector<SweepJob> jobs;
    for (double r : cfg.r_grid)
        for (double ct : cfg.cos_theta0_grid)
            for (auto seed : cfg.seeds) jobs.push_back({r, ct, seed});

    std::vector<std::vector<std::string>> rows(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < jobs.size(); k = next++) rows[k] = sweep_row(jobs[k], cfg);
    };
    unsigned n = cfg.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : unsigned(cfg.jobs);
    n = unsigned(std::min<std::size_t>(n, std::max<std::size_t>(jobs.size(), 1)));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    CsvTable t;
    t.header = {"r",          "cos_theta0",     "seed",           "status",
                "termination", "collapse",      "collisions",     "final_cos_theta",
                "eta_decay_rate", "zeta_max_ratio", "certificate_clean", "message"};
    t.rows = std::move(rows);
    write_csv(prepare_out_dir(cfg) / "sweep.csv", t);
    return exit_ok;
}

// How far a spectrum row is from satisfying its bounds, 0 when it does.
double bound_violation_margin(const SpectrumReport& s) {
    const double r3 = s.r * s.r * s.r;
    const double mp = std::abs(s.lambda_plus);
    return std::max({0.0, -s.r - s.lambda0, s.lambda0 + r3, std::fabs(s.lambda0) - mp, mp - 1.0,
                     std::fabs(s.lambda_plus.imag()) > 0 ? 0.0 : 1.0});
}

int cmd_spectrum(const RunConfig& cfg) {
    const auto grid = spectrum_grid(cfg);
    if (grid.empty()) throw UsageError("spectrum needs a nonempty r grid");
    CsvTable t;
    t.header = {"r",        "lambda0",  "re_lambda_plus", "im_lambda_plus", "real_bounds_ok", "modulus_bounds_ok",
                "bounds_ok", "viete_residual"};
    long violations = 0;
    double margin = 0.0, viete = 0.0;
    for (double r : grid) {
        const auto s = spectrum(r);
        t.rows.push_back({cell(r), cell(s.lambda0), cell(s.lambda_plus.real()), cell(s.lambda_plus.imag()),
                          flag(s.real_bounds_ok), flag(s.modulus_bounds_ok), flag(s.bounds_ok()),
                          cell(s.viete_residual)});
        if (!s.bounds_ok()) ++violations;
        margin = std::max(margin, bound_violation_margin(s));
        viete = std::max(viete, s.viete_residual);
    }
    const fs::path dir = prepare_out_dir(cfg);
    write_csv(dir / "spectrum.csv", t);
    json summary{{"points", long(grid.size())},
                 {"violations", violations},
                 {"max_bound_violation_margin", num(margin)},
                 {"max_viete_residual", num(viete)}};
    write_json(dir / "spectrum_summary.json", summary);
    return exit_ok;
}

int cmd_triangular_probe(const RunConfig& cfg) {
    const auto rep = iterate_cone_exit(cfg.probe_x0, cfg.r, cfg.max_iter);
    CsvTable t;
    t.header = {"n", "x", "y", "z", "t", "in_c1", "in_c2", "distance"};
    for (std::size_t n = 0; n < rep.orbit.size(); ++n) {
        const auto& p = rep.orbit[n];
        const auto f = cone_membership(p[0], p[1], p[2], p[3], cfg.r);
        t.rows.push_back({std::to_string(n), cell(p[0]), cell(p[1]), cell(p[2]), cell(p[3]), flag(f.in_c1),
                          flag(f.in_c2), cell(rep.distance_to_fixed_line[n])});
    }
    const fs::path dir = prepare_out_dir(cfg);
    write_csv(dir / "cone_orbit.csv", t);
    json j{{"r", cfg.r}, {"started_in_c2", rep.started_in_c2}, {"spectrum", to_json(spectrum(cfg.r))}};
    if (rep.exit_index) j["exit_index"] = *rep.exit_index;
    if (rep.fitted_ratio) j["fitted_ratio"] = num(*rep.fitted_ratio);
    write_json(dir / "probe.json", j);
    return exit_ok;
}

}  // namespace

json to_json(const CollisionOrder& order) {
    json j{{"kind", order_kind_label(order.kind)}};
    if (order.period_start_index) j["period_start_index"] = *order.period_start_index;
    if (order.central_particle) j["central_particle"] = *order.central_particle;
    return j;
}

json to_json(const ConvergenceReport& rep) {
    json j;
    json eta = json::object(), omega = json::object();
    for (int p = 0; p < 3; ++p) {
        eta[pair_label(Pair(p))] = nums(rep.eta_l2_partial_sums[p]);
        omega[pair_label(Pair(p))] = nums(rep.omega_cauchy_residuals[p]);
    }
    j["eta_l2_partial_sums"] = eta;
    j["tau_partial_sums"] = nums(rep.tau_partial_sums);
    j["omega_cauchy_residuals"] = omega;
    j["gap_tail_log10"] = nums(rep.gap_tail_log10);
    j["tau_star_estimate"] = num(rep.tau_star_estimate);
    if (rep.eta_decay_rate) j["eta_decay_rate"] = num(*rep.eta_decay_rate);
    j["finite_max_gaps"] = rep.finite_max_gaps;
    return j;
}

json to_json(const RecursionCertificate& cert) {
    json flags = json::array();
    for (const auto& f : cert.flags) {
        json row{{"n", f.n}};
        for (std::size_t k = 0; k < condition_count; ++k) row[condition_label(Condition(k))] = bool(f.ok[k]);
        flags.push_back(row);
    }
    json j{{"flags", flags},
           {"x", nums(cert.x)},
           {"y", nums(cert.y)},
           {"final_cos_theta", num(cert.final_cos_theta)},
           {"final_angle_ok", cert.final_angle_ok},
           {"clean", cert.clean()}};
    if (cert.first_violation)
        j["first_violation"] = {{"n", cert.first_violation->first},
                                {"condition", condition_label(cert.first_violation->second)}};
    return j;
}

json to_json(const ZkConstruction& z) {
    return json{{"r", z.r},
                {"cos_theta0", z.cos_theta0},
                {"delta_theta", z.delta_theta},
                {"alpha0", z.alpha0},
                {"phi_minus", z.phi_minus},
                {"phi_plus", z.phi_plus},
                {"delta1", z.delta1},
                {"delta2", z.delta2},
                {"delta3", z.delta3},
                {"delta4", z.delta4},
                {"delta5", z.delta5},
                {"h4", z.h4},
                {"h5", z.h5},
                {"C_eta", z.C_eta},
                {"V0", z.V0},
                {"V1", z.V1},
                {"delta_x", z.delta_x},
                {"delta_y", z.delta_y},
                {"x0_bound", z.x0_bound},
                {"dtheta_bound", z.dtheta_bound},
                {"eta_bar", z.eta_bar},
                {"zeta_bar", z.zeta_bar},
                {"d_bar_candidates", nums({z.d_bar_candidates.begin(), z.d_bar_candidates.end()})}};
}

json to_json(const SpectrumReport& s) {
    return json{{"r", s.r},
                {"lambda0", num(s.lambda0)},
                {"lambda_plus", {num(s.lambda_plus.real()), num(s.lambda_plus.imag())}},
                {"lambda_minus", {num(s.lambda_minus.real()), num(s.lambda_minus.imag())}},
                {"real_bounds_ok", s.real_bounds_ok},
                {"modulus_bounds_ok", s.modulus_bounds_ok},
                {"bounds_ok", s.bounds_ok()},
                {"viete_residual", num(s.viete_residual)},
                {"q_at_lambda0", num(s.q_at_lambda0)}};
}

int run_command(const RunConfig& cfg) {
    switch (cfg.mode) {
        case Mode::simulate: return cmd_simulate(cfg);
        case Mode::construct_zk: return cmd_construct_zk(cfg);
        case Mode::sweep: return cmd_sweep(cfg);
        case Mode::spectrum: return cmd_spectrum(cfg);
        case Mode::triangular_probe: return cmd_triangular_probe(cfg);
    }
    return exit_usage;
}

int main_entry(const std::vector<std::string>& args) {
    try {
        const auto cfg = parse_arguments(args);
        if (!cfg) return exit_ok;
        return run_command(*cfg);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return exit_failure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_failure;
    }
}

int main_entry(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return main_entry(args);
}

}  // namespace collapse::cli
