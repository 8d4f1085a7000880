#include <collapse/cli/config.hpp>

#include <collapse/core/errors.hpp>
#include <collapse/core/types.hpp>
#include <collapse/nearlinear/construction.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <map>
#include <numbers>

namespace collapse::cli {

std::string mode_label(Mode m) {
    switch (m) {
        case Mode::simulate: return "simulate";
        case Mode::construct_zk: return "construct-zk";
        case Mode::sweep: return "sweep";
        case Mode::spectrum: return "spectrum";
        case Mode::triangular_probe: return "triangular-probe";
    }
    return "?";
}

std::optional<RunConfig> parse_arguments(const std::vector<std::string>& args) {
    RunConfig c;
    CLI::App app{"Event-driven three-sphere inelastic collapse lab", "collapse_lab"};
    app.set_config("--config", "", "key=value file; command-line flags take precedence");
    app.allow_config_extras(false);

    const std::map<std::string, Mode> modes{{"simulate", Mode::simulate},
                                            {"construct-zk", Mode::construct_zk},
                                            {"sweep", Mode::sweep},
                                            {"spectrum", Mode::spectrum},
                                            {"triangular-probe", Mode::triangular_probe}};
    const std::map<std::string, Precision> precisions{
        {"auto", Precision::automatic}, {"double", Precision::double_precision}, {"high", Precision::high}};

    app.add_option("mode", c.mode, "simulate | construct-zk | sweep | spectrum | triangular-probe")
        ->required()
        ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case))
        ->option_text("MODE");

    app.add_option("--r", c.r, "restitution coefficient");
    app.add_option("--dim", c.dim, "space dimension");
    std::optional<double> cos_theta0, theta0_deg;
    app.add_option("--cos_theta0", cos_theta0, "cos of the initial angle between the contact lines");
    app.add_option("--theta0_deg", theta0_deg, "initial angle in degrees");
    app.add_option("--delta_theta", c.delta_theta, "allowed drift of -cos(theta)");
    app.add_option("--seed", c.seed);
    app.add_option("--max_collisions", c.max_collisions);
    app.add_option("--max_time", c.max_time);
    std::optional<long> min_events;
    app.add_option("--min_events", min_events, "collisions before collapse may be declared");
    app.add_option("--precision", c.precision, "auto | double | high")
        ->transform(CLI::CheckedTransformer(precisions, CLI::ignore_case))
        ->option_text("PRECISION");
    app.add_flag("--strict", c.strict, "exit 3 on triple collision or grazing");
    app.add_option("--jobs", c.jobs, "worker threads for sweeps, 0 for all cores");
    app.add_option("--out_dir", c.out_dir);

    const char* xs[3] = {"--x0", "--x1", "--x2"};
    const char* vs[3] = {"--v0", "--v1", "--v2"};
    for (int i = 0; i < 3; ++i) {
        app.add_option(xs[i], c.x[i], "position, comma separated")->delimiter(',');
        app.add_option(vs[i], c.v[i], "velocity, comma separated")->delimiter(',');
    }

    app.add_option("--r_grid", c.r_grid)->delimiter(',');
    app.add_option("--cos_theta0_grid", c.cos_theta0_grid)->delimiter(',');
    app.add_option("--seeds", c.seeds)->delimiter(',');
    app.add_option("--r_points", c.r_points);
    std::vector<double> probe;
    app.add_option("--probe_x0", probe, "four comma separated coordinates")->delimiter(',');
    app.add_option("--max_iter", c.max_iter);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    if (cos_theta0 && theta0_deg) throw UsageError("give either cos_theta0 or theta0_deg, not both");
    if (theta0_deg) cos_theta0 = std::cos(*theta0_deg * std::numbers::pi / 180.0);
    c.cos_theta0 = cos_theta0;
    if (min_events)
        c.min_events = *min_events;
    else if (c.mode == Mode::simulate)
        c.min_events = 0;
    if (!probe.empty()) {
        if (probe.size() != 4) throw UsageError("probe_x0 needs exactly 4 coordinates");
        for (int k = 0; k < 4; ++k) c.probe_x0[k] = probe[k];
    }
    validate(c);
    return c;
}

namespace {

void check_r(double r, const std::string& what) {
    if (!(r > 0.0 && r < 1.0)) throw UsageError(what + " must satisfy 0 < r < 1");
}

void check_construction(double r, double cos_theta0, double delta_theta) {
    try {
        build_construction(r, cos_theta0, delta_theta);
    } catch (const NoConstructionError& e) {
        throw UsageError(e.what());
    }
}

}  // namespace

void validate(const RunConfig& c) {
    if (c.dim < 2) throw UsageError("dim must satisfy dim >= 2");
    if (c.max_collisions < 1) throw UsageError("max_collisions must satisfy max_collisions >= 1");
    if (!(c.max_time > 0.0)) throw UsageError("max_time must satisfy max_time > 0");
    if (c.min_events < 0) throw UsageError("min_events must satisfy min_events >= 0");
    if (c.jobs < 0) throw UsageError("jobs must satisfy jobs >= 0");
    if (!(c.delta_theta > 0.0)) throw UsageError("delta_theta must satisfy delta_theta > 0");

    switch (c.mode) {
        case Mode::simulate: {
            check_r(c.r, "r");
            for (int i = 0; i < 3; ++i)
                if (int(c.x[i].size()) != c.dim || int(c.v[i].size()) != c.dim)
                    throw UsageError("simulate needs x0, x1, x2, v0, v1, v2 with dim = " + std::to_string(c.dim) +
                                     " entries each");
            BasicSystemState<double> s = BasicSystemState<double>::at_rest(c.dim);
            for (int i = 0; i < 3; ++i) {
                s.x[i] = VecD(c.x[i]);
                s.v[i] = VecD(c.v[i]);
            }
            try {
                validate_state(s);
            } catch (const Error& e) {
                throw UsageError(e.what());
            }
            break;
        }
        case Mode::construct_zk:
            check_r(c.r, "r");
            if (!c.cos_theta0) throw UsageError("construct-zk needs cos_theta0 or theta0_deg");
            check_construction(c.r, *c.cos_theta0, c.delta_theta);
            break;
        case Mode::sweep:
            if (c.r_grid.empty() || c.cos_theta0_grid.empty() || c.seeds.empty())
                throw UsageError("sweep needs nonempty r_grid, cos_theta0_grid and seeds");
            for (double r : c.r_grid) check_r(r, "every r_grid entry");
            for (double ct : c.cos_theta0_grid)
                if (!(ct >= -1.0 && ct <= 1.0))
                    throw UsageError("every cos_theta0_grid entry must satisfy -1 <= cos_theta0 <= 1");
            break;
        case Mode::spectrum:
            if (c.r_grid.empty() && c.r_points < 1) throw UsageError("spectrum needs r_points >= 1 or an r_grid");
            for (double r : c.r_grid) check_r(r, "every r_grid entry");
            break;
        case Mode::triangular_probe:
            check_r(c.r, "r");
            if (c.max_iter < 1) throw UsageError("max_iter must satisfy max_iter >= 1");
            break;
    }
}

std::vector<double> spectrum_grid(const RunConfig& c) {
    if (!c.r_grid.empty()) return c.r_grid;
    std::vector<double> g;
    for (long k = 1; k <= c.r_points; ++k) g.push_back(double(k) / double(c.r_points + 1));
    return g;
}

}  // namespace collapse::cli
