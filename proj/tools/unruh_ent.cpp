// unruh-ent: coefficients, rates, time evolution and figure sweeps for two
// uniformly accelerated atoms near a reflecting boundary.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "unruh/emit.hpp"
#include "unruh/entanglement.hpp"
#include "unruh/errors.hpp"
#include "unruh/field_correlations.hpp"
#include "unruh/master_equation.hpp"
#include "unruh/sweep.hpp"

namespace {

using namespace unruh;
using ojson = nlohmann::ordered_json;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Options {
    SystemParams params;
    bool no_d{false};
    std::string format{"csv"};
    std::string out;
    std::size_t parallelism{1};
    double tol{1e-8};
    bool tol_set{false};
    // evolve / cmax
    double t_end{0.0};
    std::size_t samples{0};
    double horizon{0.0};
    std::string initial{"ten"};
    // sweep / figure
    std::string spec_path;
    int figure{0};
};

void add_physics_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--omega", o.params.omega, "transition frequency")->capture_default_str();
    cmd->add_option("--accel", o.params.accel, "proper acceleration (0 = inertial)")->capture_default_str();
    cmd->add_option("--z", o.params.z, "atom-boundary distance")->capture_default_str();
    cmd->add_option("--l", o.params.l, "interatomic separation")->capture_default_str();
    cmd->add_option("--gamma0", o.params.gamma0, "inertial spontaneous emission rate")->capture_default_str();
    cmd->add_flag("--no-d", o.no_d, "switch off the environment-induced interaction (D = 0)");
}

void add_output_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--format", o.format, "csv or json")->capture_default_str();
    cmd->add_option("--out", o.out, "output file (stdout when empty; directory for `figure`)");
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + path);
    file << text;
}

CoefficientSet coefficients_for(const Options& o) {
    CoefficientSet c = compute_coefficients(o.params);
    return o.no_d ? c.without_interaction() : c;
}

ojson coeff_json(const CoefficientSet& c) {
    return ojson{{"a1", c.a1}, {"a2", c.a2}, {"b1", c.b1}, {"b2", c.b2}, {"d", c.d}};
}

std::string key_value_csv(const std::vector<std::pair<std::string, std::string>>& items) {
    std::string header, values;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0) {
            header += ',';
            values += ',';
        }
        header += items[i].first;
        values += items[i].second;
    }
    return header + "\n" + values + "\n";
}

void run_coefficients(const Options& o) {
    const CoefficientSet c = coefficients_for(o);
    if (parse_format(o.format) == Format::json) {
        write_output(dump_json(coeff_json(c)), o.out);
        return;
    }
    write_output(key_value_csv({{"a1", format_double(c.a1)},
                                {"a2", format_double(c.a2)},
                                {"b1", format_double(c.b1)},
                                {"b2", format_double(c.b2)},
                                {"d", format_double(c.d)}}),
                 o.out);
}

void run_rate(const Options& o) {
    const CoefficientSet c = coefficients_for(o);
    const GenerationReport r = generation_rate(c);
    if (parse_format(o.format) == Format::json) {
        ojson j{{"rate", r.rate}, {"generates", r.generates}, {"coefficients", coeff_json(c)}};
        write_output(dump_json(j), o.out);
        return;
    }
    write_output(key_value_csv({{"rate", format_double(r.rate)}, {"generates", r.generates ? "true" : "false"}}),
                 o.out);
}

void run_evolve(const Options& o) {
    const CoefficientSet c = coefficients_for(o);
    const XState initial = prepare_initial(parse_initial_label(o.initial));
    const double horizon = o.t_end > 0.0 ? o.t_end : default_horizon(initial, c);
    const std::vector<double> times =
        o.samples >= 2 ? linear_grid(0.0, horizon, o.samples) : default_time_grid(c, horizon);
    const EvolutionResult r = evolve_closed(initial, c, times);

    if (parse_format(o.format) == Format::json) {
        ojson rows = ojson::array();
        for (std::size_t i = 0; i < r.times.size(); ++i) {
            const XState& s = r.states[i];
            rows.push_back(ojson{{"tau", r.times[i]},
                                 {"p_gg", s.p_gg},
                                 {"p_ee", s.p_ee},
                                 {"p_aa", s.p_aa},
                                 {"p_ss", s.p_ss},
                                 {"re_as", s.c_as.real()},
                                 {"im_as", s.c_as.imag()},
                                 {"re_ge", s.c_ge.real()},
                                 {"im_ge", s.c_ge.imag()},
                                 {"concurrence", r.concurrence[i]}});
        }
        write_output(dump_json(ojson{{"coefficients", coeff_json(c)}, {"rows", rows}}), o.out);
        return;
    }
    std::string out = "tau,p_gg,p_ee,p_aa,p_ss,re_as,im_as,re_ge,im_ge,concurrence\n";
    for (std::size_t i = 0; i < r.times.size(); ++i) {
        const XState& s = r.states[i];
        for (double v : {r.times[i], s.p_gg, s.p_ee, s.p_aa, s.p_ss, s.c_as.real(), s.c_as.imag(), s.c_ge.real(),
                         s.c_ge.imag()}) {
            out += format_double(v);
            out += ',';
        }
        out += format_double(r.concurrence[i]);
        out += '\n';
    }
    write_output(out, o.out);
}

void run_cmax(const Options& o) {
    MaxConcurrenceOptions opts;
    opts.horizon = o.horizon;
    opts.tol = o.tol;
    opts.initial = prepare_initial(parse_initial_label(o.initial));
    const MaxConcurrenceResult r = max_concurrence(coefficients_for(o), opts);
    if (r.at_horizon) std::cerr << "warning: maximum sits at the horizon; increase --horizon\n";
    if (parse_format(o.format) == Format::json) {
        ojson j{{"tau_star", r.tau_star}, {"c_max", r.c_max}, {"horizon", r.horizon}, {"at_horizon", r.at_horizon}};
        write_output(dump_json(j), o.out);
        return;
    }
    write_output(key_value_csv({{"tau_star", format_double(r.tau_star)},
                                {"c_max", format_double(r.c_max)},
                                {"horizon", format_double(r.horizon)},
                                {"at_horizon", r.at_horizon ? "true" : "false"}}),
                 o.out);
}

void apply_overrides(SweepSpec& spec, const Options& o) {
    if (o.tol_set) spec.tol = o.tol;
    if (o.no_d) spec.variants = {Variant::without_d};
    if (o.horizon > 0.0) spec.horizon = o.horizon;
}

void run_sweep_cmd(const Options& o) {
    std::ifstream file(o.spec_path);
    if (!file) throw ConfigError("cannot read spec file " + o.spec_path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(file);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("spec file is not valid JSON: ") + e.what());
    }
    SweepSpec spec = spec_from_json(doc);
    apply_overrides(spec, o);
    const SweepResult r = run_sweep(spec, o.parallelism);
    const Format format = parse_format(o.format);
    write_output(format == Format::csv ? to_csv(r) : to_json(r), o.out);
}

void run_figure(const Options& o) {
    const Format format = parse_format(o.format);
    const std::filesystem::path dir = o.out.empty() ? std::filesystem::path(".") : std::filesystem::path(o.out);
    std::filesystem::create_directories(dir);
    for (SweepSpec spec : preset(o.figure)) {
        apply_overrides(spec, o);
        const SweepResult r = run_sweep(spec, o.parallelism);
        const auto path = dir / (spec.label + (format == Format::csv ? ".csv" : ".json"));
        emit(r, format, path);
        std::cerr << "wrote " << path.string() << " (" << r.rows.size() << " rows)\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement dynamics of uniformly accelerated atoms near a reflecting boundary"};
    app.require_subcommand(1);
    Options o;

    auto* coeffs = app.add_subcommand("coefficients", "print A1, A2, B1, B2, D");
    add_physics_flags(coeffs, o);
    add_output_flags(coeffs, o);

    auto* rate = app.add_subcommand("rate", "initial entanglement generation rate for |10>");
    add_physics_flags(rate, o);
    add_output_flags(rate, o);

    auto* evolve = app.add_subcommand("evolve", "time series of the X state and its concurrence");
    add_physics_flags(evolve, o);
    add_output_flags(evolve, o);
    evolve->add_option("--t-end", o.t_end, "final proper time (default: relaxation horizon)");
    evolve->add_option("--samples", o.samples, "uniform sample count (default: hybrid grid)");
    evolve->add_option("--initial", o.initial, "ten, bell_A or bell_S")->capture_default_str();

    auto* cmax = app.add_subcommand("cmax", "maximum concurrence generated during evolution");
    add_physics_flags(cmax, o);
    add_output_flags(cmax, o);
    cmax->add_option("--horizon", o.horizon, "search horizon (default: relaxation horizon)");
    cmax->add_option("--tol", o.tol, "golden-section tolerance in tau")->capture_default_str();
    cmax->add_option("--initial", o.initial, "ten, bell_A or bell_S")->capture_default_str();

    auto* sweep = app.add_subcommand("sweep", "run a declarative parameter sweep");
    sweep->add_option("--spec", o.spec_path, "sweep spec (JSON)")->required();
    sweep->add_flag("--no-d", o.no_d, "only the D = 0 variant");
    sweep->add_option("--parallelism", o.parallelism, "worker threads")->capture_default_str();
    sweep->add_option("--tol", o.tol, "override the spec tolerance")->each([&](const std::string&) { o.tol_set = true; });
    sweep->add_option("--horizon", o.horizon, "override the cmax horizon");
    add_output_flags(sweep, o);

    auto* figure = app.add_subcommand("figure", "write the preset sweeps of one figure as fig<n>_<panel> files");
    figure->add_option("n", o.figure, "figure number 2..10")->required();
    figure->add_flag("--no-d", o.no_d, "only the D = 0 variant");
    figure->add_option("--parallelism", o.parallelism, "worker threads")->capture_default_str();
    figure->add_option("--tol", o.tol, "override the golden-section tolerance")->each([&](const std::string&) {
        o.tol_set = true;
    });
    add_output_flags(figure, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*coeffs) run_coefficients(o);
        if (*rate) run_rate(o);
        if (*evolve) run_evolve(o);
        if (*cmax) run_cmax(o);
        if (*sweep) run_sweep_cmd(o);
        if (*figure) run_figure(o);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const InvariantError& e) {
        std::cerr << "invariant violated: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const ConvergenceError& e) {
        std::cerr << "no convergence: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const DegenerateKernelError& e) {
        std::cerr << "degenerate generator: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
