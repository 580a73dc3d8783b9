#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qdx/errors.hpp"
#include "qdx/run.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    std::string preset;
    std::string engine = "analytic";
    int n_total = 10;
    int n_excited = 5;
    double alpha_re = 1.0;
    double alpha_im = 0.0;
    double k = 0.0;
    double kprime = 0.0;
    double omega0 = 10.0;
    double omega_eg = 110.0;
    double g = 0.0;
    double delta = 0.0;
    double tmax = 0.0;
    int steps = 0;
    int fock_dim = 0;
    double step = 0.0;
    std::string observables = "all";
    std::string format = "csv";
    std::string out = "run.csv";
};

void add_common_flags(CLI::App* cmd, CliOptions& o) {
    cmd->add_option("--preset", o.preset, "figure preset (fig1a ... fig6b)");
    cmd->add_option("--engine", o.engine, "analytic | oracle | both");
    cmd->add_option("--n-total", o.n_total, "total number of molecules N");
    cmd->add_option("--n-excited", o.n_excited, "excited count n of |n,m>");
    cmd->add_option("--alpha-re", o.alpha_re, "Re(alpha)");
    cmd->add_option("--alpha-im", o.alpha_im, "Im(alpha)");
    cmd->add_option("--k", o.k, "cavity dissipation constant (units of omega)");
    cmd->add_option("--kprime", o.kprime,
                    "molecular dissipation constant (units of omega)");
    cmd->add_option("--omega0", o.omega0, "cavity frequency (units of omega)");
    cmd->add_option("--omega-eg", o.omega_eg,
                    "molecular splitting (units of omega)");
    cmd->add_option("--g", o.g, "bare coupling, validity check only");
    cmd->add_option("--delta", o.delta, "detuning, validity check only");
    cmd->add_option("--tmax", o.tmax, "grid end in omega*t");
    cmd->add_option("--steps", o.steps, "number of grid intervals");
    cmd->add_option("--fock-dim", o.fock_dim, "photon truncation override");
    cmd->add_option("--step", o.step, "oracle RK4 step in omega*t");
    cmd->add_option("--observables", o.observables,
                    "comma list of entropies,s1,Fy,photon (default all)");
    cmd->add_option("--format", o.format, "csv | json");
    cmd->add_option("--out", o.out, "output path");
    cmd->add_option("--config", o.config_path,
                    "flat key=value config file; flags override file values");
}

// Applies a flat key=value file. Keys mirror the long flags without the
// leading dashes; a flag given on the command line wins over the file.
void apply_config_file(const CLI::App* cmd, CliOptions& o) {
    std::ifstream f(o.config_path);
    if (!f)
        throw qdx::ConfigError("invalid config: cannot read config file " +
                               o.config_path);

    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };

    std::string line;
    while (std::getline(f, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw qdx::ConfigError("invalid config: malformed line '" + line +
                                   "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        bool on_cli = false;
        try {
            on_cli = cmd->count("--" + key) > 0;
        } catch (const CLI::OptionNotFound&) {
            throw qdx::ConfigError("invalid config: unknown key '" + key +
                                   "'");
        }
        if (on_cli)
            continue;  // explicit flag wins

        try {
            if (key == "preset")
                o.preset = value;
            else if (key == "engine")
                o.engine = value;
            else if (key == "n-total")
                o.n_total = std::stoi(value);
            else if (key == "n-excited")
                o.n_excited = std::stoi(value);
            else if (key == "alpha-re")
                o.alpha_re = std::stod(value);
            else if (key == "alpha-im")
                o.alpha_im = std::stod(value);
            else if (key == "k")
                o.k = std::stod(value);
            else if (key == "kprime")
                o.kprime = std::stod(value);
            else if (key == "omega0")
                o.omega0 = std::stod(value);
            else if (key == "omega-eg")
                o.omega_eg = std::stod(value);
            else if (key == "g")
                o.g = std::stod(value);
            else if (key == "delta")
                o.delta = std::stod(value);
            else if (key == "tmax")
                o.tmax = std::stod(value);
            else if (key == "steps")
                o.steps = std::stoi(value);
            else if (key == "fock-dim")
                o.fock_dim = std::stoi(value);
            else if (key == "step")
                o.step = std::stod(value);
            else if (key == "observables")
                o.observables = value;
            else if (key == "format")
                o.format = value;
            else if (key == "out")
                o.out = value;
            else
                throw qdx::ConfigError("invalid config: unknown key '" + key +
                                       "'");
        } catch (const std::invalid_argument&) {
            throw qdx::ConfigError("invalid config: bad value for '" + key +
                                   "': " + value);
        }
    }
}

qdx::RunConfig build_config(CliOptions& o, const CLI::App* cmd) {
    if (!o.config_path.empty())
        apply_config_file(cmd, o);
    qdx::RunConfig cfg;

    auto flag_given = [cmd](const std::string& name) {
        return cmd->count(name) > 0;
    };

    if (!o.preset.empty()) {
        auto preset = qdx::find_preset(o.preset);
        if (!preset)
            throw qdx::ConfigError("invalid config: unknown preset '" +
                                   o.preset + "'");
        cfg.params = preset->params;
        cfg.t_max = preset->t_max;
        cfg.n_steps = preset->n_steps;
        cfg.preset_name = preset->name;
        cfg.preset_note = preset->note;
        for (const std::string& f :
             {"--n-total", "--n-excited", "--alpha-re", "--alpha-im", "--k",
              "--kprime", "--tmax", "--steps"}) {
            if (flag_given(f))
                std::cerr << "warning: " << f << " overrides preset "
                          << preset->name << "\n";
        }
    }

    if (o.preset.empty() || flag_given("--n-total"))
        cfg.params.n_total = o.n_total;
    if (o.preset.empty() || flag_given("--n-excited"))
        cfg.params.n_excited = o.n_excited;
    if (o.preset.empty() || flag_given("--alpha-re") || flag_given("--alpha-im"))
        cfg.params.alpha = {o.alpha_re, o.alpha_im};
    if (o.preset.empty() || flag_given("--k"))
        cfg.params.k_field = o.k;
    if (o.preset.empty() || flag_given("--kprime"))
        cfg.params.k_mol = o.kprime;
    cfg.params.omega_0 = o.omega0;
    cfg.params.omega_eg = o.omega_eg;
    if (o.g != 0.0)
        cfg.params.g_coupling = o.g;
    if (o.delta != 0.0)
        cfg.params.delta_detuning = o.delta;
    if (o.tmax > 0.0 && (o.preset.empty() || flag_given("--tmax")))
        cfg.t_max = o.tmax;
    if (o.steps > 0 && (o.preset.empty() || flag_given("--steps")))
        cfg.n_steps = o.steps;
    cfg.fock_dim = o.fock_dim;
    cfg.step = o.step;

    if (o.engine == "analytic")
        cfg.engine = qdx::Engine::analytic;
    else if (o.engine == "oracle")
        cfg.engine = qdx::Engine::oracle;
    else if (o.engine == "both")
        cfg.engine = qdx::Engine::both;
    else
        throw qdx::ConfigError("invalid config: unknown engine '" + o.engine +
                               "'");

    if (o.format == "csv")
        cfg.format = qdx::OutputFormat::csv;
    else if (o.format == "json")
        cfg.format = qdx::OutputFormat::json;
    else
        throw qdx::ConfigError("invalid config: unknown format '" + o.format +
                               "'");

    cfg.observables = qdx::ObservableSelection::parse(o.observables);
    cfg.out_path = o.out;
    return cfg;
}

void print_summary(const qdx::RunConfig& cfg, const qdx::RunResult& res) {
    std::cout << "wrote " << cfg.out_path << " (" << res.points.size()
              << " rows, fock_dim " << res.fock_dim << ")\n";
    if (cfg.engine == qdx::Engine::both)
        std::cout << "oracle/analytic max block deviation: "
                  << res.block_deviation << "\n";
    if (res.certificate.computed)
        std::cout << "convergence certificate: step " << res.certificate.step
                  << ", half-step deviation " << res.certificate.half_step_dev
                  << "\n";
    for (const auto& d : res.discrepancies)
        std::cout << "closed-form discrepancy: " << d.equation
                  << " first at omega_t " << d.first_time << ", max |delta| "
                  << d.max_delta << "\n";

    auto min_of = [&res](auto member) {
        double mn = 1e300;
        for (const auto& p : res.points)
            if (p.*member)
                mn = std::min(mn, *(p.*member));
        return mn;
    };
    if (res.points.front().fy_eq30)
        std::cout << "min Fy (with sigma_z term): "
                  << min_of(&qdx::ObservablePoint::fy_eq30) << "\n";
    if (res.points.front().s1)
        std::cout << "min s1: " << min_of(&qdx::ObservablePoint::s1) << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Dissipative dynamics of N Frenkel excitons dispersively coupled to a "
        "damped cavity mode"};
    app.require_subcommand(1);

    CliOptions run_opts;
    CLI::App* run_cmd = app.add_subcommand("run", "evaluate one configuration");
    add_common_flags(run_cmd, run_opts);

    CliOptions sweep_opts;
    std::string sweep_axis;
    std::vector<double> sweep_values;
    std::string sweep_dir = "sweep_out";
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "one run per value along a parameter axis");
    add_common_flags(sweep_cmd, sweep_opts);
    sweep_cmd->add_option("--axis", sweep_axis,
                          "N_total | n_excited | k_field | k_mol | alpha")
        ->required();
    sweep_cmd->add_option("--values", sweep_values, "axis values")
        ->expected(-1)
        ->delimiter(',');
    sweep_cmd->add_option("--out-dir", sweep_dir, "artifact directory");

    CliOptions val_opts;
    CLI::App* val_cmd =
        app.add_subcommand("validate", "analytic-vs-oracle validation report");
    add_common_flags(val_cmd, val_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            qdx::RunConfig cfg = build_config(run_opts, run_cmd);
            print_summary(cfg, qdx::run(cfg));
        } else if (sweep_cmd->parsed()) {
            qdx::RunConfig base = build_config(sweep_opts, sweep_cmd);
            qdx::SweepResult res = qdx::sweep(base, sweep_axis, sweep_values,
                                              sweep_dir);
            int failed = 0;
            for (const auto& p : res.points) {
                std::cout << sweep_axis << " = " << p.value << ": "
                          << (p.ok ? p.out_path : "FAILED: " + p.error) << "\n";
                if (!p.ok)
                    ++failed;
            }
            std::cout << "index: " << res.index_path << "\n";
            if (failed == static_cast<int>(res.points.size()))
                return 2;
        } else {
            qdx::RunConfig cfg = build_config(val_opts, val_cmd);
            qdx::ValidationReport rep = qdx::validate(cfg);
            std::cout << "block deviation:       " << rep.block_deviation << "\n"
                      << "observable deviation:  " << rep.max_observable_dev
                      << "\n"
                      << "max trace error:       " << rep.max_trace_err << "\n"
                      << "max Hermiticity error: " << rep.max_herm_err << "\n"
                      << "min eigenvalue:        " << rep.min_eigenvalue << "\n"
                      << "half-step deviation:   "
                      << rep.certificate.half_step_dev << "\n"
                      << (rep.passed ? "PASS" : "FAIL") << "\n";
            if (!rep.passed)
                return 3;
        }
    } catch (const qdx::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const qdx::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
