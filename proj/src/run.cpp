#include "qdx/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qdx/errors.hpp"

namespace qdx {

namespace {

using json = nlohmann::json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    return buf;
}

std::string fmt_opt(const std::optional<double>& v) {
    return v ? fmt(*v) : std::string{};
}

ObservablePoint make_point(const DensityBlock& block, const RunConfig& cfg,
                           const DerivedCoefficients& coeffs,
                           const std::string& engine) {
    const SystemParams& p = cfg.params;
    const double t = block.time;
    ObservablePoint pt;
    pt.omega_t = t * p.omega_disp;
    pt.engine = engine;

    const Eigen::MatrixXcd total = total_density(block);
    pt.trace_err = std::abs(total.trace() - 1.0);
    pt.purity_total = (total * total).trace().real();

    if (cfg.observables.entropies) {
        EntropyTriple e = entropies_generic(block);
        pt.s_total = e.s_total;
        pt.s_field = e.s_field;
        pt.s_mol = e.s_mol;
    }
    const FieldOperator rho_f = reduced_field(block);
    if (cfg.observables.s1)
        pt.s1 = quadrature_s1_generic(rho_f, t, p.omega_0);
    if (cfg.observables.fy) {
        const Eigen::Matrix2cd rho_m = reduced_molecular(block);
        pt.fy_eq30 = dipole_fy_generic(rho_m, t, p.omega_eg, coeffs.b_coeff, true);
        pt.fy_eq31 = dipole_fy_generic(rho_m, t, p.omega_eg, coeffs.b_coeff, false);
    }
    if (cfg.observables.photon)
        pt.n_photon = mean_photon_number(rho_f);
    return pt;
}

void audit_point(const ObservablePoint& pt, const RunConfig& cfg,
                 const DerivedCoefficients& coeffs, ClosedFormAudit& audit) {
    const SystemParams& p = cfg.params;
    const double t = pt.omega_t / p.omega_disp;
    if (pt.s_total) {
        EntropyTriple c = entropy_closed_forms(p, coeffs, t);
        audit.observe("eq22", pt.omega_t, *pt.s_total, c.s_total);
        audit.observe("eq23", pt.omega_t, *pt.s_field, c.s_field);
        audit.observe("eq24", pt.omega_t, *pt.s_mol, c.s_mol);
    }
    if (pt.s1)
        audit.observe("eq28", pt.omega_t, *pt.s1,
                      quadrature_s1_closed_form(p, coeffs, t));
    if (pt.fy_eq31)
        audit.observe("eq31", pt.omega_t, *pt.fy_eq31,
                      dipole_fy_closed_form(p, coeffs, t));
}

double block_deviation(const DensityBlock& x, const DensityBlock& y) {
    double d = (x.ee - y.ee).cwiseAbs().maxCoeff();
    d = std::max(d, (x.eg - y.eg).cwiseAbs().maxCoeff());
    d = std::max(d, (x.ge - y.ge).cwiseAbs().maxCoeff());
    d = std::max(d, (x.gg - y.gg).cwiseAbs().maxCoeff());
    return d;
}

json config_json(const RunConfig& cfg, const DerivedCoefficients& coeffs,
                 int fock_dim) {
    const SystemParams& p = cfg.params;
    json j;
    j["n_total"] = p.n_total;
    j["n_excited"] = p.n_excited;
    j["m_ground"] = p.m_ground();
    j["omega_disp"] = p.omega_disp;
    j["omega_0"] = p.omega_0;
    j["omega_eg"] = p.omega_eg;
    j["k_field"] = p.k_field;
    j["k_mol"] = p.k_mol;
    j["alpha_re"] = p.alpha.real();
    j["alpha_im"] = p.alpha.imag();
    if (p.g_coupling)
        j["g_coupling"] = *p.g_coupling;
    if (p.delta_detuning)
        j["delta_detuning"] = *p.delta_detuning;
    j["q_param"] = coeffs.q_param;
    j["a_coeff"] = coeffs.a_coeff;
    j["b_coeff"] = coeffs.b_coeff;
    j["t_max"] = cfg.t_max;
    j["n_steps"] = cfg.n_steps;
    j["fock_dim"] = fock_dim;
    j["engine"] = cfg.engine == Engine::analytic
                      ? "analytic"
                      : (cfg.engine == Engine::oracle ? "oracle" : "both");
    if (!cfg.preset_name.empty())
        j["preset"] = cfg.preset_name;
    if (!cfg.preset_note.empty())
        j["preset_note"] = cfg.preset_note;
    return j;
}

} // namespace

ObservableSelection ObservableSelection::parse(const std::string& list) {
    if (list.empty() || list == "all")
        return {};
    ObservableSelection sel{false, false, false, false};
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "entropies")
            sel.entropies = true;
        else if (item == "s1")
            sel.s1 = true;
        else if (item == "Fy" || item == "fy")
            sel.fy = true;
        else if (item == "photon")
            sel.photon = true;
        else
            throw ConfigError("invalid config: unknown observable '" + item +
                              "'");
    }
    return sel;
}

int RunConfig::resolved_fock_dim() const {
    return fock_dim > 0 ? fock_dim : default_fock_dim(params.alpha);
}

double RunConfig::resolved_step(double a_coeff) const {
    if (step > 0.0)
        return step;
    return std::min(1e-3, 0.005 / std::max(1.0, a_coeff));
}

RunResult evaluate(const RunConfig& config) {
    const SystemParams& p = config.params;
    p.validate();
    if (config.n_steps < 1 || config.t_max <= 0.0)
        throw ConfigError("invalid config: time grid must be nonempty");
    const DerivedCoefficients coeffs = derive_coefficients(p);
    const FockSpace space(config.resolved_fock_dim());

    RunResult res;
    res.fock_dim = space.dim;
    res.validity = check_dispersive_validity(p);

    const double dt = config.t_max / config.n_steps / p.omega_disp;

    std::vector<DensityBlock> analytic_blocks;
    if (config.engine != Engine::oracle) {
        analytic_blocks.reserve(config.n_steps + 1);
        for (int i = 0; i <= config.n_steps; ++i)
            analytic_blocks.push_back(
                analytic_block(p, coeffs, space, i * dt));
    }

    IntegrationResult oracle;
    if (config.engine != Engine::analytic) {
        IntegratorConfig icfg;
        icfg.step = config.resolved_step(coeffs.a_coeff);
        icfg.t_max = config.t_max;
        icfg.fock_dim = space.dim;
        icfg.n_emit = config.n_steps;
        oracle = integrate(initial_block(p, space), p, coeffs, icfg);
        res.certificate = oracle.certificate;
    }

    ClosedFormAudit audit;
    for (const auto& b : analytic_blocks) {
        ObservablePoint pt = make_point(b, config, coeffs, "analytic");
        audit_point(pt, config, coeffs, audit);
        res.points.push_back(std::move(pt));
    }
    for (const auto& b : oracle.blocks)
        res.points.push_back(make_point(b, config, coeffs, "oracle"));
    res.discrepancies = audit.records();

    if (config.engine == Engine::both) {
        double dev = 0.0;
        for (size_t i = 0; i < analytic_blocks.size(); ++i)
            dev = std::max(dev,
                           block_deviation(analytic_blocks[i], oracle.blocks[i]));
        res.block_deviation = dev;
    }
    return res;
}

std::string format_csv(const std::vector<ObservablePoint>& points,
                       const ObservableSelection&) {
    std::string out =
        "omega_t,s_total,s_field,s_mol,s1,Fy_eq30,Fy_eq31,n_photon,"
        "trace_err,purity_total,engine\n";
    for (const auto& pt : points) {
        out += fmt(pt.omega_t);
        out += ',';
        out += fmt_opt(pt.s_total) + ',' + fmt_opt(pt.s_field) + ',' +
               fmt_opt(pt.s_mol) + ',' + fmt_opt(pt.s1) + ',' +
               fmt_opt(pt.fy_eq30) + ',' + fmt_opt(pt.fy_eq31) + ',' +
               fmt_opt(pt.n_photon) + ',';
        out += fmt(pt.trace_err);
        out += ',';
        out += fmt(pt.purity_total);
        out += ',';
        out += pt.engine;
        out += '\n';
    }
    return out;
}

void write_outputs(const RunConfig& config, const RunResult& result) {
    const DerivedCoefficients coeffs = derive_coefficients(config.params);

    if (config.format == OutputFormat::csv) {
        std::ofstream f(config.out_path);
        if (!f)
            throw ConfigError("cannot open output file " + config.out_path);
        f << format_csv(result.points, config.observables);
    } else {
        json rows = json::array();
        for (const auto& pt : result.points) {
            json r;
            r["omega_t"] = fmt(pt.omega_t);
            auto put = [&r](const char* key, const std::optional<double>& v) {
                if (v)
                    r[key] = fmt(*v);
                else
                    r[key] = nullptr;
            };
            put("s_total", pt.s_total);
            put("s_field", pt.s_field);
            put("s_mol", pt.s_mol);
            put("s1", pt.s1);
            put("Fy_eq30", pt.fy_eq30);
            put("Fy_eq31", pt.fy_eq31);
            put("n_photon", pt.n_photon);
            r["trace_err"] = fmt(pt.trace_err);
            r["purity_total"] = fmt(pt.purity_total);
            r["engine"] = pt.engine;
            rows.push_back(std::move(r));
        }
        std::ofstream f(config.out_path);
        if (!f)
            throw ConfigError("cannot open output file " + config.out_path);
        f << rows.dump(2) << "\n";
    }

    json meta;
    meta["config"] = config_json(config, coeffs, result.fock_dim);
    switch (result.validity.status) {
        case ValidityReport::Status::valid:
            meta["dispersive_validity"] = "valid";
            break;
        case ValidityReport::Status::violated:
            meta["dispersive_validity"] = "violated";
            break;
        default:
            meta["dispersive_validity"] = "unchecked";
    }
    if (result.validity.status != ValidityReport::Status::unchecked) {
        meta["dispersive_ratio"] = result.validity.ratio;
        meta["dispersive_bound"] = result.validity.bound;
    }
    if (result.certificate.computed) {
        meta["certificate"] = {{"step", result.certificate.step},
                               {"half_step_dev", result.certificate.half_step_dev}};
    }
    json disc = json::array();
    for (const auto& d : result.discrepancies)
        disc.push_back({{"equation", d.equation},
                        {"first_time", d.first_time},
                        {"max_delta", d.max_delta},
                        {"count", d.count}});
    meta["discrepancies"] = disc;
    if (result.block_deviation > 0.0)
        meta["block_deviation"] = result.block_deviation;

    std::ofstream mf(config.out_path + ".meta.json");
    if (!mf)
        throw ConfigError("cannot open metadata file " + config.out_path +
                          ".meta.json");
    mf << meta.dump(2) << "\n";
}

RunResult run(const RunConfig& config) {
    RunResult result = evaluate(config);
    write_outputs(config, result);
    return result;
}

SweepResult sweep(const RunConfig& base, const std::string& axis,
                  const std::vector<double>& values,
                  const std::string& out_dir) {
    if (values.empty())
        throw ConfigError("empty sweep");
    static const std::vector<std::string> axes = {
        "N_total", "n_excited", "k_field", "k_mol", "alpha"};
    if (std::find(axes.begin(), axes.end(), axis) == axes.end())
        throw ConfigError("invalid config: unknown sweep axis '" + axis + "'");

    std::filesystem::create_directories(out_dir);
    SweepResult res;
    for (double v : values) {
        RunConfig cfg = base;
        cfg.preset_name.clear();
        if (axis == "N_total") {
            const int n_new = static_cast<int>(std::lround(v));
            // keep the excited fraction of the base config
            const double frac =
                static_cast<double>(base.params.n_excited) / base.params.n_total;
            cfg.params.n_total = n_new;
            cfg.params.n_excited = std::clamp(
                static_cast<int>(std::lround(frac * n_new)), 1, n_new);
        } else if (axis == "n_excited") {
            cfg.params.n_excited = static_cast<int>(std::lround(v));
        } else if (axis == "k_field") {
            cfg.params.k_field = v;
        } else if (axis == "k_mol") {
            cfg.params.k_mol = v;
        } else {
            cfg.params.alpha = {v, 0.0};
        }
        std::ostringstream name;
        name << axis << "_" << v
             << (cfg.format == OutputFormat::csv ? ".csv" : ".json");
        cfg.out_path = (std::filesystem::path(out_dir) / name.str()).string();

        SweepPoint pt{v, cfg.out_path, true, ""};
        try {
            run(cfg);
        } catch (const std::exception& e) {
            pt.ok = false;
            pt.error = e.what();
        }
        res.points.push_back(std::move(pt));
    }

    json index = json::array();
    for (const auto& pt : res.points)
        index.push_back({{"value", pt.value},
                         {"path", pt.out_path},
                         {"ok", pt.ok},
                         {"error", pt.error}});
    res.index_path = (std::filesystem::path(out_dir) / "index.json").string();
    std::ofstream f(res.index_path);
    f << index.dump(2) << "\n";
    return res;
}

ValidationReport validate(const RunConfig& config_in) {
    RunConfig config = config_in;
    config.engine = Engine::both;
    const SystemParams& p = config.params;
    p.validate();
    const DerivedCoefficients coeffs = derive_coefficients(p);
    const FockSpace space(config.resolved_fock_dim());
    const double dt = config.t_max / config.n_steps / p.omega_disp;

    IntegratorConfig icfg;
    icfg.step = config.resolved_step(coeffs.a_coeff);
    icfg.t_max = config.t_max;
    icfg.fock_dim = space.dim;
    icfg.n_emit = config.n_steps;
    IntegrationResult oracle = integrate(initial_block(p, space), p, coeffs, icfg);

    ValidationReport rep;
    rep.certificate = oracle.certificate;
    rep.min_eigenvalue = 1.0;
    for (int i = 0; i <= config.n_steps; ++i) {
        const double t = i * dt;
        const DensityBlock an = analytic_block(p, coeffs, space, t);
        const DensityBlock& orc = oracle.blocks[i];
        rep.block_deviation =
            std::max(rep.block_deviation, block_deviation(an, orc));

        const Eigen::MatrixXcd total = total_density(an);
        rep.max_trace_err =
            std::max(rep.max_trace_err, std::abs(total.trace() - 1.0));
        rep.max_herm_err = std::max(
            rep.max_herm_err,
            (total - total.adjoint().eval()).cwiseAbs().maxCoeff());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
            0.5 * (total + total.adjoint().eval()), Eigen::EigenvaluesOnly);
        rep.min_eigenvalue =
            std::min(rep.min_eigenvalue, es.eigenvalues().minCoeff());

        ObservablePoint pa = make_point(an, config, coeffs, "analytic");
        ObservablePoint po = make_point(orc, config, coeffs, "oracle");
        auto dev = [&rep](const std::optional<double>& a,
                          const std::optional<double>& b) {
            if (a && b)
                rep.max_observable_dev =
                    std::max(rep.max_observable_dev, std::abs(*a - *b));
        };
        dev(pa.s_total, po.s_total);
        dev(pa.s_field, po.s_field);
        dev(pa.s_mol, po.s_mol);
        dev(pa.s1, po.s1);
        dev(pa.fy_eq30, po.fy_eq30);
        dev(pa.fy_eq31, po.fy_eq31);
        dev(pa.n_photon, po.n_photon);
    }

    rep.passed = rep.block_deviation <= 1e-6 && rep.max_observable_dev <= 1e-6 &&
                 rep.max_trace_err <= 1e-8 && rep.max_herm_err <= 1e-8 &&
                 rep.min_eigenvalue >= -1e-9 &&
                 rep.certificate.half_step_dev <= 1e-6;
    return rep;
}

} // namespace qdx
