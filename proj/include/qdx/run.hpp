#pragma once

#include <string>
#include <vector>

#include "qdx/lindblad.hpp"
#include "qdx/observables.hpp"
#include "qdx/presets.hpp"

namespace qdx {

enum class Engine { analytic, oracle, both };
enum class OutputFormat { csv, json };

struct ObservableSelection {
    bool entropies = true;
    bool s1 = true;
    bool fy = true;
    bool photon = true;

    static ObservableSelection parse(const std::string& list);
};

/// Fully resolved configuration of one run.
struct RunConfig {
    SystemParams params;
    double t_max = 3.0;      // grid end, scaled units omega*t
    int n_steps = 3000;      // uniform grid omega*t_j = j * t_max / n_steps
    int fock_dim = 0;        // 0 = truncation rule default
    double step = 0.0;       // oracle RK4 target step; 0 = default rule
    Engine engine = Engine::analytic;
    ObservableSelection observables;
    OutputFormat format = OutputFormat::csv;
    std::string out_path = "run.csv";
    std::string preset_name;  // empty when fully explicit
    std::string preset_note;

    int resolved_fock_dim() const;
    double resolved_step(double a_coeff) const;
};

struct RunResult {
    std::vector<ObservablePoint> points;
    std::vector<DiscrepancyRecord> discrepancies;
    ConvergenceCertificate certificate;
    double block_deviation = 0.0;  // max |analytic - oracle|, engine=both only
    ValidityReport validity;
    int fock_dim = 0;
};

/// Evaluates one configuration and writes the observable table plus a
/// sidecar metadata record (<out>.meta.json). Output is deterministic for a
/// fixed resolved configuration.
RunResult run(const RunConfig& config);

/// Same evaluation without touching the filesystem.
RunResult evaluate(const RunConfig& config);

void write_outputs(const RunConfig& config, const RunResult& result);

std::string format_csv(const std::vector<ObservablePoint>& points,
                       const ObservableSelection& sel);

struct SweepPoint {
    double value;
    std::string out_path;
    bool ok;
    std::string error;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    std::string index_path;
};

/// One run() per value along `axis`; per-point failures are recorded in the
/// index and remaining points still execute.
SweepResult sweep(const RunConfig& base, const std::string& axis,
                  const std::vector<double>& values,
                  const std::string& out_dir);

struct ValidationReport {
    double block_deviation = 0.0;      // max |analytic - oracle| element-wise
    double max_observable_dev = 0.0;   // per-observable max |delta|
    double max_trace_err = 0.0;
    double max_herm_err = 0.0;
    double min_eigenvalue = 0.0;       // of assembled analytic total density
    ConvergenceCertificate certificate;
    bool passed = false;
};

/// Forces engine=both and checks every threshold: blocks <= 1e-6, observables
/// <= 1e-6, trace <= 1e-8, Hermiticity <= 1e-8, min eigenvalue >= -1e-9,
/// certificate <= 1e-6.
ValidationReport validate(const RunConfig& config);

} // namespace qdx
