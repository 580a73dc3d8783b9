#include "qdx/presets.hpp"

namespace qdx {

namespace {

SystemParams base_params(int n_total, int n_excited, double k, double kp) {
    SystemParams p;
    p.n_total = n_total;
    p.n_excited = n_excited;
    p.k_field = k;
    p.k_mol = kp;
    p.alpha = {1.0, 0.0};
    return p;
}

std::vector<Preset> build_table() {
    // Damping triples shared by the entropy / quadrature / dipole families:
    // a: k = k' = 0.05w, b: k = 0, k' = 0.05w, c: k = 0.05w, k' = 0.
    std::vector<Preset> t;
    const double d = 0.05;
    const std::string fig5_note =
        "B=1 realized with n=1, m=N-1 (n(m+1)=N for every N)";

    t.push_back({"fig1a", base_params(10, 5, d, d), 3.0, 3000, ""});
    t.push_back({"fig1b", base_params(10, 5, 0.0, d), 3.0, 3000, ""});
    t.push_back({"fig1c", base_params(10, 5, d, 0.0), 3.0, 3000, ""});
    t.push_back({"fig1d", base_params(1, 1, d, 0.0), 3.0, 3000,
                 "single molecule, A=B=1"});

    t.push_back({"fig2a", base_params(10, 5, d, d), 3.0, 3000, ""});
    t.push_back({"fig2b", base_params(10, 5, 0.0, d), 3.0, 3000, ""});
    t.push_back({"fig2c", base_params(10, 5, d, 0.0), 3.0, 3000, ""});

    t.push_back({"fig3a", base_params(10, 5, d, d), 50.0, 50000, ""});
    t.push_back({"fig3b", base_params(10, 5, 0.0, d), 50.0, 50000, ""});
    t.push_back({"fig3c", base_params(10, 5, d, 0.0), 50.0, 50000, ""});

    t.push_back({"fig4a", base_params(20, 10, d, d), 50.0, 50000, ""});
    t.push_back({"fig4b", base_params(50, 25, d, d), 50.0, 50000, ""});
    t.push_back({"fig4c", base_params(100, 50, d, d), 50.0, 50000, ""});

    t.push_back({"fig5a", base_params(1, 1, d, d), 50.0, 50000, fig5_note});
    t.push_back({"fig5b", base_params(10, 1, d, d), 50.0, 50000, fig5_note});
    t.push_back({"fig5c", base_params(100, 1, d, d), 50.0, 50000, fig5_note});

    t.push_back({"fig6a", base_params(30, 15, d, 0.0), 50.0, 50000, ""});
    t.push_back({"fig6b", base_params(100, 50, d, 0.0), 50.0, 50000, ""});
    return t;
}

} // namespace

const std::vector<Preset>& preset_table() {
    static const std::vector<Preset> table = build_table();
    return table;
}

std::optional<Preset> find_preset(const std::string& name) {
    for (const auto& p : preset_table())
        if (p.name == name)
            return p;
    return std::nullopt;
}

} // namespace qdx
