#include "qdx/params.hpp"

#include <cmath>

#include "qdx/errors.hpp"

namespace qdx {

void SystemParams::validate() const {
    if (n_total < 1)
        throw ConfigError("invalid config: N_total must be >= 1");
    if (n_excited < 1)
        throw ConfigError("invalid config: n_excited must be >= 1");
    if (n_excited > n_total)
        throw ConfigError("invalid config: n_excited > N_total");
    if (omega_disp <= 0.0)
        throw ConfigError("invalid config: omega_disp must be positive");
    if (k_field < 0.0 || k_mol < 0.0)
        throw ConfigError("invalid config: dissipation constants must be >= 0");
    if (omega_0 < 0.0 || omega_eg < 0.0)
        throw ConfigError("invalid config: frequencies must be >= 0");
    if (g_coupling && delta_detuning) {
        if (*delta_detuning == 0.0)
            throw ConfigError("invalid config: delta_detuning must be nonzero");
        double implied = (*g_coupling) * (*g_coupling) / (*delta_detuning);
        if (std::abs(implied - omega_disp) > 1e-12 * std::abs(omega_disp))
            throw ConfigError(
                "invalid config: omega_disp != g^2/delta within 1e-12");
    }
}

DerivedCoefficients derive_coefficients(const SystemParams& params) {
    params.validate();
    const double n = params.n_excited;
    const double m = params.m_ground();
    DerivedCoefficients c;
    c.q_param = 1.0 - 2.0 / params.n_total;
    c.a_coeff = n * (m + 1.0);
    c.b_coeff = std::sqrt(c.a_coeff / params.n_total);
    return c;
}

ValidityReport check_dispersive_validity(const SystemParams& params) {
    ValidityReport r;
    if (!params.g_coupling || !params.delta_detuning) {
        r.status = ValidityReport::Status::unchecked;
        return r;
    }
    r.ratio = std::abs(*params.delta_detuning) / *params.g_coupling;
    r.bound = std::sqrt(std::norm(params.alpha) + 1.0);
    r.status = (r.ratio >= 10.0 * r.bound) ? ValidityReport::Status::valid
                                           : ValidityReport::Status::violated;
    return r;
}

} // namespace qdx
