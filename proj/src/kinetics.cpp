#include "ligandmc/kinetics.hpp"

#include <cmath>
#include <stdexcept>

namespace ligandmc::kinetics {

namespace {

void check_concentration(double c, const char* name) {
    if (!std::isfinite(c) || c < 0.0) {
        throw std::domain_error(std::string(name) + " must be finite and nonnegative");
    }
}

}  // namespace

void LigandSpec::validate() const {
    if (!std::isfinite(k_on) || k_on <= 0.0) {
        throw std::domain_error("ligand k_on must be positive and finite");
    }
    if (!std::isfinite(k_off) || k_off <= 0.0) {
        throw std::domain_error("ligand k_off must be positive and finite");
    }
}

double bound_probability(double c_s, double c_in, const LigandSpec& spec_s,
                         const LigandSpec& spec_in) {
    check_concentration(c_s, "c_s");
    check_concentration(c_in, "c_in");
    spec_s.validate();
    spec_in.validate();
    const double load = c_s / spec_s.kd() + c_in / spec_in.kd();
    return load / (1.0 + load);
}

EquilibriumState equilibrium_distribution(double c_s, double c_in, const LigandSpec& spec_s,
                                          const LigandSpec& spec_in) {
    check_concentration(c_s, "c_s");
    check_concentration(c_in, "c_in");
    spec_s.validate();
    spec_in.validate();

    // Stationary solution of the three-state CTMP: transitions out of the
    // unbound state at c_s*k_on_s and c_in*k_on_in, back at the two k_off.
    const double denom = spec_s.k_on * spec_in.k_off * c_s +
                         spec_s.k_off * spec_in.k_on * c_in +
                         spec_s.k_off * spec_in.k_off;
    EquilibriumState eq;
    eq.p_unbound = spec_s.k_off * spec_in.k_off / denom;
    eq.p_bound_signal = spec_s.k_on * spec_in.k_off * c_s / denom;
    eq.p_bound_interferer = spec_s.k_off * spec_in.k_on * c_in / denom;
    return eq;
}

double bound_duration_density(double tau, double alpha_s, const LigandSpec& spec_s,
                              const LigandSpec& spec_in) {
    if (!std::isfinite(alpha_s) || alpha_s < 0.0 || alpha_s > 1.0) {
        throw std::domain_error("alpha_s must lie in [0, 1]");
    }
    if (!std::isfinite(tau) || tau < 0.0) {
        throw std::domain_error("tau must be finite and nonnegative");
    }
    spec_s.validate();
    spec_in.validate();
    return alpha_s * spec_s.k_off * std::exp(-spec_s.k_off * tau) +
           (1.0 - alpha_s) * spec_in.k_off * std::exp(-spec_in.k_off * tau);
}

double correlation_time(double c, double k_on, double k_off) {
    check_concentration(c, "c");
    if (!std::isfinite(k_on) || k_on < 0.0 || !std::isfinite(k_off) || k_off < 0.0) {
        throw std::domain_error("rates must be finite and nonnegative");
    }
    const double rate = c * k_on + k_off;
    if (rate <= 0.0) {
        throw std::domain_error("correlation time undefined: total transition rate is zero");
    }
    return 1.0 / rate;
}

}  // namespace ligandmc::kinetics
