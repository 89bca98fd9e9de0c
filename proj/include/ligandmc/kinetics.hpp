#pragma once

#include <string>

namespace ligandmc::kinetics {

enum class LigandRole { Signal, Interferer };

// Kinetic constants of one molecule type. Canonical units: concentrations in
// molecules/um^3, k_on in um^3/s, k_off in 1/s.
struct LigandSpec {
    double k_on = 0.0;
    double k_off = 0.0;
    LigandRole label = LigandRole::Signal;

    double kd() const { return k_off / k_on; }

    // Throws std::domain_error unless both rates are positive and finite.
    void validate() const;
};

// Receptor-state probabilities of the three-state equilibrium (unbound,
// bound to signal, bound to interferer). Components sum to 1.
struct EquilibriumState {
    double p_unbound = 1.0;
    double p_bound_signal = 0.0;
    double p_bound_interferer = 0.0;

    double p_bound() const { return p_bound_signal + p_bound_interferer; }
};

// Equilibrium probability that a receptor is bound given signal and
// interferer concentrations:
//   (c_s/KD_s + c_in/KD_in) / (1 + c_s/KD_s + c_in/KD_in)
double bound_probability(double c_s, double c_in, const LigandSpec& spec_s,
                         const LigandSpec& spec_in);

// Full three-state equilibrium of the receptor CTMP.
EquilibriumState equilibrium_distribution(double c_s, double c_in, const LigandSpec& spec_s,
                                          const LigandSpec& spec_in);

// Density of one complete bound interval: a two-component exponential mixture
//   alpha_s * k_off_s * exp(-k_off_s tau) + (1-alpha_s) * k_off_in * exp(-k_off_in tau)
double bound_duration_density(double tau, double alpha_s, const LigandSpec& spec_s,
                              const LigandSpec& spec_in);

// Relaxation time of the binding reaction, 1/(c*k_on + k_off).
double correlation_time(double c, double k_on, double k_off);

}  // namespace ligandmc::kinetics
