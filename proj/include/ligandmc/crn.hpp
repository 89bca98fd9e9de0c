#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ligandmc/estimators.hpp"
#include "ligandmc/rng.hpp"
#include "ligandmc/sampler.hpp"

namespace ligandmc::crn {

// ---------------------------------------------------------------------------
// Reaction networks
// ---------------------------------------------------------------------------

struct Species {
    std::string name;
    double initial_count = 0.0;  // real-valued for ODE, integer-valued for SSA
};

// Rectangular activity window for pulsed generation reactions; the reaction
// rate is nonzero only for t in [start, start + width).
struct PulseTrigger {
    double start = 0.0;
    double width = 0.0;
};

struct Reaction {
    std::vector<int> reactants;  // species indices, unit stoichiometry each
    std::vector<int> products;
    double rate_constant = 0.0;
    std::optional<PulseTrigger> trigger;
};

struct ReactionNetwork {
    std::vector<Species> species;
    std::vector<Reaction> reactions;

    int add_species(const std::string& name, double initial_count);
    int index_of(const std::string& name) const;  // -1 when absent

    // Throws ConfigError on duplicate names, unknown indices, nonpositive
    // rates, or mass-action order above 2.
    void validate() const;

    // One reaction per line, "reactants -> products @ rate", with 0 for an
    // empty side. Rates use shortest round-trip formatting.
    std::string dump() const;
};

// ---------------------------------------------------------------------------
// Receptor designs
// ---------------------------------------------------------------------------

enum class ReceptorKind { DNBR, DRUT, DRBT, DRUBT };

const char* receptor_kind_name(ReceptorKind kind);

enum class Stimulus { LigandBinding, LigandUnbinding, ActivatorBinding, KprAdvance };

struct ReceptorState {
    std::string name;
    std::string emits_while_occupied;  // empty when the state is silent
    double emission_rate = 0.0;
};

struct ReceptorTransition {
    std::string from;
    std::string to;
    Stimulus stimulus = Stimulus::LigandBinding;
    double rate = 0.0;  // rate constant; binding transitions scale with concentration
    std::vector<std::string> emissions;
};

struct ReceptorDesign {
    ReceptorKind kind = ReceptorKind::DNBR;
    std::string initial_state;
    std::vector<ReceptorState> states;
    std::vector<ReceptorTransition> transitions;
    double kpr_beta = 0.0;  // KPR substate advance rate (DRBT/DRUBT)
    double s_rate = 0.0;    // S emission rate while actively unbound (DRUT/DRUBT)

    // Throws ConfigError if any state is unreachable from initial_state or a
    // transition references an unknown state.
    void validate() const;
};

// KPR substate advance rate beta = kappa / t1. kappa defaults to 3/5.
double kpr_rate(double t1, double kappa = 0.6);

// Receptor state machine for one detection method, with activation paths and
// the emission placement each design prescribes.
ReceptorDesign make_receptor_design(ReceptorKind kind, const kinetics::LigandSpec& spec_s,
                                    const kinetics::LigandSpec& spec_in, double activation_rate,
                                    double kpr_beta, double s_rate);

// ---------------------------------------------------------------------------
// Observation transduction
// ---------------------------------------------------------------------------

// Intracellular molecule counts produced by one symbol's receptor activity.
struct TransducedCounts {
    long long m = 0;   // bound-receptor tally (DNBR)
    long long s = 0;   // unbound-time encoding (DRUT/DRUBT)
    long long r = 0;   // independent-sample tally (DRUT/DRBT)
    long long d1 = 0;  // short-duration KPR emissions (DRBT/DRUBT)
    long long d2 = 0;  // long-duration KPR emissions
};

// Converts an observation into molecule counts: M per bound receptor
// (amplified), S at design.s_rate per second of unbound time, R per sample,
// and a stochastic D1/D2 split with P(D1 | tau) = exp(-beta tau) per bound
// duration.
TransducedCounts transduce_observation(const ReceptorDesign& design,
                                       const sampler::ReceptorObservation& observation,
                                       long long amplification, rng::Xoshiro256pp& engine);

// ---------------------------------------------------------------------------
// Detection networks
// ---------------------------------------------------------------------------

struct DetectorParams {
    double k_on = 0.0;
    double w21 = 0.0;  // production weight for D1 (sign decides Y vs anti-Y)
    double w22 = 0.0;  // production weight for D2
    double s_rate = 1.0;
    double y_gain = 1.0;             // proportional amplification of Y production
    double annihilation_rate = 1.0;  // Y + Ybar -> 0
};

// Computation network whose Y steady state realizes the detector's decision
// statistic. A negative inversion weight cannot be a mass-action production
// rate; it is realized as production of an antagonist species Ybar at the
// magnitude of the weight plus fast Y + Ybar annihilation, which pins the
// annihilation flux to the signed production term at steady state. For DNBR
// there is no computation stage and the network is the comparator itself.
ReactionNetwork build_network(const ReceptorDesign& design, const TransducedCounts& counts,
                              const DetectorParams& params, long long threshold_count = 0,
                              double comparator_rate = 1.0);

// Analytic steady state of the Y species for the computation networks.
double analytic_steady_state(ReceptorKind kind, const TransducedCounts& counts,
                             const DetectorParams& params);

// Standalone comparator network: statistic + X -> 0.
ReactionNetwork build_comparator(const std::string& statistic_species, double statistic_count,
                                 long long threshold_count, double comparator_rate);

// Threshold encoding for the comparator: floor keeps an integer statistic at
// amplification 1 in exact agreement with the threshold test, and stays
// within 1% of the target once the count reaches 100.
long long encode_threshold(double threshold, double gain);

// Activation-pulse machinery: A+ generated in a pulse at the activation time,
// A- in a pulse at the deactivation time, mutual degradation at rho.
struct ActivationParams {
    double psi_plus = 0.0;
    double psi_minus = 0.0;
    double rho = 0.0;
    double t_activate = 0.0;
    double t_deactivate = 0.0;
    double pulse_width = 0.0;
};

ActivationParams activation_defaults(const sampler::ChannelScenario& scenario);
ReactionNetwork build_activation_network(const ActivationParams& params);

// ---------------------------------------------------------------------------
// Dynamics
// ---------------------------------------------------------------------------

struct OdeResult {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    bool steady = false;
    double t_steady = 0.0;
    std::vector<double> steady_state;
};

// Adaptive explicit Runge-Kutta integration (Dormand-Prince) restarted at
// pulse boundaries. Steady state is declared when ||dn/dt|| < rel_tol ||n||;
// if t_end arrives first and require_steady is set, throws NumericError.
OdeResult integrate_ode(const ReactionNetwork& network, double t_end, double rel_tol = 1e-9,
                        bool require_steady = true);

struct SsaResult {
    std::vector<double> final_counts;
    long long n_events = 0;
    std::vector<double> times;                 // recorded event times
    std::vector<std::vector<double>> counts;   // recorded states
};

// Exact stochastic simulation (direct method): exponential waiting times,
// propensity-proportional reaction selection.
SsaResult simulate_ssa(const ReactionNetwork& network, double t_end, rng::Xoshiro256pp& engine,
                       bool record_trajectory = false);

// Final state of the annihilation comparator run to completion (each firing
// removes one of each species, so the absorbing state is the count surplus).
std::pair<double, double> comparator_completion(double n_y, double n_x);

// bit-1 when the surviving species is the statistic (Y outnumbered X), bit-0
// otherwise, including ties.
int comparator_decide(double n_y_final, double n_x_final);

// Duration-transduction response of the KPR split: column-stochastic matrix
// of P(D1/D2 | ligand type), the proofreading analogue of the exact bin
// partition.
estimators::Mat2 kpr_response(double beta, const kinetics::LigandSpec& spec_s,
                              const kinetics::LigandSpec& spec_in);

}  // namespace ligandmc::crn
