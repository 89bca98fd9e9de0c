#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ligandmc/kinetics.hpp"
#include "ligandmc/rng.hpp"

namespace ligandmc::sampler {

// One binary-CSK transmission setting: received signal concentrations per
// bit, interferer statistics, reception volume, receptor population.
struct ChannelScenario {
    double c_bit0 = 0.0;     // signal concentration for s = 0, um^-3
    double c_bit1 = 0.0;     // signal concentration for s = 1, um^-3
    double mean_c_in = 0.0;  // mean interferer concentration, um^-3
    double volume = 0.0;     // reception-space volume, um^3
    long long n_receptors = 0;
    kinetics::LigandSpec spec_s;
    kinetics::LigandSpec spec_in;

    double c_signal(int bit) const { return bit == 0 ? c_bit0 : c_bit1; }

    // Poisson mean for the interferer count, floor(mean_c_in * volume).
    long long mean_interferer_count() const;

    double c_total(int bit, long long n_in) const {
        return c_signal(bit) + static_cast<double>(n_in) / volume;
    }

    double alpha_signal(int bit, long long n_in) const {
        return c_signal(bit) / c_total(bit, n_in);
    }

    // Throws ConfigError unless 0 < c_bit0 < c_bit1, volume > 0,
    // n_receptors >= 3 and both ligand specs are valid.
    void validate() const;
};

// Per-symbol receptor statistics sampled at equilibrium. Each receptor
// contributes one complete unbound interval (summed into total_unbound_time)
// and one complete bound duration.
struct ReceptorObservation {
    long long n_bound = 0;
    double total_unbound_time = 0.0;
    std::vector<double> bound_durations;
    std::array<long long, 2> bin_counts{0, 0};  // durations <= t1, durations > t1
    long long n_in_realized = 0;
};

// Poisson draw of the interferer count with mean floor(mean_c_in * volume).
long long draw_interferer_count(double mean_c_in, double volume, rng::Xoshiro256pp& engine);

// Draws one symbol's observation: interferer count, bound-receptor count,
// total unbound time, and per-receptor bound durations classified by the time
// threshold t1. Substream layout: child(0) for the symbol-level draws,
// child(1 + i) for receptor i.
ReceptorObservation sample_symbol(const ChannelScenario& scenario, int bit, double t1,
                                  rng::Stream stream);

// Aggregated-law draws for the individual statistics. These are the exact
// per-symbol laws of the quantities sample_symbol assembles receptor by
// receptor (Binomial counts, Gamma sum of exponentials), usable when only one
// statistic is needed per symbol.
long long draw_bound_count(const ChannelScenario& scenario, int bit, long long n_in,
                           rng::Xoshiro256pp& engine);
double draw_total_unbound_time(const ChannelScenario& scenario, int bit, long long n_in,
                               rng::Xoshiro256pp& engine);
long long draw_short_bin_count(const ChannelScenario& scenario, int bit, long long n_in,
                               double t1, rng::Xoshiro256pp& engine);

// One receptor's continuous-time trajectory through the three-state binding
// CTMP, for validating the equilibrium sampling shortcut.
struct TrajectoryEvent {
    double start = 0.0;
    double duration = 0.0;
    bool bound = false;
    bool truncated = false;  // sojourn cut off at the simulation horizon
    kinetics::LigandRole ligand = kinetics::LigandRole::Signal;  // meaningful when bound
};

struct Trajectory {
    long long n_in_realized = 0;
    std::vector<TrajectoryEvent> events;

    double fraction_bound() const;
    std::vector<double> bound_durations() const;
};

Trajectory simulate_trajectory(const ChannelScenario& scenario, int bit, double duration,
                               rng::Stream stream);

}  // namespace ligandmc::sampler
