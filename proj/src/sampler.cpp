#include "ligandmc/sampler.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "ligandmc/errors.hpp"

namespace ligandmc::sampler {

long long ChannelScenario::mean_interferer_count() const {
    return static_cast<long long>(std::floor(mean_c_in * volume));
}

void ChannelScenario::validate() const {
    try {
        spec_s.validate();
        spec_in.validate();
    } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
    }
    if (!std::isfinite(c_bit0) || !std::isfinite(c_bit1) || c_bit0 <= 0.0 || c_bit0 >= c_bit1) {
        throw ConfigError("CSK ordering requires 0 < c_bit0 < c_bit1");
    }
    if (!std::isfinite(volume) || volume <= 0.0) {
        throw ConfigError("reception volume must be positive");
    }
    if (n_receptors < 3) {
        throw ConfigError("n_receptors must be at least 3");
    }
    if (!std::isfinite(mean_c_in) || mean_c_in < 0.0) {
        throw ConfigError("mean_c_in must be nonnegative");
    }
}

long long draw_interferer_count(double mean_c_in, double volume, rng::Xoshiro256pp& engine) {
    if (!std::isfinite(mean_c_in) || mean_c_in < 0.0) {
        throw std::domain_error("mean_c_in must be nonnegative");
    }
    const double mean = std::floor(mean_c_in * volume);
    if (mean <= 0.0) return 0;
    std::poisson_distribution<long long> poisson(mean);
    return poisson(engine);
}

long long draw_bound_count(const ChannelScenario& scenario, int bit, long long n_in,
                           rng::Xoshiro256pp& engine) {
    const double c_in = static_cast<double>(n_in) / scenario.volume;
    const double p = kinetics::bound_probability(scenario.c_signal(bit), c_in, scenario.spec_s,
                                                 scenario.spec_in);
    std::binomial_distribution<long long> binomial(scenario.n_receptors, p);
    return binomial(engine);
}

double draw_total_unbound_time(const ChannelScenario& scenario, int bit, long long n_in,
                               rng::Xoshiro256pp& engine) {
    const double c_tot = scenario.c_total(bit, n_in);
    if (c_tot <= 0.0) {
        throw ConfigError("total ligand concentration is zero: unbound intervals undefined");
    }
    const double rate = scenario.spec_s.k_on * c_tot;
    // Sum of n_receptors iid Exp(rate) intervals.
    std::gamma_distribution<double> gamma(static_cast<double>(scenario.n_receptors), 1.0 / rate);
    return gamma(engine);
}

long long draw_short_bin_count(const ChannelScenario& scenario, int bit, long long n_in,
                               double t1, rng::Xoshiro256pp& engine) {
    const double alpha_s = scenario.alpha_signal(bit, n_in);
    const double p_short = alpha_s * (1.0 - std::exp(-scenario.spec_s.k_off * t1)) +
                           (1.0 - alpha_s) * (1.0 - std::exp(-scenario.spec_in.k_off * t1));
    std::binomial_distribution<long long> binomial(scenario.n_receptors, p_short);
    return binomial(engine);
}

ReceptorObservation sample_symbol(const ChannelScenario& scenario, int bit, double t1,
                                  rng::Stream stream) {
    scenario.validate();
    if (bit != 0 && bit != 1) throw ConfigError("bit must be 0 or 1");
    if (!(t1 > 0.0)) throw ConfigError("bin threshold t1 must be positive");

    ReceptorObservation obs;
    auto symbol_engine = stream.child(0).engine();
    obs.n_in_realized = draw_interferer_count(scenario.mean_c_in, scenario.volume, symbol_engine);

    const double c_tot = scenario.c_total(bit, obs.n_in_realized);
    if (c_tot <= 0.0) {
        throw ConfigError("total ligand concentration is zero: unbound intervals undefined");
    }
    obs.n_bound = draw_bound_count(scenario, bit, obs.n_in_realized, symbol_engine);

    const double alpha_s = scenario.alpha_signal(bit, obs.n_in_realized);
    const double unbound_rate = scenario.spec_s.k_on * c_tot;
    obs.bound_durations.resize(static_cast<std::size_t>(scenario.n_receptors));

    std::exponential_distribution<double> unbound(unbound_rate);
    std::exponential_distribution<double> bound_s(scenario.spec_s.k_off);
    std::exponential_distribution<double> bound_in(scenario.spec_in.k_off);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    for (long long i = 0; i < scenario.n_receptors; ++i) {
        auto engine = stream.child(1 + static_cast<std::uint64_t>(i)).engine();
        obs.total_unbound_time += unbound(engine);
        const double tau =
            uniform(engine) < alpha_s ? bound_s(engine) : bound_in(engine);
        obs.bound_durations[static_cast<std::size_t>(i)] = tau;
        ++obs.bin_counts[tau <= t1 ? 0 : 1];
    }
    return obs;
}

double Trajectory::fraction_bound() const {
    double bound_time = 0.0;
    double total = 0.0;
    for (const auto& ev : events) {
        total += ev.duration;
        if (ev.bound) bound_time += ev.duration;
    }
    return total > 0.0 ? bound_time / total : 0.0;
}

std::vector<double> Trajectory::bound_durations() const {
    std::vector<double> out;
    for (const auto& ev : events) {
        if (ev.bound && !ev.truncated) out.push_back(ev.duration);
    }
    return out;
}

Trajectory simulate_trajectory(const ChannelScenario& scenario, int bit, double duration,
                               rng::Stream stream) {
    scenario.validate();
    if (bit != 0 && bit != 1) throw ConfigError("bit must be 0 or 1");
    if (!(duration > 0.0)) throw ConfigError("duration must be positive");

    Trajectory traj;
    auto engine = stream.child(0).engine();
    traj.n_in_realized = draw_interferer_count(scenario.mean_c_in, scenario.volume, engine);

    const double c_s = scenario.c_signal(bit);
    const double c_in = static_cast<double>(traj.n_in_realized) / scenario.volume;
    const double rate_bind_s = scenario.spec_s.k_on * c_s;
    const double rate_bind_in = scenario.spec_in.k_on * c_in;
    const double rate_bind = rate_bind_s + rate_bind_in;
    if (rate_bind <= 0.0) {
        throw ConfigError("no ligands present: trajectory never leaves the unbound state");
    }

    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::exponential_distribution<double> unbound_wait(rate_bind);
    std::exponential_distribution<double> bound_wait_s(scenario.spec_s.k_off);
    std::exponential_distribution<double> bound_wait_in(scenario.spec_in.k_off);

    double t = 0.0;
    bool bound = false;
    kinetics::LigandRole ligand = kinetics::LigandRole::Signal;
    while (t < duration) {
        TrajectoryEvent ev;
        ev.start = t;
        ev.bound = bound;
        if (!bound) {
            ev.duration = unbound_wait(engine);
            ligand = uniform(engine) * rate_bind < rate_bind_s ? kinetics::LigandRole::Signal
                                                               : kinetics::LigandRole::Interferer;
        } else {
            ev.ligand = ligand;
            ev.duration = ligand == kinetics::LigandRole::Signal ? bound_wait_s(engine)
                                                                 : bound_wait_in(engine);
        }
        // Truncate the final sojourn at the horizon so occupancy fractions
        // integrate over exactly [0, duration].
        if (t + ev.duration > duration) {
            ev.duration = duration - t;
            ev.truncated = true;
        }
        t += ev.duration;
        traj.events.push_back(ev);
        bound = !bound;
    }
    return traj;
}

}  // namespace ligandmc::sampler
