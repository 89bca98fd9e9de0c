// =============================================================================
// sampler: per-symbol observations, aggregated-law draws, CTMP trajectories
// =============================================================================

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "ligandmc/errors.hpp"
#include "ligandmc/experiments.hpp"
#include "ligandmc/sampler.hpp"

using namespace ligandmc;
using sampler::ChannelScenario;

namespace {

ChannelScenario defaults() { return experiments::default_scenario(); }

ChannelScenario small_scenario(long long receptors) {
    ChannelScenario s = defaults();
    s.n_receptors = receptors;
    return s;
}

double default_t1() { return 3.0 / defaults().spec_in.k_off; }

// Two-sample Kolmogorov-Smirnov distance.
double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j]) ++i;
        else ++j;
        const double fa = static_cast<double>(i) / a.size();
        const double fb = static_cast<double>(j) / b.size();
        d = std::max(d, std::fabs(fa - fb));
    }
    return d;
}

}  // namespace

TEST_CASE("scenario validation", "[sampler]") {
    ChannelScenario s = defaults();
    REQUIRE_NOTHROW(s.validate());
    REQUIRE(s.mean_interferer_count() == 20000);

    ChannelScenario bad = s;
    bad.c_bit0 = bad.c_bit1;
    REQUIRE_THROWS_AS(bad.validate(), ConfigError);
    bad = s;
    bad.n_receptors = 2;
    REQUIRE_THROWS_AS(bad.validate(), ConfigError);
    bad = s;
    bad.volume = 0.0;
    REQUIRE_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("interferer count draws", "[sampler]") {
    auto engine = rng::Stream(21).engine();
    REQUIRE(sampler::draw_interferer_count(0.0, 4000.0, engine) == 0);

    // Sample mean over 1e5 draws within 3 sigma of the Poisson mean 20000.
    const long long n = 100000;
    double sum = 0.0;
    for (long long i = 0; i < n; ++i) {
        sum += static_cast<double>(sampler::draw_interferer_count(5.0, 4000.0, engine));
    }
    const double mean = sum / static_cast<double>(n);
    const double band = 3.0 * std::sqrt(20000.0 / static_cast<double>(n));
    REQUIRE(std::fabs(mean - 20000.0) < band);
}

TEST_CASE("sample_symbol structural invariants", "[sampler]") {
    const ChannelScenario s = small_scenario(500);
    const auto obs = sampler::sample_symbol(s, 0, default_t1(), rng::Stream(3));
    REQUIRE(obs.n_bound >= 0);
    REQUIRE(obs.n_bound <= s.n_receptors);
    REQUIRE(obs.total_unbound_time > 0.0);
    REQUIRE(obs.bound_durations.size() == 500);
    REQUIRE(obs.bin_counts[0] + obs.bin_counts[1] ==
            static_cast<long long>(obs.bound_durations.size()));
    for (double tau : obs.bound_durations) REQUIRE(tau > 0.0);
}

TEST_CASE("sample_symbol is reproducible and receptor substreams are independent",
          "[sampler][property]") {
    const ChannelScenario s = small_scenario(100);
    const auto a = sampler::sample_symbol(s, 1, default_t1(), rng::Stream(99).child(5));
    const auto b = sampler::sample_symbol(s, 1, default_t1(), rng::Stream(99).child(5));
    REQUIRE(a.n_bound == b.n_bound);
    REQUIRE(a.total_unbound_time == b.total_unbound_time);
    REQUIRE(a.bound_durations == b.bound_durations);

    // Neighboring receptors across many symbols: no cross-correlation.
    const int symbols = 2000;
    std::vector<double> r0, r1;
    for (int i = 0; i < symbols; ++i) {
        const auto obs = sampler::sample_symbol(s, 0, default_t1(), rng::Stream(7).child(i));
        r0.push_back(obs.bound_durations[0]);
        r1.push_back(obs.bound_durations[1]);
    }
    const double m0 = std::accumulate(r0.begin(), r0.end(), 0.0) / symbols;
    const double m1 = std::accumulate(r1.begin(), r1.end(), 0.0) / symbols;
    double cov = 0.0, v0 = 0.0, v1 = 0.0;
    for (int i = 0; i < symbols; ++i) {
        cov += (r0[i] - m0) * (r1[i] - m1);
        v0 += (r0[i] - m0) * (r0[i] - m0);
        v1 += (r1[i] - m1) * (r1[i] - m1);
    }
    const double corr = cov / std::sqrt(v0 * v1);
    REQUIRE(std::fabs(corr) < 3.0 / std::sqrt(static_cast<double>(symbols)));
}

TEST_CASE("unbound time matches the exponential-sum mean at fixed interference", "[sampler]") {
    // No interferers pins n_in = 0, so E[T_u] = N / (k_on c_s).
    ChannelScenario s = small_scenario(200);
    s.mean_c_in = 0.0;
    const int symbols = 400;
    double sum = 0.0;
    for (int i = 0; i < symbols; ++i) {
        sum += sampler::sample_symbol(s, 0, default_t1(), rng::Stream(31).child(i))
                   .total_unbound_time;
    }
    const double mean = sum / symbols;
    const double expected = static_cast<double>(s.n_receptors) / (s.spec_s.k_on * s.c_bit0);
    // Gamma(N, .) relative sd is 1/sqrt(N) per symbol.
    const double band = 3.0 * expected / std::sqrt(static_cast<double>(s.n_receptors) * symbols);
    REQUIRE(std::fabs(mean - expected) < band);
}

TEST_CASE("bound count is binomial at fixed interferer count", "[sampler][property]") {
    const ChannelScenario s = small_scenario(1000);
    const long long n_in = s.mean_interferer_count();
    const double p = kinetics::bound_probability(
        s.c_bit0, static_cast<double>(n_in) / s.volume, s.spec_s, s.spec_in);
    auto engine = rng::Stream(41).engine();
    const int draws = 6000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < draws; ++i) {
        const double x = static_cast<double>(sampler::draw_bound_count(s, 0, n_in, engine));
        sum += x;
        sum_sq += x * x;
    }
    const double mean = sum / draws;
    const double var = sum_sq / draws - mean * mean;
    const double n_r = static_cast<double>(s.n_receptors);
    const double expected_mean = n_r * p;
    const double expected_var = n_r * p * (1.0 - p);
    REQUIRE(std::fabs(mean - expected_mean) <
            3.0 * std::sqrt(expected_var / draws));
    // Sampling sd of a variance estimate is roughly var * sqrt(2/n).
    REQUIRE(std::fabs(var - expected_var) < 3.0 * expected_var * std::sqrt(2.0 / draws));
}

TEST_CASE("indistinguishable ligands put bin fractions on the partition column", "[sampler]") {
    ChannelScenario s = small_scenario(2000);
    s.spec_in = s.spec_s;
    s.spec_in.label = kinetics::LigandRole::Interferer;
    const double t1 = 0.06;
    long long short_total = 0;
    const int symbols = 50;
    for (int i = 0; i < symbols; ++i) {
        short_total +=
            sampler::sample_symbol(s, 0, t1, rng::Stream(51).child(i)).bin_counts[0];
    }
    const double fraction =
        static_cast<double>(short_total) / static_cast<double>(symbols * s.n_receptors);
    const double expected = 1.0 - std::exp(-s.spec_s.k_off * t1);
    REQUIRE(std::fabs(fraction - expected) <
            3.0 * std::sqrt(expected * (1.0 - expected) / (symbols * s.n_receptors)));
}

TEST_CASE("aggregated statistic draws follow the per-receptor law", "[sampler][property]") {
    const ChannelScenario s = small_scenario(50);
    const long long n_in = s.mean_interferer_count();
    auto engine = rng::Stream(61).engine();
    const int n = 4000;
    std::vector<double> aggregated, assembled;
    for (int i = 0; i < n; ++i) {
        aggregated.push_back(sampler::draw_total_unbound_time(s, 0, n_in, engine));
    }
    for (int i = 0; i < n; ++i) {
        assembled.push_back(
            sampler::sample_symbol(s, 0, default_t1(), rng::Stream(62).child(i))
                .total_unbound_time);
    }
    // Interferer spread is 0.7%, negligible against the KS resolution here.
    const double d = ks_two_sample(aggregated, assembled);
    REQUIRE(d < 1.628 * std::sqrt(2.0 / n));
}

TEST_CASE("trajectory reproduces the equilibrium occupancy", "[sampler][trajectory]") {
    ChannelScenario s = defaults();
    const double c_in_mean = static_cast<double>(s.mean_interferer_count()) / s.volume;
    const double tau_b = kinetics::correlation_time(s.c_bit0 + c_in_mean, s.spec_s.k_on,
                                                    s.spec_s.k_off);
    const auto traj = sampler::simulate_trajectory(s, 0, 1e4 * tau_b, rng::Stream(76));
    // Compare against the occupancy at the realized interferer count.
    const double c_in = static_cast<double>(traj.n_in_realized) / s.volume;
    const double p_bound = kinetics::bound_probability(s.c_bit0, c_in, s.spec_s, s.spec_in);
    REQUIRE(std::fabs(traj.fraction_bound() - p_bound) < 0.01 * p_bound);
}

TEST_CASE("trajectory bound durations match the exponential mixture", "[sampler][trajectory]") {
    ChannelScenario s = defaults();
    // Cycles last about 50 ms here, so 600 s gives > 1e4 binding events.
    const auto traj = sampler::simulate_trajectory(s, 0, 600.0, rng::Stream(72));
    const auto durations = traj.bound_durations();
    REQUIRE(durations.size() > 10000);

    const double c_in = static_cast<double>(traj.n_in_realized) / s.volume;
    const double alpha_s = s.c_bit0 / (s.c_bit0 + c_in);
    std::vector<double> sorted = durations;
    std::sort(sorted.begin(), sorted.end());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double cdf = alpha_s * (1.0 - std::exp(-s.spec_s.k_off * sorted[i])) +
                           (1.0 - alpha_s) * (1.0 - std::exp(-s.spec_in.k_off * sorted[i]));
        d = std::max(d, std::fabs((i + 1.0) / sorted.size() - cdf));
        d = std::max(d, std::fabs(static_cast<double>(i) / sorted.size() - cdf));
    }
    REQUIRE(d < 0.02);
}

TEST_CASE("trajectory and shortcut sampling agree on the duration law",
          "[sampler][trajectory][property]") {
    ChannelScenario s = small_scenario(100);
    const auto traj = sampler::simulate_trajectory(s, 0, 600.0, rng::Stream(73));
    std::vector<double> from_traj = traj.bound_durations();
    REQUIRE(from_traj.size() > 10000);
    from_traj.resize(10000);

    std::vector<double> from_sampler;
    for (int i = 0; static_cast<int>(from_sampler.size()) < 10000; ++i) {
        const auto obs = sampler::sample_symbol(s, 0, default_t1(), rng::Stream(74).child(i));
        from_sampler.insert(from_sampler.end(), obs.bound_durations.begin(),
                            obs.bound_durations.end());
    }
    from_sampler.resize(10000);

    // Two-sample KS at alpha = 0.01.
    const double d = ks_two_sample(from_traj, from_sampler);
    const double n = 10000.0;
    REQUIRE(d < 1.628 * std::sqrt(2.0 / n));
}

TEST_CASE("trajectory with no interferers binds only signal ligands", "[sampler][trajectory]") {
    ChannelScenario s = defaults();
    s.mean_c_in = 0.0;
    const auto traj = sampler::simulate_trajectory(s, 1, 20.0, rng::Stream(75));
    REQUIRE(traj.n_in_realized == 0);
    bool saw_bound = false;
    for (const auto& ev : traj.events) {
        if (ev.bound) {
            saw_bound = true;
            REQUIRE(ev.ligand == kinetics::LigandRole::Signal);
        }
    }
    REQUIRE(saw_bound);
}
