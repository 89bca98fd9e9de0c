#include "ligandmc/detectors.hpp"

#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "ligandmc/errors.hpp"

namespace ligandmc::detectors {

const char* statistic_name(StatisticKind kind) {
    switch (kind) {
        case StatisticKind::BoundCount: return "dnbr";
        case StatisticKind::TotalConc: return "drut";
        case StatisticKind::Ratio: return "drbt";
        case StatisticKind::SignalConc: return "drubt";
    }
    return "unknown";
}

double optimal_threshold(const estimators::GaussianMoments& m0,
                         const estimators::GaussianMoments& m1) {
    if (!(m0.variance > 0.0) || !(m1.variance > 0.0)) {
        throw ConfigError("decision moments require positive variances");
    }
    const double v0 = m0.variance;
    const double v1 = m1.variance;
    const double gamma = v1 - v0;
    if (std::fabs(gamma) < 1e-12 * std::max(v0, v1)) {
        return 0.5 * (m0.mean + m1.mean);
    }
    const double s0 = std::sqrt(v0);
    const double s1 = std::sqrt(v1);
    const double diff = m1.mean - m0.mean;
    const double discriminant = diff * diff + 2.0 * gamma * std::log(s1 / s0);
    if (discriminant < 0.0) {
        throw NumericError("threshold discriminant is negative");
    }
    return (v1 * m0.mean - v0 * m1.mean + s1 * s0 * std::sqrt(discriminant)) / gamma;
}

DecisionModel build_decision_model(const sampler::ChannelScenario& scenario, StatisticKind kind,
                                   const estimators::BinningScheme& scheme,
                                   estimators::VarianceModel model) {
    DecisionModel dm;
    dm.kind = kind;
    switch (kind) {
        case StatisticKind::BoundCount:
            dm.bit0 = estimators::moments_nbr(scenario, 0);
            dm.bit1 = estimators::moments_nbr(scenario, 1);
            break;
        case StatisticKind::TotalConc:
            dm.bit0 = estimators::moments_ctot(scenario, 0, model);
            dm.bit1 = estimators::moments_ctot(scenario, 1, model);
            break;
        case StatisticKind::Ratio:
            dm.bit0 = estimators::moments_alpha(scenario, 0, scheme);
            dm.bit1 = estimators::moments_alpha(scenario, 1, scheme);
            break;
        case StatisticKind::SignalConc:
            dm.bit0 = estimators::moments_cs(scenario, 0, scheme, model);
            dm.bit1 = estimators::moments_cs(scenario, 1, scheme, model);
            break;
    }
    if (!(dm.bit1.mean > dm.bit0.mean)) {
        throw NumericError("decision model violates the CSK ordering mean1 > mean0");
    }
    dm.threshold = optimal_threshold(dm.bit0, dm.bit1);
    return dm;
}

int decide(double statistic_value, const DecisionModel& model) {
    return statistic_value > model.threshold ? 1 : 0;
}

double analytic_bep(const DecisionModel& model) {
    const double z0 = (model.threshold - model.bit0.mean) / std::sqrt(2.0 * model.bit0.variance);
    const double z1 = (model.bit1.mean - model.threshold) / std::sqrt(2.0 * model.bit1.variance);
    return 0.25 * (std::erfc(z0) + std::erfc(z1));
}

double sample_statistic(const sampler::ChannelScenario& scenario, StatisticKind kind,
                        const estimators::BinningScheme& scheme, int bit,
                        rng::Xoshiro256pp& engine) {
    const long long n_in =
        sampler::draw_interferer_count(scenario.mean_c_in, scenario.volume, engine);
    switch (kind) {
        case StatisticKind::BoundCount:
            return static_cast<double>(sampler::draw_bound_count(scenario, bit, n_in, engine));
        case StatisticKind::TotalConc: {
            const double t_u = sampler::draw_total_unbound_time(scenario, bit, n_in, engine);
            return estimators::estimate_total_concentration(scenario.n_receptors, t_u,
                                                            scenario.spec_s.k_on);
        }
        case StatisticKind::Ratio: {
            const long long short_count =
                sampler::draw_short_bin_count(scenario, bit, n_in, scheme.t1, engine);
            return estimators::estimate_concentration_ratio(
                {short_count, scenario.n_receptors - short_count}, scenario.n_receptors, scheme);
        }
        case StatisticKind::SignalConc: {
            const double t_u = sampler::draw_total_unbound_time(scenario, bit, n_in, engine);
            const long long short_count =
                sampler::draw_short_bin_count(scenario, bit, n_in, scheme.t1, engine);
            return estimators::estimate_signal_concentration(
                t_u, {short_count, scenario.n_receptors - short_count}, scenario.n_receptors,
                scheme, scenario.spec_s.k_on);
        }
    }
    throw ConfigError("unknown statistic kind");
}

BepResult monte_carlo_bep(const sampler::ChannelScenario& scenario, StatisticKind kind,
                          const estimators::BinningScheme& scheme, long long trials,
                          rng::Stream stream, estimators::VarianceModel model) {
    scenario.validate();
    if (trials < 1000) {
        throw ConfigError("monte_carlo_bep requires at least 1000 trials");
    }
    const DecisionModel dm = build_decision_model(scenario, kind, scheme, model);

    const auto count_errors = [&](long long begin, long long end) {
        long long errors = 0;
        for (long long trial = begin; trial < end; ++trial) {
            auto engine = stream.child(static_cast<std::uint64_t>(trial)).engine();
            const int bit = static_cast<int>(engine() & 1ULL);
            const double value = sample_statistic(scenario, kind, scheme, bit, engine);
            if (decide(value, dm) != bit) ++errors;
        }
        return errors;
    };

    // Fixed-size chunks reduced in index order: the error count is identical
    // for any worker count.
    const long long chunk_size = 4096;
    const long long n_chunks = (trials + chunk_size - 1) / chunk_size;
    std::vector<long long> partial(static_cast<std::size_t>(n_chunks), 0);
    std::atomic<long long> next_chunk{0};
    const auto drain_chunks = [&] {
        while (true) {
            const long long c = next_chunk.fetch_add(1);
            if (c >= n_chunks) break;
            const long long begin = c * chunk_size;
            partial[static_cast<std::size_t>(c)] =
                count_errors(begin, std::min(trials, begin + chunk_size));
        }
    };
    const unsigned workers =
        std::min({std::max(1u, std::thread::hardware_concurrency()),
                  static_cast<unsigned>(n_chunks), 16u});
    if (workers <= 1) {
        drain_chunks();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(drain_chunks);
        for (auto& worker : pool) worker.join();
    }
    long long errors = 0;
    for (long long p : partial) errors += p;

    BepResult result;
    result.analytic_bep = analytic_bep(dm);
    result.mc_trials = trials;
    result.mc_bep = static_cast<double>(errors) / static_cast<double>(trials);
    result.mc_ci95 =
        1.96 * std::sqrt(result.mc_bep * (1.0 - result.mc_bep) / static_cast<double>(trials));
    return result;
}

}  // namespace ligandmc::detectors
