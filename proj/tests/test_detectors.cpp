// =============================================================================
// detectors: optimal thresholds, decisions, analytic and Monte Carlo BEP
// =============================================================================

#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstring>

#include "ligandmc/detectors.hpp"
#include "ligandmc/errors.hpp"
#include "ligandmc/experiments.hpp"

using namespace ligandmc;
using detectors::StatisticKind;
using estimators::GaussianMoments;

namespace {

const std::array<StatisticKind, 4> kAllKinds{StatisticKind::BoundCount, StatisticKind::TotalConc,
                                             StatisticKind::Ratio, StatisticKind::SignalConc};

double normal_density(double x, const GaussianMoments& m) {
    return std::exp(-0.5 * (x - m.mean) * (x - m.mean) / m.variance) /
           std::sqrt(2.0 * M_PI * m.variance);
}

estimators::BinningScheme default_scheme() {
    const auto s = experiments::default_scenario();
    return estimators::build_binning(3.0, s.spec_s, s.spec_in);
}

// Bit-level equality of every numeric field (memcmp on the struct would read
// alignment padding).
bool models_identical(const detectors::DecisionModel& a, const detectors::DecisionModel& b) {
    const auto bits = [](double x) {
        std::uint64_t u;
        std::memcpy(&u, &x, sizeof u);
        return u;
    };
    return a.kind == b.kind && bits(a.bit0.mean) == bits(b.bit0.mean) &&
           bits(a.bit0.variance) == bits(b.bit0.variance) &&
           bits(a.bit1.mean) == bits(b.bit1.mean) &&
           bits(a.bit1.variance) == bits(b.bit1.variance) &&
           bits(a.threshold) == bits(b.threshold);
}

}  // namespace

TEST_CASE("optimal threshold limit cases", "[detectors]") {
    REQUIRE(detectors::optimal_threshold({0.0, 1.0}, {2.0, 1.0}) ==
            Catch::Approx(1.0).epsilon(1e-14));
    // Identical hypotheses: the limit rule returns the common mean.
    REQUIRE(detectors::optimal_threshold({1.5, 0.3}, {1.5, 0.3}) ==
            Catch::Approx(1.5).epsilon(1e-14));
    REQUIRE_THROWS_AS(detectors::optimal_threshold({0.0, 0.0}, {1.0, 1.0}), ConfigError);
}

TEST_CASE("threshold satisfies the equal-density identity for every default model",
          "[detectors]") {
    const auto scenario = experiments::default_scenario();
    const auto scheme = default_scheme();
    for (const auto kind : kAllKinds) {
        for (const auto model : {estimators::VarianceModel::ClosedForm,
                                 estimators::VarianceModel::ExactSum}) {
            const auto dm = detectors::build_decision_model(scenario, kind, scheme, model);
            const double d0 = normal_density(dm.threshold, dm.bit0);
            const double d1 = normal_density(dm.threshold, dm.bit1);
            REQUIRE(std::fabs(d0 - d1) <= 1e-9 * std::max(d0, d1));
            REQUIRE(dm.bit1.mean > dm.bit0.mean);
            REQUIRE(dm.threshold > dm.bit0.mean);
            REQUIRE(dm.threshold < dm.bit1.mean);
        }
    }
}

TEST_CASE("threshold equals the root-finding cross check", "[detectors]") {
    // Bisection on the log-density difference is the independent route.
    const auto scenario = experiments::default_scenario();
    const auto dm = detectors::build_decision_model(scenario, StatisticKind::BoundCount,
                                                    default_scheme());
    const auto diff = [&](double x) {
        return std::log(normal_density(x, dm.bit0)) - std::log(normal_density(x, dm.bit1));
    };
    double lo = dm.bit0.mean;
    double hi = dm.bit1.mean;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (diff(mid) > 0.0 ? lo : hi) = mid;
    }
    REQUIRE(dm.threshold == Catch::Approx(0.5 * (lo + hi)).epsilon(1e-10));
}

TEST_CASE("hard decisions", "[detectors]") {
    detectors::DecisionModel dm;
    dm.bit0 = {0.0, 1.0};
    dm.bit1 = {2.0, 1.0};
    dm.threshold = 1.0;
    REQUIRE(detectors::decide(2.0, dm) == 1);
    REQUIRE(detectors::decide(0.0, dm) == 0);
    // Exact tie goes to bit 0 by convention.
    REQUIRE(detectors::decide(1.0, dm) == 0);
}

TEST_CASE("analytic error probability", "[detectors]") {
    detectors::DecisionModel dm;
    dm.bit0 = {1.5, 0.3};
    dm.bit1 = {1.5, 0.3};
    dm.threshold = 1.5;
    REQUIRE(detectors::analytic_bep(dm) == Catch::Approx(0.5).epsilon(1e-14));

    dm.bit0 = {0.0, 1.0};
    dm.bit1 = {2.0, 1.0};
    dm.threshold = 1.0;
    REQUIRE(detectors::analytic_bep(dm) == Catch::Approx(0.15865525393145707).epsilon(1e-10));
}

TEST_CASE("optimal threshold is a local minimum of the error probability",
          "[detectors][property]") {
    const auto scenario = experiments::default_scenario();
    const auto scheme = default_scheme();
    for (const auto kind : kAllKinds) {
        auto dm = detectors::build_decision_model(scenario, kind, scheme);
        const double base = detectors::analytic_bep(dm);
        for (double factor : {0.9, 0.95, 1.05, 1.1}) {
            auto perturbed = dm;
            perturbed.threshold = dm.threshold * factor;
            REQUIRE(detectors::analytic_bep(perturbed) >= base - 1e-15);
        }
    }
}

TEST_CASE("error probability shrinks with the receptor count", "[detectors][property]") {
    const auto base = experiments::default_scenario();
    for (const auto kind : kAllKinds) {
        double previous = 1.0;
        for (long long n : {100LL, 1000LL, 10000LL, 100000LL}) {
            auto scenario = base;
            scenario.n_receptors = n;
            const auto scheme = default_scheme();
            const double bep = detectors::analytic_bep(
                detectors::build_decision_model(scenario, kind, scheme));
            REQUIRE(bep < previous);
            previous = bep;
        }
    }
}

TEST_CASE("total-concentration detector ignores the affinity ratio", "[detectors]") {
    // Concentrations and the interferer count stay fixed; only the interferer
    // unbinding rate moves.
    const auto base = experiments::default_scenario();
    const auto reference = detectors::build_decision_model(
        base, StatisticKind::TotalConc, estimators::build_binning(3.0, base.spec_s, base.spec_in));
    for (double eta : {0.05, 0.1, 0.2, 0.5, 0.9}) {
        auto scenario = base;
        scenario.spec_in.k_off = scenario.spec_s.k_off / eta;
        const auto scheme = estimators::build_binning(3.0, scenario.spec_s, scenario.spec_in);
        const auto dm = detectors::build_decision_model(scenario, StatisticKind::TotalConc,
                                                        scheme);
        REQUIRE(models_identical(dm, reference));
    }
}

TEST_CASE("monte carlo error rate approaches one half for indistinguishable bits",
          "[detectors][mc]") {
    auto scenario = experiments::default_scenario();
    scenario.n_receptors = 100;
    scenario.c_bit0 = scenario.c_bit1 * (1.0 - 1e-9);
    const auto r = detectors::monte_carlo_bep(scenario, StatisticKind::BoundCount,
                                              default_scheme(), 20000, rng::Stream(5));
    REQUIRE(std::fabs(r.mc_bep - 0.5) < 0.02);
    REQUIRE(r.analytic_bep == Catch::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("monte carlo confidence interval shrinks with trials", "[detectors][mc]") {
    auto scenario = experiments::default_scenario();
    scenario.n_receptors = 300;  // error rate high enough to measure quickly
    const auto small = detectors::monte_carlo_bep(scenario, StatisticKind::TotalConc,
                                                  default_scheme(), 4000, rng::Stream(6));
    const auto large = detectors::monte_carlo_bep(scenario, StatisticKind::TotalConc,
                                                  default_scheme(), 16000, rng::Stream(6));
    REQUIRE(small.mc_ci95 > 1.5 * large.mc_ci95);
    REQUIRE(large.mc_trials == 16000);
    REQUIRE_THROWS_AS(detectors::monte_carlo_bep(scenario, StatisticKind::TotalConc,
                                                 default_scheme(), 500, rng::Stream(6)),
                      ConfigError);
}

TEST_CASE("monte carlo error rate matches the analytic model", "[detectors][mc]") {
    const auto scenario = experiments::default_scenario();
    const auto scheme = default_scheme();
    for (const auto kind : kAllKinds) {
        const auto r = detectors::monte_carlo_bep(scenario, kind, scheme, 20000, rng::Stream(8));
        const double sigma =
            std::sqrt(r.analytic_bep * (1.0 - r.analytic_bep) / static_cast<double>(r.mc_trials));
        REQUIRE(std::fabs(r.mc_bep - r.analytic_bep) <=
                std::max(3.0 * sigma, 0.15 * r.analytic_bep));
    }
}

TEST_CASE("statistic draws agree between aggregated and per-receptor sampling",
          "[detectors][mc]") {
    auto scenario = experiments::default_scenario();
    scenario.n_receptors = 50;
    const auto scheme = default_scheme();

    const int n = 3000;
    std::vector<double> direct, assembled;
    auto engine = rng::Stream(9).engine();
    for (int i = 0; i < n; ++i) {
        direct.push_back(
            detectors::sample_statistic(scenario, StatisticKind::SignalConc, scheme, 0, engine));
    }
    for (int i = 0; i < n; ++i) {
        const auto obs = sampler::sample_symbol(scenario, 0, scheme.t1, rng::Stream(10).child(i));
        assembled.push_back(estimators::estimate_signal_concentration(
            obs.total_unbound_time, obs.bin_counts, scenario.n_receptors, scheme,
            scenario.spec_s.k_on));
    }
    std::sort(direct.begin(), direct.end());
    std::sort(assembled.begin(), assembled.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < direct.size() && j < assembled.size()) {
        if (direct[i] <= assembled[j]) ++i;
        else ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) - static_cast<double>(j)) / n);
    }
    REQUIRE(d < 1.628 * std::sqrt(2.0 / n));
}
