#pragma once

#include <cstdint>

#include "ligandmc/estimators.hpp"
#include "ligandmc/rng.hpp"
#include "ligandmc/sampler.hpp"

namespace ligandmc::detectors {

// The four decision statistics: bound-receptor count, total-concentration
// estimate, concentration-ratio estimate, signal-concentration estimate.
enum class StatisticKind { BoundCount, TotalConc, Ratio, SignalConc };

const char* statistic_name(StatisticKind kind);

struct DecisionModel {
    StatisticKind kind = StatisticKind::BoundCount;
    estimators::GaussianMoments bit0;
    estimators::GaussianMoments bit1;
    double threshold = 0.0;
};

struct BepResult {
    double analytic_bep = 0.0;
    double mc_bep = 0.0;
    long long mc_trials = 0;
    double mc_ci95 = 0.0;
};

// Minimum-error threshold between two Gaussian hypotheses with equal priors:
// the equal-density crossing between the means. Falls back to the midpoint
// when the variances coincide (the analytic limit of the closed form).
double optimal_threshold(const estimators::GaussianMoments& m0,
                         const estimators::GaussianMoments& m1);

DecisionModel build_decision_model(const sampler::ChannelScenario& scenario, StatisticKind kind,
                                   const estimators::BinningScheme& scheme,
                                   estimators::VarianceModel model =
                                       estimators::VarianceModel::ClosedForm);

// Hard decision: 1 above threshold, 0 below, 0 on an exact tie.
int decide(double statistic_value, const DecisionModel& model);

// (1/4)[erfc((lambda-mean0)/sqrt(2 v0)) + erfc((mean1-lambda)/sqrt(2 v1))]
double analytic_bep(const DecisionModel& model);

// Transmits equiprobable random bits, samples the chosen statistic per
// symbol, decides against the analytic threshold, and reports the error rate
// with a binomial 95% CI. Trials map to stream.child(trial), so the result is
// independent of any parallel execution order.
BepResult monte_carlo_bep(const sampler::ChannelScenario& scenario, StatisticKind kind,
                          const estimators::BinningScheme& scheme, long long trials,
                          rng::Stream stream,
                          estimators::VarianceModel model =
                              estimators::VarianceModel::ClosedForm);

// One statistic draw from the per-symbol sampling laws (shared by
// monte_carlo_bep and the validation harnesses).
double sample_statistic(const sampler::ChannelScenario& scenario, StatisticKind kind,
                        const estimators::BinningScheme& scheme, int bit,
                        rng::Xoshiro256pp& engine);

}  // namespace ligandmc::detectors
