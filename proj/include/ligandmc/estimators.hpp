#pragma once

#include <array>
#include <functional>

#include "ligandmc/kinetics.hpp"
#include "ligandmc/sampler.hpp"

namespace ligandmc::estimators {

using Mat2 = std::array<std::array<double, 2>, 2>;

// Duration-bin partition used by the ratio estimator. Bound durations are
// split at t1 = nu / k_off_interferer into a short and a long bin; q maps
// concentration-ratio vectors [alpha_in, alpha_s] to bin probabilities and
// w = q^-1 inverts the first-moment equations.
struct BinningScheme {
    double nu = 0.0;
    double t1 = 0.0;
    Mat2 q{};  // column-stochastic: q[0][j] + q[1][j] = 1
    Mat2 w{};

    double w21() const { return w[1][0]; }  // weight of the short-bin count
    double w22() const { return w[1][1]; }  // weight of the long-bin count

    // Short/long bin probabilities for signal ratio alpha_s.
    std::array<double, 2> bin_probabilities(double alpha_s) const;
};

// Throws NumericError when the two unbinding rates coincide (q is singular
// and the bins carry no ratio information).
BinningScheme build_binning(double nu, const kinetics::LigandSpec& spec_s,
                            const kinetics::LigandSpec& spec_in);

// Unbiased total-concentration estimate from the summed unbound time:
// (n_samples - 1) / (k_on * total_unbound_time).
double estimate_total_concentration(long long n_samples, double total_unbound_time, double k_on);

// Method-of-moments signal concentration ratio from the two bin counts.
// Deliberately not clamped to [0, 1]: threshold detection is monotone in the
// raw statistic and clamping would distort its Gaussian moment model.
double estimate_concentration_ratio(const std::array<long long, 2>& bin_counts,
                                    long long n_samples, const BinningScheme& scheme);

// Product of the total-concentration and ratio estimators.
double estimate_signal_concentration(double total_unbound_time,
                                     const std::array<long long, 2>& bin_counts,
                                     long long n_samples, const BinningScheme& scheme,
                                     double k_on);

// Polynomial coefficients of the conditional ratio-estimator variance:
//   Var[alpha_hat | c_in] = (g1 c_in^2 + g2 c_in + g3) / (N (c_s + c_in)^2).
// Obtained by expanding the two-bin multinomial covariance quadratic in the
// interferer concentration; equality with ratio_variance_oracle is enforced
// by tests.
struct GammaCoefficients {
    double g1 = 0.0;
    double g2 = 0.0;
    double g3 = 0.0;
};

GammaCoefficients gamma_coefficients(double c_s, const BinningScheme& scheme);

// Independent route to the same variance: the explicit double sum over the
// bin-count covariance matrix, Cov[n_i, n_j] = N p_i (1 - p_i) on the
// diagonal and -N p_i p_j off it. Kept free of the closed-form coefficients
// so the two derivations check each other.
double ratio_variance_oracle(double c_s, long long n_in, double volume,
                             const BinningScheme& scheme, long long n_samples);

// Gaussian moment pairs for the four decision statistics.
struct GaussianMoments {
    double mean = 0.0;
    double variance = 0.0;
};

// Variance route for the statistics that have both an exact truncated-sum
// form and a closed Gaussian-integral approximation. ClosedForm is the
// default used by the error-probability curves.
enum class VarianceModel { ClosedForm, ExactSum };

// Bound-receptor count: Poisson mixture of conditional binomial moments.
GaussianMoments moments_nbr(const sampler::ChannelScenario& scenario, int bit);

// Total-concentration estimate.
GaussianMoments moments_ctot(const sampler::ChannelScenario& scenario, int bit,
                             VarianceModel model = VarianceModel::ClosedForm);

// Concentration-ratio estimate (truncated sums only).
GaussianMoments moments_alpha(const sampler::ChannelScenario& scenario, int bit,
                              const BinningScheme& scheme);

// Signal-concentration estimate.
GaussianMoments moments_cs(const sampler::ChannelScenario& scenario, int bit,
                           const BinningScheme& scheme,
                           VarianceModel model = VarianceModel::ClosedForm);

// Moment machinery generalized to an arbitrary column-stochastic response
// matrix in place of the exact bin partition, with the same inversion
// weights. Used for receptor hardware whose duration transduction only
// approximates the bins (kinetic proofreading).
GaussianMoments moments_ratio_response(const sampler::ChannelScenario& scenario, int bit,
                                       const Mat2& response, const BinningScheme& scheme);
GaussianMoments moments_cs_response(const sampler::ChannelScenario& scenario, int bit,
                                    const Mat2& response, const BinningScheme& scheme);

// Mass-normalized expectation of f under Poisson(mu), truncated per the
// convergence policy (window mu +- 12 sqrt(mu), extended until the last
// term's relative contribution drops below 1e-14).
double poisson_expectation(double mu, const std::function<double(long long)>& f);

}  // namespace ligandmc::estimators
