#include "ligandmc/estimators.hpp"

#include <cfloat>
#include <cmath>
#include <stdexcept>

#include "ligandmc/errors.hpp"

namespace ligandmc::estimators {

namespace {

std::array<double, 2> response_probabilities(const Mat2& p_matrix, double alpha_s) {
    const double alpha_in = 1.0 - alpha_s;
    return {p_matrix[0][0] * alpha_in + p_matrix[0][1] * alpha_s,
            p_matrix[1][0] * alpha_in + p_matrix[1][1] * alpha_s};
}

// E[(w21 n_1 + w22 n_2)/N] for bin counts multinomial over probabilities p.
double ratio_mean_conditional(const BinningScheme& scheme, const std::array<double, 2>& p) {
    return scheme.w21() * p[0] + scheme.w22() * p[1];
}

// Var[(w21 n_1 + w22 n_2)/N]: diagonal N p_i (1-p_i), off-diagonal -N p_i p_j.
double ratio_variance_conditional(const BinningScheme& scheme, const std::array<double, 2>& p,
                                  long long n_samples) {
    const double w1 = scheme.w21();
    const double w2 = scheme.w22();
    const double quad = w1 * w1 * p[0] * (1.0 - p[0]) + w2 * w2 * p[1] * (1.0 - p[1]) -
                        2.0 * w1 * w2 * p[0] * p[1];
    return quad / static_cast<double>(n_samples);
}

}  // namespace

std::array<double, 2> BinningScheme::bin_probabilities(double alpha_s) const {
    return response_probabilities(q, alpha_s);
}

BinningScheme build_binning(double nu, const kinetics::LigandSpec& spec_s,
                            const kinetics::LigandSpec& spec_in) {
    if (!std::isfinite(nu) || nu <= 0.0) {
        throw std::domain_error("binning constant nu must be positive");
    }
    spec_s.validate();
    spec_in.validate();

    BinningScheme scheme;
    scheme.nu = nu;
    scheme.t1 = nu / spec_in.k_off;

    const double short_in = 1.0 - std::exp(-spec_in.k_off * scheme.t1);
    const double short_s = 1.0 - std::exp(-spec_s.k_off * scheme.t1);
    scheme.q[0][0] = short_in;
    scheme.q[0][1] = short_s;
    scheme.q[1][0] = 1.0 - short_in;
    scheme.q[1][1] = 1.0 - short_s;

    const double det = scheme.q[0][0] * scheme.q[1][1] - scheme.q[0][1] * scheme.q[1][0];
    if (std::fabs(det) < 1e-12) {
        throw NumericError(
            "bin partition is singular: ligand unbinding rates are indistinguishable");
    }
    scheme.w[0][0] = scheme.q[1][1] / det;
    scheme.w[0][1] = -scheme.q[0][1] / det;
    scheme.w[1][0] = -scheme.q[1][0] / det;
    scheme.w[1][1] = scheme.q[0][0] / det;
    return scheme;
}

double estimate_total_concentration(long long n_samples, double total_unbound_time, double k_on) {
    if (n_samples < 2) {
        throw ConfigError("total-concentration estimate requires at least 2 samples");
    }
    if (!(k_on > 0.0)) {
        throw ConfigError("k_on must be positive");
    }
    if (!(total_unbound_time > 0.0)) {
        throw NumericError("receiver saturated: total unbound time is zero");
    }
    return static_cast<double>(n_samples - 1) / (k_on * total_unbound_time);
}

double estimate_concentration_ratio(const std::array<long long, 2>& bin_counts,
                                    long long n_samples, const BinningScheme& scheme) {
    if (bin_counts[0] < 0 || bin_counts[1] < 0 || bin_counts[0] + bin_counts[1] > n_samples) {
        throw ConfigError("bin counts must be nonnegative and sum to at most n_samples");
    }
    return (scheme.w21() * static_cast<double>(bin_counts[0]) +
            scheme.w22() * static_cast<double>(bin_counts[1])) /
           static_cast<double>(n_samples);
}

double estimate_signal_concentration(double total_unbound_time,
                                     const std::array<long long, 2>& bin_counts,
                                     long long n_samples, const BinningScheme& scheme,
                                     double k_on) {
    return estimate_total_concentration(n_samples, total_unbound_time, k_on) *
           estimate_concentration_ratio(bin_counts, n_samples, scheme);
}

GammaCoefficients gamma_coefficients(double c_s, const BinningScheme& scheme) {
    if (!std::isfinite(c_s) || c_s < 0.0) {
        throw std::domain_error("c_s must be finite and nonnegative");
    }
    const double w1 = scheme.w21();
    const double w2 = scheme.w22();
    const double q11 = scheme.q[0][0];
    const double q12 = scheme.q[0][1];
    const double q21 = scheme.q[1][0];
    const double q22 = scheme.q[1][1];

    GammaCoefficients g;
    // Coefficients of the multinomial covariance quadratic
    //   N c_tot^2 Var[alpha_hat | c_in] = g1 c_in^2 + g2 c_in + g3
    // expanded in powers of c_in with bin probabilities (c_in q_i1 + c_s q_i2)/c_tot.
    // The cross terms in g2 carry factor -2 from the expansion of both
    // squared-probability products; ratio_variance_oracle is the independent
    // check of every sign here.
    g.g1 = w1 * w1 * q11 * (1.0 - q11) - 2.0 * w1 * w2 * q11 * q21 + w2 * w2 * q21 * (1.0 - q21);
    g.g2 = c_s * (w1 * w1 * (q11 + q12 - 2.0 * q11 * q12) + w2 * w2 * (q21 + q22 - 2.0 * q21 * q22) -
                  2.0 * w1 * w2 * (q11 * q22 + q12 * q21));
    g.g3 = c_s * c_s *
           (w1 * w1 * q12 * (1.0 - q12) - 2.0 * w1 * w2 * q12 * q22 + w2 * w2 * q22 * (1.0 - q22));
    return g;
}

double ratio_variance_oracle(double c_s, long long n_in, double volume,
                             const BinningScheme& scheme, long long n_samples) {
    if (!(volume > 0.0)) throw std::domain_error("volume must be positive");
    if (n_samples < 1) throw ConfigError("n_samples must be positive");
    const double c_in = static_cast<double>(n_in) / volume;
    const double c_tot = c_s + c_in;
    if (!(c_tot > 0.0)) throw std::domain_error("total concentration must be positive");

    const std::array<double, 2> p = scheme.bin_probabilities(c_s / c_tot);
    const std::array<double, 2> w2row{scheme.w21(), scheme.w22()};
    const double n = static_cast<double>(n_samples);

    double var = 0.0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const double cov = i == j ? n * p[i] * (1.0 - p[i]) : -n * p[i] * p[j];
            var += w2row[i] * w2row[j] * cov;
        }
    }
    return var / (n * n);
}

double poisson_expectation(double mu, const std::function<double(long long)>& f) {
    if (!std::isfinite(mu) || mu < 0.0) {
        throw std::domain_error("Poisson mean must be finite and nonnegative");
    }
    if (mu == 0.0) return f(0);

    const double sd = std::sqrt(mu);
    const long long window_lo = static_cast<long long>(std::max(0.0, std::floor(mu - 12.0 * sd)));
    const long long window_hi = static_cast<long long>(std::ceil(mu + 12.0 * sd));
    const long long hard_cap = window_hi + static_cast<long long>(10.0 * sd) + 1000;
    const long long mode = static_cast<long long>(std::floor(mu));

    const double pmf_mode =
        std::exp(static_cast<double>(mode) * std::log(mu) - mu - std::lgamma(static_cast<double>(mode) + 1.0));

    double sum = f(mode) * pmf_mode;
    double mass = pmf_mode;

    double pmf = pmf_mode;
    for (long long n = mode + 1;; ++n) {
        pmf *= mu / static_cast<double>(n);
        const double term = f(n) * pmf;
        sum += term;
        mass += pmf;
        if (n >= window_hi && std::fabs(term) < 1e-14 * (std::fabs(sum) + DBL_MIN) && pmf < 1e-14) {
            break;
        }
        if (n >= hard_cap) {
            throw NumericError("Poisson-mixture sum did not converge within the truncation cap");
        }
    }

    pmf = pmf_mode;
    for (long long n = mode; n > 0;) {
        pmf *= static_cast<double>(n) / mu;
        --n;
        const double term = f(n) * pmf;
        sum += term;
        mass += pmf;
        if (n <= window_lo && std::fabs(term) < 1e-14 * (std::fabs(sum) + DBL_MIN) && pmf < 1e-14) {
            break;
        }
    }
    return sum / mass;
}

GaussianMoments moments_nbr(const sampler::ChannelScenario& scenario, int bit) {
    scenario.validate();
    const double mu = static_cast<double>(scenario.mean_interferer_count());
    const double n_r = static_cast<double>(scenario.n_receptors);
    const double c_s = scenario.c_signal(bit);

    const auto p_bound = [&](long long n) {
        return kinetics::bound_probability(c_s, static_cast<double>(n) / scenario.volume,
                                           scenario.spec_s, scenario.spec_in);
    };

    GaussianMoments m;
    m.mean = poisson_expectation(mu, [&](long long n) { return n_r * p_bound(n); });
    m.variance = poisson_expectation(mu, [&](long long n) {
        const double p = p_bound(n);
        const double cond_mean = n_r * p;
        return n_r * p * (1.0 - p) + (cond_mean - m.mean) * (cond_mean - m.mean);
    });
    return m;
}

GaussianMoments moments_ctot(const sampler::ChannelScenario& scenario, int bit,
                             VarianceModel model) {
    scenario.validate();
    const double mu = static_cast<double>(scenario.mean_interferer_count());
    const double v = scenario.volume;
    const double c_s = scenario.c_signal(bit);
    const double n = static_cast<double>(scenario.n_receptors);

    GaussianMoments m;
    m.mean = c_s + mu / v;
    if (model == VarianceModel::ClosedForm) {
        m.variance = (c_s + mu / v) * (c_s + mu / v) / (n - 2.0) +
                     mu * (n - 1.0) / (v * v * (n - 2.0));
    } else {
        const double mean_sq = poisson_expectation(mu, [&](long long k) {
            const double c_tot = c_s + static_cast<double>(k) / v;
            return c_tot * c_tot;
        });
        const double spread = poisson_expectation(mu, [&](long long k) {
            const double c_tot = c_s + static_cast<double>(k) / v;
            return (c_tot - m.mean) * (c_tot - m.mean);
        });
        m.variance = mean_sq / (n - 2.0) + spread;
    }
    return m;
}

GaussianMoments moments_alpha(const sampler::ChannelScenario& scenario, int bit,
                              const BinningScheme& scheme) {
    scenario.validate();
    const double mu = static_cast<double>(scenario.mean_interferer_count());
    const double v = scenario.volume;
    const double c_s = scenario.c_signal(bit);
    const double n = static_cast<double>(scenario.n_receptors);
    const GammaCoefficients g = gamma_coefficients(c_s, scheme);

    GaussianMoments m;
    m.mean = poisson_expectation(mu, [&](long long k) {
        return c_s / (c_s + static_cast<double>(k) / v);
    });
    m.variance = poisson_expectation(mu, [&](long long k) {
        const double u = static_cast<double>(k) / v;
        const double c_tot = c_s + u;
        const double cond_var = (g.g1 * u * u + g.g2 * u + g.g3) / (n * c_tot * c_tot);
        const double cond_mean = c_s / c_tot;
        return cond_var + (cond_mean - m.mean) * (cond_mean - m.mean);
    });
    return m;
}

GaussianMoments moments_cs(const sampler::ChannelScenario& scenario, int bit,
                           const BinningScheme& scheme, VarianceModel model) {
    scenario.validate();
    const double mu = static_cast<double>(scenario.mean_interferer_count());
    const double v = scenario.volume;
    const double c_s = scenario.c_signal(bit);
    const double n = static_cast<double>(scenario.n_receptors);
    const GammaCoefficients g = gamma_coefficients(c_s, scheme);

    GaussianMoments m;
    m.mean = c_s;
    if (model == VarianceModel::ClosedForm) {
        const double u = mu / v;
        m.variance = (g.g1 * u * u + (g.g1 + g.g2) * u + g.g3 + c_s * c_s) / n;
    } else {
        m.variance = poisson_expectation(mu, [&](long long k) {
                         const double u = static_cast<double>(k) / v;
                         return g.g1 * u * u + g.g2 * u + g.g3 + c_s * c_s;
                     }) /
                     n;
    }
    return m;
}

GaussianMoments moments_ratio_response(const sampler::ChannelScenario& scenario, int bit,
                                       const Mat2& response, const BinningScheme& scheme) {
    scenario.validate();
    const double mu = static_cast<double>(scenario.mean_interferer_count());
    const double c_s = scenario.c_signal(bit);

    const auto cond_mean = [&](long long k) {
        const double alpha_s = c_s / (c_s + static_cast<double>(k) / scenario.volume);
        return ratio_mean_conditional(scheme, response_probabilities(response, alpha_s));
    };

    GaussianMoments m;
    m.mean = poisson_expectation(mu, cond_mean);
    m.variance = poisson_expectation(mu, [&](long long k) {
        const double alpha_s = c_s / (c_s + static_cast<double>(k) / scenario.volume);
        const auto p = response_probabilities(response, alpha_s);
        const double cm = ratio_mean_conditional(scheme, p);
        return ratio_variance_conditional(scheme, p, scenario.n_receptors) +
               (cm - m.mean) * (cm - m.mean);
    });
    return m;
}

GaussianMoments moments_cs_response(const sampler::ChannelScenario& scenario, int bit,
                                    const Mat2& response, const BinningScheme& scheme) {
    scenario.validate();
    const double mu = static_cast<double>(scenario.mean_interferer_count());
    const double c_s = scenario.c_signal(bit);
    const double n = static_cast<double>(scenario.n_receptors);

    const auto cond_mean = [&](long long k) {
        const double c_tot = c_s + static_cast<double>(k) / scenario.volume;
        const auto p = response_probabilities(response, c_s / c_tot);
        return c_tot * ratio_mean_conditional(scheme, p);
    };

    GaussianMoments m;
    m.mean = poisson_expectation(mu, cond_mean);
    m.variance = poisson_expectation(mu, [&](long long k) {
        const double c_tot = c_s + static_cast<double>(k) / scenario.volume;
        const auto p = response_probabilities(response, c_s / c_tot);
        const double cm = c_tot * ratio_mean_conditional(scheme, p);
        // Same large-sample pattern as the exact-partition variance: the
        // total-concentration estimator contributes cond_mean^2 / N.
        const double cond_var = c_tot * c_tot * ratio_variance_conditional(scheme, p, scenario.n_receptors) +
                                cm * cm / n;
        return cond_var + (cm - m.mean) * (cm - m.mean);
    });
    return m;
}

}  // namespace ligandmc::estimators
