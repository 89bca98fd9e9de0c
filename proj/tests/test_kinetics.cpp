// =============================================================================
// kinetics: equilibrium probabilities, duration densities, correlation time
// =============================================================================

#include <catch_amalgamated.hpp>

#include <cmath>
#include <functional>
#include <random>

#include "ligandmc/kinetics.hpp"
#include "ligandmc/rng.hpp"

using namespace ligandmc;
using kinetics::LigandSpec;

namespace {

const LigandSpec kSignal{20.0, 10.0, kinetics::LigandRole::Signal};
const LigandSpec kInterferer{20.0, 50.0, kinetics::LigandRole::Interferer};

// Composite Simpson quadrature, the independent oracle for density integrals.
double simpson(double a, double b, int n, const std::function<double(double)>& f) {
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

}  // namespace

TEST_CASE("bound probability at the default operating point", "[kinetics]") {
    // c_s at 4 KD_s and c_in at 2 KD_in load the receptor to 6/7.
    const double c_s = 4.0 * kSignal.kd();
    const double c_in = 2.0 * kInterferer.kd();
    REQUIRE(kinetics::bound_probability(c_s, c_in, kSignal, kInterferer) ==
            Catch::Approx(6.0 / 7.0).epsilon(1e-12));

    REQUIRE(kinetics::bound_probability(0.0, 0.0, kSignal, kInterferer) == 0.0);
    REQUIRE(kinetics::bound_probability(kSignal.kd(), 0.0, kSignal, kInterferer) ==
            Catch::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("bound probability rejects invalid concentrations", "[kinetics]") {
    REQUIRE_THROWS_AS(kinetics::bound_probability(-1.0, 0.0, kSignal, kInterferer),
                      std::domain_error);
    REQUIRE_THROWS_AS(kinetics::bound_probability(0.0, std::nan(""), kSignal, kInterferer),
                      std::domain_error);
    LigandSpec bad = kSignal;
    bad.k_on = 0.0;
    REQUIRE_THROWS_AS(kinetics::bound_probability(1.0, 1.0, bad, kInterferer), std::domain_error);
}

TEST_CASE("bound probability stays below one and grows with load", "[kinetics][property]") {
    auto engine = rng::Stream(11).engine();
    std::uniform_real_distribution<double> conc(0.0, 50.0);
    for (int i = 0; i < 300; ++i) {
        const double c_s = conc(engine);
        const double c_in = conc(engine);
        const double p = kinetics::bound_probability(c_s, c_in, kSignal, kInterferer);
        REQUIRE(p >= 0.0);
        REQUIRE(p < 1.0);
        const double dp_s = kinetics::bound_probability(c_s + 0.5, c_in, kSignal, kInterferer);
        const double dp_in = kinetics::bound_probability(c_s, c_in + 0.5, kSignal, kInterferer);
        REQUIRE(dp_s > p);
        REQUIRE(dp_in > p);
    }
}

TEST_CASE("equilibrium distribution at the default operating point", "[kinetics]") {
    const auto eq = kinetics::equilibrium_distribution(4.0 * kSignal.kd(),
                                                       2.0 * kInterferer.kd(), kSignal,
                                                       kInterferer);
    REQUIRE(eq.p_unbound == Catch::Approx(1.0 / 7.0).epsilon(1e-12));
    REQUIRE(eq.p_bound_signal == Catch::Approx(4.0 / 7.0).epsilon(1e-12));
    REQUIRE(eq.p_bound_interferer == Catch::Approx(2.0 / 7.0).epsilon(1e-12));
}

TEST_CASE("equilibrium distribution limit cases", "[kinetics]") {
    const auto balanced = kinetics::equilibrium_distribution(kSignal.kd(), 0.0, kSignal,
                                                             kInterferer);
    REQUIRE(balanced.p_unbound == Catch::Approx(0.5).epsilon(1e-12));
    REQUIRE(balanced.p_bound_signal == Catch::Approx(0.5).epsilon(1e-12));
    REQUIRE(balanced.p_bound_interferer == 0.0);

    const auto empty = kinetics::equilibrium_distribution(0.0, 0.0, kSignal, kInterferer);
    REQUIRE(empty.p_unbound == 1.0);
    REQUIRE(empty.p_bound_signal == 0.0);
    REQUIRE(empty.p_bound_interferer == 0.0);
}

TEST_CASE("equilibrium distribution is a distribution and matches bound probability",
          "[kinetics][property]") {
    auto engine = rng::Stream(12).engine();
    std::uniform_real_distribution<double> conc(0.0, 40.0);
    std::uniform_real_distribution<double> rate(0.5, 80.0);
    for (int i = 0; i < 300; ++i) {
        const LigandSpec s{rate(engine), rate(engine), kinetics::LigandRole::Signal};
        const LigandSpec in{rate(engine), rate(engine), kinetics::LigandRole::Interferer};
        const double c_s = conc(engine);
        const double c_in = conc(engine);
        const auto eq = kinetics::equilibrium_distribution(c_s, c_in, s, in);
        REQUIRE(eq.p_unbound >= 0.0);
        REQUIRE(eq.p_bound_signal >= 0.0);
        REQUIRE(eq.p_bound_interferer >= 0.0);
        const double total = eq.p_unbound + eq.p_bound_signal + eq.p_bound_interferer;
        REQUIRE(std::fabs(total - 1.0) < 1e-12);
        // The two derivations of the bound probability agree.
        REQUIRE(std::fabs(1.0 - eq.p_unbound - kinetics::bound_probability(c_s, c_in, s, in)) <
                1e-12);
    }
}

TEST_CASE("bound duration density pointwise values", "[kinetics]") {
    REQUIRE(kinetics::bound_duration_density(0.0, 1.0, kSignal, kInterferer) ==
            Catch::Approx(10.0).epsilon(1e-12));
    // Mixture weight 2/7 at the origin: (2/7) * 10 + (5/7) * 50.
    REQUIRE(kinetics::bound_duration_density(0.0, 2.0 / 7.0, kSignal, kInterferer) ==
            Catch::Approx(2.0 / 7.0 * 10.0 + 5.0 / 7.0 * 50.0).epsilon(1e-12));
    REQUIRE_THROWS_AS(kinetics::bound_duration_density(0.0, 1.5, kSignal, kInterferer),
                      std::domain_error);
    REQUIRE_THROWS_AS(kinetics::bound_duration_density(-0.1, 0.5, kSignal, kInterferer),
                      std::domain_error);
}

TEST_CASE("bound duration density integrates to one with the mixture mean",
          "[kinetics][property]") {
    auto engine = rng::Stream(13).engine();
    std::uniform_real_distribution<double> weight(0.0, 1.0);
    for (double alpha : {0.0, weight(engine), weight(engine), 1.0}) {
        const auto f = [&](double tau) {
            return kinetics::bound_duration_density(tau, alpha, kSignal, kInterferer);
        };
        // The slow component's tail mass beyond 6/k_off_s is below 1e-12.
        const double integral = simpson(0.0, 6.0, 40000, f);
        REQUIRE(std::fabs(integral - 1.0) < 1e-9);
        const auto tf = [&](double tau) { return tau * f(tau); };
        const double mean = simpson(0.0, 6.0, 40000, tf);
        const double expected = alpha / kSignal.k_off + (1.0 - alpha) / kInterferer.k_off;
        REQUIRE(mean == Catch::Approx(expected).epsilon(1e-7));
    }
}

TEST_CASE("correlation time", "[kinetics]") {
    REQUIRE(kinetics::correlation_time(0.0, 20.0, 10.0) == Catch::Approx(0.1).epsilon(1e-12));
    REQUIRE(kinetics::correlation_time(7.0, 20.0, 10.0) ==
            Catch::Approx(1.0 / 150.0).epsilon(1e-12));
    // With no unbinding the time halves when the concentration doubles.
    const double tau1 = kinetics::correlation_time(3.0, 20.0, 0.0);
    const double tau2 = kinetics::correlation_time(6.0, 20.0, 0.0);
    REQUIRE(tau1 == Catch::Approx(2.0 * tau2).epsilon(1e-12));
    REQUIRE_THROWS_AS(kinetics::correlation_time(0.0, 20.0, 0.0), std::domain_error);
}
