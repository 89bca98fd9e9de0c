#include "ligandmc/crn.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <queue>
#include <random>
#include <set>

#include <boost/numeric/odeint.hpp>

#include "ligandmc/errors.hpp"

namespace ligandmc::crn {

namespace {

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace

// ---------------------------------------------------------------------------
// ReactionNetwork
// ---------------------------------------------------------------------------

int ReactionNetwork::add_species(const std::string& name, double initial_count) {
    if (index_of(name) >= 0) {
        throw ConfigError("duplicate species name: " + name);
    }
    species.push_back({name, initial_count});
    return static_cast<int>(species.size()) - 1;
}

int ReactionNetwork::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < species.size(); ++i) {
        if (species[i].name == name) return static_cast<int>(i);
    }
    return -1;
}

void ReactionNetwork::validate() const {
    std::set<std::string> names;
    for (const auto& sp : species) {
        if (!names.insert(sp.name).second) {
            throw ConfigError("duplicate species name: " + sp.name);
        }
        if (!std::isfinite(sp.initial_count) || sp.initial_count < 0.0) {
            throw ConfigError("species " + sp.name + " has an invalid initial count");
        }
    }
    for (const auto& rx : reactions) {
        if (!std::isfinite(rx.rate_constant) || rx.rate_constant <= 0.0) {
            throw ConfigError("reaction rate constants must be positive");
        }
        if (rx.reactants.size() > 2) {
            throw ConfigError("mass-action order above 2 is not supported");
        }
        if (rx.reactants.size() == 2 && rx.reactants[0] == rx.reactants[1]) {
            throw ConfigError("homodimer reactions are not supported");
        }
        for (int idx : rx.reactants) {
            if (idx < 0 || idx >= static_cast<int>(species.size())) {
                throw ConfigError("reaction references an unknown reactant");
            }
        }
        for (int idx : rx.products) {
            if (idx < 0 || idx >= static_cast<int>(species.size())) {
                throw ConfigError("reaction references an unknown product");
            }
        }
    }
}

std::string ReactionNetwork::dump() const {
    std::string out;
    const auto side = [&](const std::vector<int>& terms) {
        if (terms.empty()) return std::string("0");
        std::string s;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            if (i > 0) s += " + ";
            s += species[static_cast<std::size_t>(terms[i])].name;
        }
        return s;
    };
    for (const auto& rx : reactions) {
        out += side(rx.reactants);
        out += " -> ";
        out += side(rx.products);
        out += " @ ";
        out += format_double(rx.rate_constant);
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Receptor designs
// ---------------------------------------------------------------------------

const char* receptor_kind_name(ReceptorKind kind) {
    switch (kind) {
        case ReceptorKind::DNBR: return "dnbr";
        case ReceptorKind::DRUT: return "drut";
        case ReceptorKind::DRBT: return "drbt";
        case ReceptorKind::DRUBT: return "drubt";
    }
    return "unknown";
}

void ReceptorDesign::validate() const {
    std::set<std::string> names;
    for (const auto& st : states) names.insert(st.name);
    if (names.size() != states.size()) throw ConfigError("duplicate receptor state names");
    if (!names.count(initial_state)) throw ConfigError("unknown initial receptor state");
    for (const auto& tr : transitions) {
        if (!names.count(tr.from) || !names.count(tr.to)) {
            throw ConfigError("receptor transition references an unknown state");
        }
    }
    // Every state must be reachable from the initial one.
    std::set<std::string> seen{initial_state};
    std::queue<std::string> frontier;
    frontier.push(initial_state);
    while (!frontier.empty()) {
        const std::string current = frontier.front();
        frontier.pop();
        for (const auto& tr : transitions) {
            if (tr.from == current && !seen.count(tr.to)) {
                seen.insert(tr.to);
                frontier.push(tr.to);
            }
        }
    }
    if (seen.size() != states.size()) {
        throw ConfigError("receptor design has unreachable states");
    }
}

double kpr_rate(double t1, double kappa) {
    if (!(t1 > 0.0)) throw ConfigError("KPR rate requires a positive time threshold");
    if (!(kappa >= 0.0)) throw ConfigError("KPR tuning parameter must be nonnegative");
    return kappa / t1;
}

ReceptorDesign make_receptor_design(ReceptorKind kind, const kinetics::LigandSpec& spec_s,
                                    const kinetics::LigandSpec& spec_in, double activation_rate,
                                    double kpr_beta, double s_rate) {
    spec_s.validate();
    spec_in.validate();
    const double k_on = spec_s.k_on;
    // Unbinding from a generic bound state; the realized rate depends on which
    // ligand is held, so the design records the slower (signal) constant.
    const double k_off = spec_s.k_off;

    ReceptorDesign d;
    d.kind = kind;
    d.kpr_beta = kpr_beta;
    d.s_rate = s_rate;

    switch (kind) {
        case ReceptorKind::DNBR:
            d.initial_state = "U";
            d.states = {{"U", "", 0.0}, {"B_I", "", 0.0}, {"B_A", "", 0.0}};
            d.transitions = {
                {"U", "B_I", Stimulus::LigandBinding, k_on, {}},
                {"B_I", "U", Stimulus::LigandUnbinding, k_off, {}},
                {"B_I", "B_A", Stimulus::ActivatorBinding, activation_rate, {}},
                {"B_A", "U", Stimulus::LigandUnbinding, k_off, {"M"}},
            };
            break;
        case ReceptorKind::DRUT:
            d.initial_state = "U_I";
            d.states = {{"U_I", "", 0.0}, {"U_A*", "", 0.0}, {"U_A", "S", s_rate},
                        {"B_I", "", 0.0}, {"B_A", "", 0.0}};
            d.transitions = {
                {"U_I", "U_A*", Stimulus::ActivatorBinding, activation_rate, {}},
                {"U_A*", "B_A", Stimulus::LigandBinding, k_on, {}},
                {"B_I", "B_A", Stimulus::ActivatorBinding, activation_rate, {}},
                {"B_A", "U_A", Stimulus::LigandUnbinding, k_off, {}},
                {"U_A", "B_I", Stimulus::LigandBinding, k_on, {"R"}},
                {"U_I", "B_I", Stimulus::LigandBinding, k_on, {}},
                {"B_I", "U_I", Stimulus::LigandUnbinding, k_off, {}},
            };
            break;
        case ReceptorKind::DRBT:
            d.initial_state = "U_I";
            d.states = {{"U_I", "", 0.0}, {"B_I", "", 0.0}, {"B_A*", "", 0.0},
                        {"U_A", "", 0.0}, {"B_A1", "", 0.0}, {"B_A2", "", 0.0}};
            d.transitions = {
                {"U_I", "U_A", Stimulus::ActivatorBinding, activation_rate, {}},
                {"B_I", "B_A*", Stimulus::ActivatorBinding, activation_rate, {}},
                {"B_A*", "U_A", Stimulus::LigandUnbinding, k_off, {}},
                {"U_A", "B_A1", Stimulus::LigandBinding, k_on, {}},
                {"B_A1", "B_A2", Stimulus::KprAdvance, kpr_beta, {}},
                {"B_A1", "U_I", Stimulus::LigandUnbinding, k_off, {"R", "D1"}},
                {"B_A2", "U_I", Stimulus::LigandUnbinding, k_off, {"R", "D2"}},
                {"U_I", "B_I", Stimulus::LigandBinding, k_on, {}},
                {"B_I", "U_I", Stimulus::LigandUnbinding, k_off, {}},
            };
            break;
        case ReceptorKind::DRUBT:
            d.initial_state = "U_I";
            d.states = {{"U_I", "", 0.0}, {"B_I", "", 0.0},  {"U_A*", "", 0.0},
                        {"B_A*", "", 0.0}, {"U_A", "S", s_rate}, {"B_A1", "", 0.0},
                        {"B_A2", "", 0.0}};
            d.transitions = {
                {"U_I", "U_A*", Stimulus::ActivatorBinding, activation_rate, {}},
                {"B_I", "B_A*", Stimulus::ActivatorBinding, activation_rate, {}},
                {"U_A*", "B_A*", Stimulus::LigandBinding, k_on, {}},
                {"B_A*", "U_A", Stimulus::LigandUnbinding, k_off, {}},
                {"U_A", "B_A1", Stimulus::LigandBinding, k_on, {}},
                {"B_A1", "B_A2", Stimulus::KprAdvance, kpr_beta, {}},
                {"B_A1", "U_I", Stimulus::LigandUnbinding, k_off, {"D1"}},
                {"B_A2", "U_I", Stimulus::LigandUnbinding, k_off, {"D2"}},
                {"U_I", "B_I", Stimulus::LigandBinding, k_on, {}},
                {"B_I", "U_I", Stimulus::LigandUnbinding, k_off, {}},
            };
            break;
    }
    d.validate();
    return d;
}

// ---------------------------------------------------------------------------
// Transduction
// ---------------------------------------------------------------------------

TransducedCounts transduce_observation(const ReceptorDesign& design,
                                       const sampler::ReceptorObservation& observation,
                                       long long amplification, rng::Xoshiro256pp& engine) {
    if (amplification < 1) throw ConfigError("amplification must be at least 1");
    TransducedCounts counts;
    const long long n_samples = static_cast<long long>(observation.bound_durations.size());
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    const auto kpr_split = [&] {
        for (double tau : observation.bound_durations) {
            // D1 when the KPR advance never fired during the bound interval.
            if (uniform(engine) < std::exp(-design.kpr_beta * tau)) {
                ++counts.d1;
            } else {
                ++counts.d2;
            }
        }
    };

    switch (design.kind) {
        case ReceptorKind::DNBR:
            counts.m = observation.n_bound * amplification;
            break;
        case ReceptorKind::DRUT:
            counts.s = std::llround(design.s_rate * observation.total_unbound_time);
            counts.r = n_samples;
            break;
        case ReceptorKind::DRBT:
            kpr_split();
            counts.r = n_samples;
            break;
        case ReceptorKind::DRUBT:
            counts.s = std::llround(design.s_rate * observation.total_unbound_time);
            kpr_split();
            break;
    }
    return counts;
}

// ---------------------------------------------------------------------------
// Detection networks
// ---------------------------------------------------------------------------

long long encode_threshold(double threshold, double gain) {
    if (!(threshold > 0.0) || !(gain > 0.0)) {
        throw ConfigError("threshold encoding requires positive threshold and gain");
    }
    return static_cast<long long>(std::floor(threshold * gain));
}

namespace {

// Signed Y production from a tally species: positive weights produce Y,
// negative weights produce the antagonist.
void add_signed_production(ReactionNetwork& net, int tally, int y, int ybar, double weight) {
    if (weight == 0.0) return;
    const int target = weight > 0.0 ? y : ybar;
    net.reactions.push_back({{tally}, {tally, target}, std::fabs(weight), std::nullopt});
}

}  // namespace

ReactionNetwork build_network(const ReceptorDesign& design, const TransducedCounts& counts,
                              const DetectorParams& params, long long threshold_count,
                              double comparator_rate) {
    ReactionNetwork net;
    switch (design.kind) {
        default:
            throw ConfigError("unknown receptor design");
        case ReceptorKind::DNBR: {
            const int m = net.add_species("M", static_cast<double>(counts.m));
            const int x = net.add_species("X", static_cast<double>(threshold_count));
            net.reactions.push_back({{m, x}, {}, comparator_rate, std::nullopt});
            break;
        }
        case ReceptorKind::DRUT: {
            const int y = net.add_species("Y", 0.0);
            const int r = net.add_species("R", static_cast<double>(counts.r));
            const int s = net.add_species("S", static_cast<double>(counts.s));
            net.reactions.push_back({{r}, {r, y}, params.y_gain, std::nullopt});
            net.reactions.push_back({{s, y}, {s}, params.k_on / params.s_rate, std::nullopt});
            break;
        }
        case ReceptorKind::DRBT: {
            const int y = net.add_species("Y", 0.0);
            const int ybar = net.add_species("Ybar", 0.0);
            const int d1 = net.add_species("D1", static_cast<double>(counts.d1));
            const int d2 = net.add_species("D2", static_cast<double>(counts.d2));
            const int r = net.add_species("R", static_cast<double>(counts.r));
            add_signed_production(net, d1, y, ybar, params.w21 * params.y_gain);
            add_signed_production(net, d2, y, ybar, params.w22 * params.y_gain);
            net.reactions.push_back({{y, ybar}, {}, params.annihilation_rate, std::nullopt});
            net.reactions.push_back({{r, y}, {r}, 1.0, std::nullopt});
            break;
        }
        case ReceptorKind::DRUBT: {
            const int y = net.add_species("Y", 0.0);
            const int ybar = net.add_species("Ybar", 0.0);
            const int d1 = net.add_species("D1", static_cast<double>(counts.d1));
            const int d2 = net.add_species("D2", static_cast<double>(counts.d2));
            const int s = net.add_species("S", static_cast<double>(counts.s));
            add_signed_production(net, d1, y, ybar, params.w21 * params.y_gain);
            add_signed_production(net, d2, y, ybar, params.w22 * params.y_gain);
            net.reactions.push_back({{y, ybar}, {}, params.annihilation_rate, std::nullopt});
            net.reactions.push_back({{s, y}, {s}, params.k_on / params.s_rate, std::nullopt});
            break;
        }
    }
    net.validate();
    return net;
}

double analytic_steady_state(ReceptorKind kind, const TransducedCounts& counts,
                             const DetectorParams& params) {
    const double d_weighted = params.y_gain * (params.w21 * static_cast<double>(counts.d1) +
                                               params.w22 * static_cast<double>(counts.d2));
    switch (kind) {
        case ReceptorKind::DNBR:
            return static_cast<double>(counts.m);
        case ReceptorKind::DRUT:
            return params.y_gain * static_cast<double>(counts.r) /
                   (params.k_on / params.s_rate * static_cast<double>(counts.s));
        case ReceptorKind::DRBT:
            return d_weighted / static_cast<double>(counts.r);
        case ReceptorKind::DRUBT:
            return d_weighted / (params.k_on / params.s_rate * static_cast<double>(counts.s));
    }
    throw ConfigError("unknown receptor design");
}

ReactionNetwork build_comparator(const std::string& statistic_species, double statistic_count,
                                 long long threshold_count, double comparator_rate) {
    ReactionNetwork net;
    const int y = net.add_species(statistic_species, statistic_count);
    const int x = net.add_species("X", static_cast<double>(threshold_count));
    net.reactions.push_back({{y, x}, {}, comparator_rate, std::nullopt});
    net.validate();
    return net;
}

ActivationParams activation_defaults(const sampler::ChannelScenario& scenario) {
    scenario.validate();
    const double c_peak = scenario.c_bit1 +
                          static_cast<double>(scenario.mean_interferer_count()) / scenario.volume;
    const double fastest = std::max({scenario.spec_s.k_on * c_peak, scenario.spec_s.k_off,
                                     scenario.spec_in.k_off});
    const double tau = kinetics::correlation_time(c_peak, scenario.spec_s.k_on,
                                                  scenario.spec_s.k_off);
    ActivationParams p;
    p.psi_plus = 1e3 * fastest;
    p.psi_minus = 1e3 * fastest;
    p.rho = 1e3 * fastest;
    p.pulse_width = 1e-3 * tau;
    p.t_activate = 0.0;
    p.t_deactivate = 10.0 * tau;
    return p;
}

ReactionNetwork build_activation_network(const ActivationParams& params) {
    ReactionNetwork net;
    const int a_plus = net.add_species("A+", 0.0);
    const int a_minus = net.add_species("A-", 0.0);
    net.reactions.push_back(
        {{}, {a_plus}, params.psi_plus, PulseTrigger{params.t_activate, params.pulse_width}});
    net.reactions.push_back(
        {{}, {a_minus}, params.psi_minus, PulseTrigger{params.t_deactivate, params.pulse_width}});
    net.reactions.push_back({{a_plus, a_minus}, {}, params.rho, std::nullopt});
    net.validate();
    return net;
}

// ---------------------------------------------------------------------------
// Dynamics
// ---------------------------------------------------------------------------

namespace {

using State = std::vector<double>;

double propensity(const Reaction& rx, const State& x, double t) {
    if (rx.trigger) {
        if (t < rx.trigger->start || t >= rx.trigger->start + rx.trigger->width) return 0.0;
    }
    double a = rx.rate_constant;
    for (int idx : rx.reactants) a *= x[static_cast<std::size_t>(idx)];
    return a;
}

struct NetworkOde {
    const ReactionNetwork& net;

    void operator()(const State& x, State& dxdt, double t) const {
        std::fill(dxdt.begin(), dxdt.end(), 0.0);
        for (const auto& rx : net.reactions) {
            const double flux = propensity(rx, x, t);
            if (flux == 0.0) continue;
            for (int idx : rx.reactants) dxdt[static_cast<std::size_t>(idx)] -= flux;
            for (int idx : rx.products) dxdt[static_cast<std::size_t>(idx)] += flux;
        }
    }
};

double norm2(const State& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

// Largest magnitude on the Jacobian diagonal: the stiffest local decay rate.
double max_diagonal_rate(const ReactionNetwork& net, const State& x, double t) {
    std::vector<double> diag(x.size(), 0.0);
    for (const auto& rx : net.reactions) {
        if (rx.trigger && (t < rx.trigger->start || t >= rx.trigger->start + rx.trigger->width)) {
            continue;
        }
        for (std::size_t i = 0; i < rx.reactants.size(); ++i) {
            const int sp = rx.reactants[i];
            double sensitivity = rx.rate_constant;
            for (std::size_t j = 0; j < rx.reactants.size(); ++j) {
                if (j != i) sensitivity *= x[static_cast<std::size_t>(rx.reactants[j])];
            }
            diag[static_cast<std::size_t>(sp)] -= sensitivity;
            for (int prod : rx.products) {
                if (prod == sp) diag[static_cast<std::size_t>(sp)] += sensitivity;
            }
        }
    }
    double m = 0.0;
    for (double d : diag) m = std::max(m, std::fabs(d));
    return m;
}

}  // namespace

OdeResult integrate_ode(const ReactionNetwork& network, double t_end, double rel_tol,
                        bool require_steady) {
    network.validate();
    if (!(t_end > 0.0)) throw ConfigError("t_end must be positive");

    State x(network.species.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = network.species[i].initial_count;

    // Integration restarts at pulse edges so the discontinuous rates never
    // sit inside a step.
    std::vector<double> breakpoints{0.0, t_end};
    for (const auto& rx : network.reactions) {
        if (!rx.trigger) continue;
        for (double edge : {rx.trigger->start, rx.trigger->start + rx.trigger->width}) {
            if (edge > 0.0 && edge < t_end) breakpoints.push_back(edge);
        }
    }
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());

    // A quiescent state ahead of a pending pulse is not a steady state.
    double last_trigger_end = 0.0;
    for (const auto& rx : network.reactions) {
        if (rx.trigger) {
            last_trigger_end = std::max(last_trigger_end, rx.trigger->start + rx.trigger->width);
        }
    }

    namespace odeint = boost::numeric::odeint;
    auto stepper = odeint::make_controlled(1e-12, rel_tol,
                                           odeint::runge_kutta_dopri5<State>());
    NetworkOde system{network};

    OdeResult result;
    result.times.push_back(0.0);
    result.states.push_back(x);

    State dxdt(x.size());
    long long steps = 0;
    for (std::size_t seg = 0; seg + 1 < breakpoints.size() && !result.steady; ++seg) {
        double t = breakpoints[seg];
        const double seg_end = breakpoints[seg + 1];
        double dt = std::min(1e-6 * t_end, seg_end - t);
        while (t < seg_end && seg_end - t > 1e-14 * t_end) {
            // Keeping h inside the explicit stability region makes the
            // plateau steps contract onto the fixed point instead of
            // hovering at the stability boundary with O(tol) error.
            const double rate = max_diagonal_rate(network, x, t);
            if (rate > 0.0) dt = std::min(dt, 2.0 / rate);
            dt = std::min(dt, seg_end - t);
            const auto outcome = stepper.try_step(system, x, t, dt);
            if (++steps > 50'000'000) {
                throw NumericError("ODE integration exceeded the step budget");
            }
            if (outcome == odeint::fail) continue;  // dt was shrunk, retry
            for (auto& v : x) {
                if (v < 0.0) {
                    if (v < -1e-6) throw NumericError("ODE state went negative");
                    v = 0.0;
                }
            }
            result.times.push_back(t);
            result.states.push_back(x);
            system(x, dxdt, t);
            if (t >= last_trigger_end && norm2(dxdt) < rel_tol * norm2(x) + 1e-12) {
                result.steady = true;
                result.t_steady = t;
                result.steady_state = x;
                break;
            }
        }
    }
    if (!result.steady) {
        if (require_steady) {
            throw NumericError("reaction network did not reach steady state before t_end");
        }
        result.steady_state = x;
        result.t_steady = t_end;
    }
    return result;
}

SsaResult simulate_ssa(const ReactionNetwork& network, double t_end, rng::Xoshiro256pp& engine,
                       bool record_trajectory) {
    network.validate();
    for (const auto& sp : network.species) {
        if (sp.initial_count != std::floor(sp.initial_count)) {
            throw ConfigError("SSA requires integer initial counts");
        }
    }

    State x(network.species.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = network.species[i].initial_count;

    SsaResult result;
    if (record_trajectory) {
        result.times.push_back(0.0);
        result.counts.push_back(x);
    }

    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::vector<double> a(network.reactions.size());
    const auto next_trigger_edge = [&](double now) {
        double edge_time = t_end;
        for (const auto& rx : network.reactions) {
            if (!rx.trigger) continue;
            for (double edge : {rx.trigger->start, rx.trigger->start + rx.trigger->width}) {
                if (edge > now && edge < edge_time) edge_time = edge;
            }
        }
        return edge_time;
    };
    double t = 0.0;
    while (true) {
        double total = 0.0;
        for (std::size_t r = 0; r < network.reactions.size(); ++r) {
            a[r] = propensity(network.reactions[r], x, t);
            total += a[r];
        }
        if (total <= 0.0) {
            // Quiescent now, but a pending pulse may reawaken the system.
            const double edge = next_trigger_edge(t);
            if (edge >= t_end) break;
            t = edge;
            continue;
        }
        const double wait = -std::log1p(-uniform(engine)) / total;
        // A pulsed rate may switch inside the waiting interval; stepping to
        // the next edge and redrawing keeps the process exact.
        const double next_edge = next_trigger_edge(t);
        if (t + wait > next_edge) {
            t = next_edge;
            if (t >= t_end) break;
            continue;
        }
        t += wait;
        if (t > t_end) break;

        double pick = uniform(engine) * total;
        std::size_t chosen = 0;
        for (; chosen + 1 < a.size(); ++chosen) {
            if (pick < a[chosen]) break;
            pick -= a[chosen];
        }
        const auto& rx = network.reactions[chosen];
        for (int idx : rx.reactants) x[static_cast<std::size_t>(idx)] -= 1.0;
        for (int idx : rx.products) x[static_cast<std::size_t>(idx)] += 1.0;
        ++result.n_events;
        if (record_trajectory) {
            result.times.push_back(t);
            result.counts.push_back(x);
        }
    }
    result.final_counts = x;
    return result;
}

std::pair<double, double> comparator_completion(double n_y, double n_x) {
    return {std::max(0.0, n_y - n_x), std::max(0.0, n_x - n_y)};
}

int comparator_decide(double n_y_final, double n_x_final) {
    return n_y_final > n_x_final ? 1 : 0;
}

estimators::Mat2 kpr_response(double beta, const kinetics::LigandSpec& spec_s,
                              const kinetics::LigandSpec& spec_in) {
    spec_s.validate();
    spec_in.validate();
    if (!(beta >= 0.0)) throw ConfigError("KPR rate must be nonnegative");
    // P(D1 | ligand) = E[exp(-beta tau)] for tau ~ Exp(k_off): k_off/(k_off+beta).
    estimators::Mat2 response{};
    response[0][0] = spec_in.k_off / (spec_in.k_off + beta);
    response[0][1] = spec_s.k_off / (spec_s.k_off + beta);
    response[1][0] = 1.0 - response[0][0];
    response[1][1] = 1.0 - response[0][1];
    return response;
}

}  // namespace ligandmc::crn
