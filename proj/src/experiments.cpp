#include "ligandmc/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ligandmc/errors.hpp"

namespace ligandmc::experiments {

using detectors::StatisticKind;

sampler::ChannelScenario default_scenario() {
    sampler::ChannelScenario s;
    s.spec_s = {20.0, 10.0, kinetics::LigandRole::Signal};
    s.spec_in = {20.0, 50.0, kinetics::LigandRole::Interferer};
    s.c_bit0 = 4.0 * s.spec_s.kd();
    s.c_bit1 = 5.0 * s.spec_s.kd();
    s.mean_c_in = 2.0 * s.spec_in.kd();
    s.volume = 4000.0;
    s.n_receptors = 10000;
    return s;
}

// ---------------------------------------------------------------------------
// Formatting helpers
// ---------------------------------------------------------------------------

std::string format_number(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    (void)ec;
    return std::string(buf, ptr);
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << contents;
    if (!out) throw ConfigError("failed writing output file: " + path);
}

std::vector<double> linspace(double from, double to, int points) {
    if (points < 1) throw ConfigError("grid needs at least one point");
    std::vector<double> v;
    if (points == 1) {
        v.push_back(from);
        return v;
    }
    for (int i = 0; i < points; ++i) {
        v.push_back(from + (to - from) * static_cast<double>(i) / (points - 1));
    }
    return v;
}

std::vector<double> logspace(double from, double to, int points) {
    if (!(from > 0.0) || !(to > 0.0)) throw ConfigError("log grid endpoints must be positive");
    auto v = linspace(std::log(from), std::log(to), points);
    for (double& x : v) x = std::exp(x);
    return v;
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

const char* sweep_axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::InterfererConc: return "interferer_conc";
        case SweepAxis::AffinityRatio: return "affinity_ratio";
        case SweepAxis::Bit0Bit1Ratio: return "bit_ratio";
        case SweepAxis::ReceptorCount: return "receptor_count";
    }
    return "unknown";
}

SweepAxis parse_sweep_axis(const std::string& name) {
    std::string n = name;
    std::replace(n.begin(), n.end(), '-', '_');
    if (n == "interferer_conc") return SweepAxis::InterfererConc;
    if (n == "affinity_ratio") return SweepAxis::AffinityRatio;
    if (n == "bit_ratio") return SweepAxis::Bit0Bit1Ratio;
    if (n == "receptor_count") return SweepAxis::ReceptorCount;
    throw ConfigError("unknown sweep axis: " + name);
}

std::vector<StatisticKind> parse_detector_list(const std::string& csv) {
    std::vector<StatisticKind> kinds;
    std::stringstream ss(csv);
    std::string token;
    while (std::getline(ss, token, ',')) {
        token.erase(std::remove_if(token.begin(), token.end(), ::isspace), token.end());
        if (token.empty()) continue;
        if (token == "dnbr") kinds.push_back(StatisticKind::BoundCount);
        else if (token == "drut") kinds.push_back(StatisticKind::TotalConc);
        else if (token == "drbt") kinds.push_back(StatisticKind::Ratio);
        else if (token == "drubt") kinds.push_back(StatisticKind::SignalConc);
        else throw ConfigError("unknown detector: " + token);
    }
    if (kinds.empty()) throw ConfigError("detector list is empty");
    return kinds;
}

sampler::ChannelScenario apply_axis(const sampler::ChannelScenario& base, SweepAxis axis,
                                    double value) {
    sampler::ChannelScenario s = base;
    switch (axis) {
        case SweepAxis::InterfererConc:
            if (!(value > 0.0)) throw ConfigError("interferer concentration axis must be positive");
            s.mean_c_in = value * s.spec_in.kd();
            break;
        case SweepAxis::AffinityRatio:
            if (!(value > 0.0)) throw ConfigError("affinity ratio must be positive");
            // Signal unbinding stays at its default; interferer unbinding
            // follows the ratio. The absolute interferer concentration is
            // inherited from the base scenario.
            s.spec_in.k_off = s.spec_s.k_off / value;
            break;
        case SweepAxis::Bit0Bit1Ratio:
            if (!(value > 0.0) || !(value < 1.0)) {
                throw ConfigError("bit concentration ratio must lie in (0, 1)");
            }
            s.c_bit0 = value * s.c_bit1;
            break;
        case SweepAxis::ReceptorCount:
            s.n_receptors = std::llround(value);
            break;
    }
    s.validate();
    return s;
}

namespace {

void check_monotone(const std::vector<double>& values) {
    if (values.empty()) throw ConfigError("sweep needs at least one axis value");
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (!(values[i] > values[i - 1]) && !(values[i] < values[i - 1])) {
            throw ConfigError("sweep axis values must be strictly monotone");
        }
        const bool increasing = values[1] > values[0];
        if ((values[i] > values[i - 1]) != increasing) {
            throw ConfigError("sweep axis values must be strictly monotone");
        }
    }
}

nlohmann::json row_to_json(const SweepSpec& spec, const SweepRow& row) {
    nlohmann::json j;
    j["axis_value"] = row.axis_value;
    j["pb_s0"] = row.pb_s0;
    j["pb_s1"] = row.pb_s1;
    for (std::size_t d = 0; d < spec.detector_kinds.size(); ++d) {
        const auto& c = row.cells[d];
        nlohmann::json dj;
        dj["analytic_bep"] = c.analytic_bep;
        dj["mc_bep"] = c.mc_bep;
        dj["mc_ci95"] = c.mc_ci95;
        dj["threshold"] = c.threshold;
        dj["mean0"] = c.mean0;
        dj["var0"] = c.var0;
        dj["mean1"] = c.mean1;
        dj["var1"] = c.var1;
        j[detectors::statistic_name(spec.detector_kinds[d])] = dj;
    }
    return j;
}

std::string json_output_path(const std::string& csv_path) {
    if (csv_path.size() >= 4 && csv_path.substr(csv_path.size() - 4) == ".csv") {
        return csv_path.substr(0, csv_path.size() - 4) + ".json";
    }
    return csv_path + ".json";
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    spec.base.validate();
    check_monotone(spec.values);
    if (spec.detector_kinds.empty()) throw ConfigError("sweep requires at least one detector");
    if (spec.mc_trials < 0) throw ConfigError("mc_trials must be nonnegative");

    rng::Stream root(spec.seed);
    std::vector<SweepRow> rows;
    rows.reserve(spec.values.size());

    for (std::size_t i = 0; i < spec.values.size(); ++i) {
        const double value = spec.values[i];
        const sampler::ChannelScenario scenario = apply_axis(spec.base, spec.axis, value);
        const auto scheme = estimators::build_binning(spec.nu, scenario.spec_s, scenario.spec_in);

        SweepRow row;
        row.axis_value = value;
        const double c_in_mean =
            static_cast<double>(scenario.mean_interferer_count()) / scenario.volume;
        row.pb_s0 = kinetics::bound_probability(scenario.c_bit0, c_in_mean, scenario.spec_s,
                                                scenario.spec_in);
        row.pb_s1 = kinetics::bound_probability(scenario.c_bit1, c_in_mean, scenario.spec_s,
                                                scenario.spec_in);

        for (std::size_t d = 0; d < spec.detector_kinds.size(); ++d) {
            const StatisticKind kind = spec.detector_kinds[d];
            const auto model =
                detectors::build_decision_model(scenario, kind, scheme, spec.variance_model);
            DetectorCells cells;
            cells.threshold = model.threshold;
            cells.mean0 = model.bit0.mean;
            cells.var0 = model.bit0.variance;
            cells.mean1 = model.bit1.mean;
            cells.var1 = model.bit1.variance;
            cells.analytic_bep = detectors::analytic_bep(model);
            if (spec.mc_trials > 0) {
                const auto result = detectors::monte_carlo_bep(
                    scenario, kind, scheme, spec.mc_trials,
                    root.child(i).child(d), spec.variance_model);
                cells.mc_bep = result.mc_bep;
                cells.mc_ci95 = result.mc_ci95;
            } else {
                cells.mc_bep = std::nan("");
                cells.mc_ci95 = std::nan("");
            }
            row.cells.push_back(cells);
        }
        rows.push_back(std::move(row));
    }

    if (!spec.output_path.empty()) {
        write_text_file(spec.output_path, sweep_csv(spec, rows));
        if (spec.json_mirror) {
            nlohmann::json j = nlohmann::json::array();
            for (const auto& row : rows) j.push_back(row_to_json(spec, row));
            write_text_file(json_output_path(spec.output_path), j.dump(2) + "\n");
        }
    }
    return rows;
}

std::string sweep_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
    std::string out = "axis_value";
    for (const StatisticKind kind : spec.detector_kinds) {
        const std::string p = detectors::statistic_name(kind);
        for (const char* col : {"analytic_bep", "mc_bep", "mc_ci95", "threshold", "mean0", "var0",
                                "mean1", "var1"}) {
            out += "," + p + "_" + col;
        }
    }
    out += ",pb_s0,pb_s1\n";
    for (const auto& row : rows) {
        out += format_number(row.axis_value);
        for (const auto& c : row.cells) {
            for (double v : {c.analytic_bep, c.mc_bep, c.mc_ci95, c.threshold, c.mean0, c.var0,
                             c.mean1, c.var1}) {
                out += "," + format_number(v);
            }
        }
        out += "," + format_number(row.pb_s0) + "," + format_number(row.pb_s1) + "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Gaussian-approximation histograms
// ---------------------------------------------------------------------------

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double ks_vs_gaussian(std::vector<double> values, double mean, double sd) {
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double d = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double cdf = normal_cdf((values[i] - mean) / sd);
        d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - cdf));
        d = std::max(d, std::fabs(static_cast<double>(i) / n - cdf));
    }
    return d;
}

std::string histogram_csv(const std::vector<double>& values, double model_mean,
                          double model_variance, int bins) {
    const auto [mn_it, mx_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *mn_it;
    const double hi = *mx_it;
    const double width = (hi - lo) / bins;
    std::vector<long long> counts(static_cast<std::size_t>(bins), 0);
    for (double v : values) {
        int b = width > 0.0 ? static_cast<int>((v - lo) / width) : 0;
        b = std::clamp(b, 0, bins - 1);
        ++counts[static_cast<std::size_t>(b)];
    }
    const double n = static_cast<double>(values.size());
    const double sd = std::sqrt(model_variance);
    std::string out = "bin_left,bin_right,count,density,model_density\n";
    for (int b = 0; b < bins; ++b) {
        const double left = lo + b * width;
        const double right = left + width;
        const double center = 0.5 * (left + right);
        const double density = width > 0.0 ? counts[static_cast<std::size_t>(b)] / (n * width) : 0.0;
        const double model = std::exp(-0.5 * (center - model_mean) * (center - model_mean) /
                                      model_variance) /
                             (sd * std::sqrt(2.0 * M_PI));
        out += format_number(left) + "," + format_number(right) + "," +
               std::to_string(counts[static_cast<std::size_t>(b)]) + "," + format_number(density) +
               "," + format_number(model) + "\n";
    }
    return out;
}

}  // namespace

HistogramReport emit_histograms(const sampler::ChannelScenario& scenario, int bit,
                                long long iterations, const EstimatorConfig& est,
                                rng::Stream stream, const std::string& out_prefix,
                                bool json_mirror) {
    scenario.validate();
    if (iterations < 1000) throw ConfigError("histogram suite requires at least 1000 iterations");
    const auto scheme = estimators::build_binning(est.nu, scenario.spec_s, scenario.spec_in);

    const std::array<StatisticKind, 4> kinds{StatisticKind::BoundCount, StatisticKind::TotalConc,
                                             StatisticKind::Ratio, StatisticKind::SignalConc};
    std::array<std::vector<double>, 4> samples;
    for (auto& v : samples) v.reserve(static_cast<std::size_t>(iterations));

    for (long long it = 0; it < iterations; ++it) {
        const auto obs = sampler::sample_symbol(scenario, bit, scheme.t1, stream.child(
                                                    static_cast<std::uint64_t>(it)));
        samples[0].push_back(static_cast<double>(obs.n_bound));
        samples[1].push_back(estimators::estimate_total_concentration(
            scenario.n_receptors, obs.total_unbound_time, scenario.spec_s.k_on));
        samples[2].push_back(estimators::estimate_concentration_ratio(
            obs.bin_counts, scenario.n_receptors, scheme));
        samples[3].push_back(estimators::estimate_signal_concentration(
            obs.total_unbound_time, obs.bin_counts, scenario.n_receptors, scheme,
            scenario.spec_s.k_on));
    }

    HistogramReport report;
    report.iterations = iterations;
    for (std::size_t k = 0; k < kinds.size(); ++k) {
        StatisticSummary s;
        s.kind = kinds[k];
        const auto& v = samples[k];
        const double n = static_cast<double>(v.size());
        double mean = 0.0;
        for (double x : v) mean += x;
        mean /= n;
        double m2 = 0.0;
        double m4 = 0.0;
        for (double x : v) {
            const double d = x - mean;
            m2 += d * d;
            m4 += d * d * d * d;
        }
        const double var = m2 / (n - 1.0);
        m4 /= n;
        s.empirical_mean = mean;
        s.empirical_variance = var;
        s.se_mean = std::sqrt(var / n);
        s.se_variance = std::sqrt(std::max(0.0, m4 - var * var) / n);

        // Exact-sum variances: the histogram compares against the model law
        // itself, not the Gaussian-integral shortcut used by the BEP curves.
        estimators::GaussianMoments m;
        switch (kinds[k]) {
            case StatisticKind::BoundCount:
                m = estimators::moments_nbr(scenario, bit);
                break;
            case StatisticKind::TotalConc:
                m = estimators::moments_ctot(scenario, bit, estimators::VarianceModel::ExactSum);
                break;
            case StatisticKind::Ratio:
                m = estimators::moments_alpha(scenario, bit, scheme);
                break;
            case StatisticKind::SignalConc:
                m = estimators::moments_cs(scenario, bit, scheme,
                                           estimators::VarianceModel::ExactSum);
                break;
        }
        s.model_mean = m.mean;
        s.model_variance = m.variance;
        s.ks_distance = ks_vs_gaussian(v, mean, std::sqrt(var));
        report.statistics.push_back(s);

        if (!out_prefix.empty()) {
            write_text_file(out_prefix + "_" + detectors::statistic_name(kinds[k]) + ".csv",
                            histogram_csv(v, m.mean, m.variance, 60));
        }
    }

    if (!out_prefix.empty()) {
        std::string csv =
            "detector,empirical_mean,se_mean,model_mean,empirical_variance,se_variance,"
            "model_variance,ks_distance\n";
        nlohmann::json j = nlohmann::json::array();
        for (const auto& s : report.statistics) {
            csv += std::string(detectors::statistic_name(s.kind)) + "," +
                   format_number(s.empirical_mean) + "," + format_number(s.se_mean) + "," +
                   format_number(s.model_mean) + "," + format_number(s.empirical_variance) + "," +
                   format_number(s.se_variance) + "," + format_number(s.model_variance) + "," +
                   format_number(s.ks_distance) + "\n";
            if (json_mirror) {
                j.push_back({{"detector", detectors::statistic_name(s.kind)},
                             {"empirical_mean", s.empirical_mean},
                             {"se_mean", s.se_mean},
                             {"model_mean", s.model_mean},
                             {"empirical_variance", s.empirical_variance},
                             {"se_variance", s.se_variance},
                             {"model_variance", s.model_variance},
                             {"ks_distance", s.ks_distance}});
            }
        }
        write_text_file(out_prefix + "_summary.csv", csv);
        if (json_mirror) write_text_file(out_prefix + "_summary.json", j.dump(2) + "\n");
    }
    return report;
}

// ---------------------------------------------------------------------------
// CRN validation
// ---------------------------------------------------------------------------

CrnValidationReport run_crn_validation(const sampler::ChannelScenario& scenario,
                                       long long symbols, const EstimatorConfig& est,
                                       const CrnConfig& crn_cfg, rng::Stream stream,
                                       const std::string& out_path, bool json_mirror) {
    scenario.validate();
    if (symbols < 100) throw ConfigError("CRN validation requires at least 100 symbols");

    const auto scheme = estimators::build_binning(est.nu, scenario.spec_s, scenario.spec_in);
    const double beta = crn::kpr_rate(scheme.t1, crn_cfg.kappa);
    const auto response = crn::kpr_response(beta, scenario.spec_s, scenario.spec_in);
    const double activation_rate = crn::activation_defaults(scenario).rho;

    const std::array<crn::ReceptorKind, 4> kinds{crn::ReceptorKind::DNBR, crn::ReceptorKind::DRUT,
                                                 crn::ReceptorKind::DRBT,
                                                 crn::ReceptorKind::DRUBT};
    const std::array<StatisticKind, 4> stat_kinds{StatisticKind::BoundCount,
                                                  StatisticKind::TotalConc, StatisticKind::Ratio,
                                                  StatisticKind::SignalConc};

    std::array<crn::ReceptorDesign, 4> designs;
    std::array<detectors::DecisionModel, 4> models;
    for (std::size_t k = 0; k < kinds.size(); ++k) {
        designs[k] = crn::make_receptor_design(kinds[k], scenario.spec_s, scenario.spec_in,
                                               activation_rate, beta, crn_cfg.s_rate);
        // The duration detectors threshold the statistic their hardware
        // actually produces, so their moments come from the KPR response.
        switch (stat_kinds[k]) {
            case StatisticKind::BoundCount:
            case StatisticKind::TotalConc:
                models[k] = detectors::build_decision_model(scenario, stat_kinds[k], scheme);
                break;
            case StatisticKind::Ratio: {
                detectors::DecisionModel m;
                m.kind = StatisticKind::Ratio;
                m.bit0 = estimators::moments_ratio_response(scenario, 0, response, scheme);
                m.bit1 = estimators::moments_ratio_response(scenario, 1, response, scheme);
                m.threshold = detectors::optimal_threshold(m.bit0, m.bit1);
                models[k] = m;
                break;
            }
            case StatisticKind::SignalConc: {
                detectors::DecisionModel m;
                m.kind = StatisticKind::SignalConc;
                m.bit0 = estimators::moments_cs_response(scenario, 0, response, scheme);
                m.bit1 = estimators::moments_cs_response(scenario, 1, response, scheme);
                m.threshold = detectors::optimal_threshold(m.bit0, m.bit1);
                models[k] = m;
                break;
            }
        }
    }

    crn::DetectorParams params;
    params.k_on = scenario.spec_s.k_on;
    params.w21 = scheme.w21();
    params.w22 = scheme.w22();
    params.s_rate = crn_cfg.s_rate;
    params.y_gain = crn_cfg.y_gain;
    params.annihilation_rate = crn_cfg.annihilation_rate;

    std::array<long long, 4> threshold_counts{};
    for (std::size_t k = 0; k < kinds.size(); ++k) {
        const double gain = kinds[k] == crn::ReceptorKind::DNBR
                                ? static_cast<double>(crn_cfg.dnbr_amplification)
                                : crn_cfg.y_gain;
        threshold_counts[k] = crn::encode_threshold(models[k].threshold, gain);
    }

    CrnValidationReport report;
    report.detectors.resize(4);
    for (std::size_t k = 0; k < 4; ++k) {
        report.detectors[k].kind = stat_kinds[k];
        report.detectors[k].symbols = symbols;
    }
    double sum_d1 = 0.0;
    double sum_nb1 = 0.0;

    for (long long sym = 0; sym < symbols; ++sym) {
        const auto base = stream.child(static_cast<std::uint64_t>(sym));
        auto aux = base.child(1).engine();
        const int bit = static_cast<int>(aux() & 1ULL);
        const auto obs = sampler::sample_symbol(scenario, bit, scheme.t1, base.child(0));
        sum_nb1 += static_cast<double>(obs.bin_counts[0]);

        for (std::size_t k = 0; k < 4; ++k) {
            auto xduce_engine = base.child(2 + k).engine();
            const auto counts = crn::transduce_observation(
                designs[k], obs, kinds[k] == crn::ReceptorKind::DNBR ? crn_cfg.dnbr_amplification : 1,
                xduce_engine);
            if (kinds[k] == crn::ReceptorKind::DRBT) sum_d1 += static_cast<double>(counts.d1);

            // Threshold decision on the same transduced statistic.
            double direct_value = 0.0;
            switch (kinds[k]) {
                case crn::ReceptorKind::DNBR:
                    direct_value = static_cast<double>(obs.n_bound);
                    break;
                case crn::ReceptorKind::DRUT:
                    direct_value = estimators::estimate_total_concentration(
                        scenario.n_receptors, obs.total_unbound_time, scenario.spec_s.k_on);
                    break;
                case crn::ReceptorKind::DRBT:
                    direct_value = estimators::estimate_concentration_ratio(
                        {counts.d1, counts.d2}, scenario.n_receptors, scheme);
                    break;
                case crn::ReceptorKind::DRUBT:
                    direct_value = estimators::estimate_signal_concentration(
                        obs.total_unbound_time, {counts.d1, counts.d2}, scenario.n_receptors,
                        scheme, scenario.spec_s.k_on);
                    break;
            }
            const int direct_bit = detectors::decide(direct_value, models[k]);

            // Chemical pipeline: computation network to steady state, then
            // the annihilation comparator.
            double y_final = 0.0;
            if (kinds[k] == crn::ReceptorKind::DNBR) {
                y_final = static_cast<double>(counts.m);
            } else {
                const double target = crn::analytic_steady_state(kinds[k], counts, params);
                if (target <= 0.0) {
                    // Net production is nonpositive: Y is emptied and the
                    // network has no positive fixed point to relax to.
                    y_final = 0.0;
                } else {
                    const auto net = crn::build_network(designs[k], counts, params);
                    const auto ode = crn::integrate_ode(net, crn_cfg.t_end);
                    y_final = ode.steady_state[static_cast<std::size_t>(net.index_of("Y"))];
                    const double rel_err = std::fabs(y_final - target) / target;
                    report.detectors[k].max_steady_rel_err =
                        std::max(report.detectors[k].max_steady_rel_err, rel_err);
                }
            }
            const auto completion = crn::comparator_completion(
                y_final, static_cast<double>(threshold_counts[k]));
            const int crn_bit = crn::comparator_decide(completion.first, completion.second);
            if (crn_bit != direct_bit) ++report.detectors[k].disagreements;
        }
    }

    for (auto& d : report.detectors) {
        d.agreement =
            1.0 - static_cast<double>(d.disagreements) / static_cast<double>(d.symbols);
    }
    report.mean_d1 = sum_d1 / static_cast<double>(symbols);
    report.mean_nb1 = sum_nb1 / static_cast<double>(symbols);

    if (!out_path.empty()) {
        std::string csv = "detector,symbols,agreement,max_steady_rel_err\n";
        nlohmann::json j;
        j["detectors"] = nlohmann::json::array();
        for (const auto& d : report.detectors) {
            csv += std::string(detectors::statistic_name(d.kind)) + "," +
                   std::to_string(d.symbols) + "," + format_number(d.agreement) + "," +
                   format_number(d.max_steady_rel_err) + "\n";
            j["detectors"].push_back({{"detector", detectors::statistic_name(d.kind)},
                                      {"symbols", d.symbols},
                                      {"agreement", d.agreement},
                                      {"max_steady_rel_err", d.max_steady_rel_err}});
        }
        csv += "kpr_mean_d1," + format_number(report.mean_d1) + ",,\n";
        csv += "kpr_mean_nb1," + format_number(report.mean_nb1) + ",,\n";
        j["kpr_mean_d1"] = report.mean_d1;
        j["kpr_mean_nb1"] = report.mean_nb1;
        write_text_file(out_path, csv);
        if (json_mirror) write_text_file(json_output_path(out_path), j.dump(2) + "\n");
    }
    return report;
}

// ---------------------------------------------------------------------------
// Config files
// ---------------------------------------------------------------------------

Config default_config() {
    Config c;
    c.scenario = default_scenario();
    c.sweep.nu = c.estimator.nu;
    c.sweep.detector_kinds = {StatisticKind::BoundCount, StatisticKind::TotalConc,
                              StatisticKind::Ratio, StatisticKind::SignalConc};
    resolve_sweep(c);
    return c;
}

void resolve_sweep(Config& config) {
    config.sweep.base = config.scenario;
    config.sweep.nu = config.estimator.nu;
    config.sweep.values = config.sweep.axis == SweepAxis::ReceptorCount
                              ? logspace(config.sweep_from, config.sweep_to, config.sweep_points)
                              : linspace(config.sweep_from, config.sweep_to, config.sweep_points);
}

namespace {

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("invalid numeric value for " + key + ": " + value);
    }
}

long long parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long long x = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("invalid integer value for " + key + ": " + value);
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "1" || value == "true" || value == "yes") return true;
    if (value == "0" || value == "false" || value == "no") return false;
    throw ConfigError("invalid boolean value for " + key + ": " + value);
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

Config parse_config_text(const std::string& text) {
    Config config = default_config();
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("malformed section header at line " + std::to_string(line_no));
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section != "scenario" && section != "estimator" && section != "crn" &&
                section != "sweep") {
                throw ConfigError("unknown config section: " + section);
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("expected key = value at line " + std::to_string(line_no));
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section == "scenario") {
            if (key == "k_on") {
                config.scenario.spec_s.k_on = config.scenario.spec_in.k_on =
                    parse_double(key, value);
            } else if (key == "k_off_signal") {
                config.scenario.spec_s.k_off = parse_double(key, value);
            } else if (key == "k_off_interferer") {
                config.scenario.spec_in.k_off = parse_double(key, value);
            } else if (key == "c_bit0") {
                config.scenario.c_bit0 = parse_double(key, value);
            } else if (key == "c_bit1") {
                config.scenario.c_bit1 = parse_double(key, value);
            } else if (key == "mean_c_in") {
                config.scenario.mean_c_in = parse_double(key, value);
            } else if (key == "volume") {
                config.scenario.volume = parse_double(key, value);
            } else if (key == "n_receptors") {
                config.scenario.n_receptors = parse_int(key, value);
            } else {
                throw ConfigError("unknown scenario key: " + key);
            }
        } else if (section == "estimator") {
            if (key == "nu") {
                config.estimator.nu = parse_double(key, value);
            } else {
                throw ConfigError("unknown estimator key: " + key);
            }
        } else if (section == "crn") {
            if (key == "kappa") config.crn.kappa = parse_double(key, value);
            else if (key == "s_rate") config.crn.s_rate = parse_double(key, value);
            else if (key == "y_gain") config.crn.y_gain = parse_double(key, value);
            else if (key == "dnbr_amplification") config.crn.dnbr_amplification = parse_int(key, value);
            else if (key == "annihilation_rate") config.crn.annihilation_rate = parse_double(key, value);
            else if (key == "comparator_rate") config.crn.comparator_rate = parse_double(key, value);
            else if (key == "t_end") config.crn.t_end = parse_double(key, value);
            else throw ConfigError("unknown crn key: " + key);
        } else if (section == "sweep") {
            if (key == "axis") config.sweep.axis = parse_sweep_axis(value);
            else if (key == "from") config.sweep_from = parse_double(key, value);
            else if (key == "to") config.sweep_to = parse_double(key, value);
            else if (key == "points") config.sweep_points = static_cast<int>(parse_int(key, value));
            else if (key == "detectors") config.sweep.detector_kinds = parse_detector_list(value);
            else if (key == "trials") config.sweep.mc_trials = parse_int(key, value);
            else if (key == "seed") config.sweep.seed = static_cast<std::uint64_t>(parse_int(key, value));
            else if (key == "out") config.sweep.output_path = value;
            else if (key == "json") config.sweep.json_mirror = parse_bool(key, value);
            else throw ConfigError("unknown sweep key: " + key);
        } else {
            throw ConfigError("key outside of any section at line " + std::to_string(line_no));
        }
    }
    config.scenario.validate();
    resolve_sweep(config);
    return config;
}

Config parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

}  // namespace ligandmc::experiments
