// Command-line front end: analytic + Monte Carlo error probabilities, figure
// sweeps, Gaussian-approximation histograms, and chemical-pipeline validation.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ligandmc/errors.hpp"
#include "ligandmc/experiments.hpp"

namespace {

using namespace ligandmc;

struct CommonOpts {
    std::string config_path;
    std::uint64_t seed = 1;
    bool seed_set = false;
    long long trials = 0;
    bool trials_set = false;
    std::string out;
    std::string detectors_list;
    bool json = false;
};

experiments::Config load_config(const CommonOpts& opts) {
    experiments::Config config = opts.config_path.empty()
                                     ? experiments::default_config()
                                     : experiments::parse_config_file(opts.config_path);
    if (opts.seed_set) config.sweep.seed = opts.seed;
    if (opts.trials_set) config.sweep.mc_trials = opts.trials;
    if (!opts.detectors_list.empty()) {
        config.sweep.detector_kinds = experiments::parse_detector_list(opts.detectors_list);
    }
    if (!opts.out.empty()) config.sweep.output_path = opts.out;
    if (opts.json) config.sweep.json_mirror = true;
    return config;
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "Config file (key = value sections)");
    cmd->add_option("--seed", opts.seed, "RNG seed")->each([&](const std::string&) {
        opts.seed_set = true;
    });
    cmd->add_option("--trials", opts.trials, "Monte Carlo trials (0 = analytic only)")
        ->each([&](const std::string&) { opts.trials_set = true; });
    cmd->add_option("--out", opts.out, "Output path (prefix for hist)");
    cmd->add_option("--detectors", opts.detectors_list,
                    "Comma-separated subset of dnbr,drut,drbt,drubt");
    cmd->add_flag("--json", opts.json, "Also write a JSON mirror");
}

int run_sweep_cmd(const CommonOpts& opts, const std::string& axis, double from, double to,
                  int points, bool axis_set) {
    experiments::Config config = load_config(opts);
    if (axis_set) config.sweep.axis = experiments::parse_sweep_axis(axis);
    if (points > 0) {
        config.sweep_from = from;
        config.sweep_to = to;
        config.sweep_points = points;
    }
    experiments::resolve_sweep(config);
    const auto rows = experiments::run_sweep(config.sweep);
    if (config.sweep.output_path.empty()) {
        std::cout << experiments::sweep_csv(config.sweep, rows);
    }
    return 0;
}

int run_bep_cmd(const CommonOpts& opts) {
    experiments::Config config = load_config(opts);
    const auto& scenario = config.scenario;
    const auto scheme =
        estimators::build_binning(config.estimator.nu, scenario.spec_s, scenario.spec_in);
    std::string csv =
        "detector,analytic_bep,mc_bep,mc_ci95,threshold,mean0,var0,mean1,var1\n";
    rng::Stream root(config.sweep.seed);
    std::size_t index = 0;
    for (const auto kind : config.sweep.detector_kinds) {
        const auto model = detectors::build_decision_model(scenario, kind, scheme);
        double mc_bep = std::nan("");
        double mc_ci = std::nan("");
        if (config.sweep.mc_trials > 0) {
            const auto r = detectors::monte_carlo_bep(scenario, kind, scheme,
                                                      config.sweep.mc_trials, root.child(index));
            mc_bep = r.mc_bep;
            mc_ci = r.mc_ci95;
        }
        csv += std::string(detectors::statistic_name(kind)) + "," +
               experiments::format_number(detectors::analytic_bep(model)) + "," +
               experiments::format_number(mc_bep) + "," + experiments::format_number(mc_ci) +
               "," + experiments::format_number(model.threshold) + "," +
               experiments::format_number(model.bit0.mean) + "," +
               experiments::format_number(model.bit0.variance) + "," +
               experiments::format_number(model.bit1.mean) + "," +
               experiments::format_number(model.bit1.variance) + "\n";
        ++index;
    }
    if (config.sweep.output_path.empty()) {
        std::cout << csv;
    } else {
        experiments::write_text_file(config.sweep.output_path, csv);
    }
    return 0;
}

int run_hist_cmd(const CommonOpts& opts, int bit, long long iterations) {
    experiments::Config config = load_config(opts);
    const std::string prefix =
        config.sweep.output_path.empty() ? "hist" : config.sweep.output_path;
    const auto report = experiments::emit_histograms(config.scenario, bit, iterations,
                                                     config.estimator,
                                                     rng::Stream(config.sweep.seed), prefix,
                                                     config.sweep.json_mirror);
    for (const auto& s : report.statistics) {
        std::cout << detectors::statistic_name(s.kind) << ": mean " << s.empirical_mean
                  << " (model " << s.model_mean << "), variance " << s.empirical_variance
                  << " (model " << s.model_variance << "), KS " << s.ks_distance << "\n";
    }
    return 0;
}

int run_crn_cmd(const CommonOpts& opts, long long symbols) {
    experiments::Config config = load_config(opts);
    const auto report = experiments::run_crn_validation(
        config.scenario, symbols, config.estimator, config.crn, rng::Stream(config.sweep.seed),
        config.sweep.output_path, config.sweep.json_mirror);
    for (const auto& d : report.detectors) {
        std::cout << detectors::statistic_name(d.kind) << ": agreement " << d.agreement
                  << ", max steady-state rel err " << d.max_steady_rel_err << "\n";
    }
    std::cout << "kpr mean D1 " << report.mean_d1 << " vs mean short-bin count "
              << report.mean_nb1 << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Binary-CSK ligand-receptor detection simulator"};
    app.require_subcommand(1);

    CommonOpts sweep_opts, bep_opts, hist_opts, crn_opts;

    auto* sweep = app.add_subcommand("sweep", "Run a figure sweep and emit CSV rows");
    add_common(sweep, sweep_opts);
    std::string axis;
    double from = 0.0, to = 0.0;
    int points = 0;
    auto* axis_opt = sweep->add_option("--axis", axis,
                                       "interferer_conc|affinity_ratio|bit_ratio|receptor_count");
    sweep->add_option("--from", from, "Axis start");
    sweep->add_option("--to", to, "Axis end");
    sweep->add_option("--points", points, "Grid size");

    auto* bep = app.add_subcommand("bep", "Single-point analytic and Monte Carlo BEP");
    add_common(bep, bep_opts);

    auto* hist = app.add_subcommand("hist", "Decision-statistic histograms with Gaussian overlay");
    add_common(hist, hist_opts);
    int bit = 0;
    long long iterations = 50000;
    hist->add_option("--bit", bit, "Transmitted bit (0 or 1)");
    hist->add_option("--iterations", iterations, "Symbols to simulate");

    auto* crn = app.add_subcommand("crn-validate", "Chemical pipeline vs threshold decisions");
    add_common(crn, crn_opts);
    long long symbols = 10000;
    crn->add_option("--symbols", symbols, "Symbols to validate");

    try {
        app.parse(argc, argv);
        if (sweep->parsed()) {
            return run_sweep_cmd(sweep_opts, axis, from, to, points, axis_opt->count() > 0);
        }
        if (bep->parsed()) return run_bep_cmd(bep_opts);
        if (hist->parsed()) return run_hist_cmd(hist_opts, bit, iterations);
        if (crn->parsed()) return run_crn_cmd(crn_opts, symbols);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ligandmc::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const ligandmc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
