#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ligandmc/crn.hpp"
#include "ligandmc/detectors.hpp"
#include "ligandmc/estimators.hpp"
#include "ligandmc/sampler.hpp"

namespace ligandmc::experiments {

// Default evaluation setting: equal binding rates of 20 um^3/s, signal
// unbinding 10/s, affinity ratio 0.2, bit concentrations of 4 and 5 KD_s,
// mean interference of 2 KD_in, 10^4 receptors in 4000 um^3.
sampler::ChannelScenario default_scenario();

struct EstimatorConfig {
    double nu = 3.0;
};

struct CrnConfig {
    double kappa = 0.6;      // KPR tuning, beta = kappa / t1
    double s_rate = 1.0;     // S molecules per second of unbound time
    double y_gain = 10000.0; // Y-production amplification (threshold scaled alike)
    long long dnbr_amplification = 1;
    double annihilation_rate = 1.0;
    double comparator_rate = 1.0;
    double t_end = 20.0;    // ODE horizon per symbol
};

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

enum class SweepAxis { InterfererConc, AffinityRatio, Bit0Bit1Ratio, ReceptorCount };

const char* sweep_axis_name(SweepAxis axis);
SweepAxis parse_sweep_axis(const std::string& name);

struct SweepSpec {
    sampler::ChannelScenario base;
    double nu = 3.0;
    SweepAxis axis = SweepAxis::InterfererConc;
    std::vector<double> values;  // strictly monotone
    std::vector<detectors::StatisticKind> detector_kinds;
    long long mc_trials = 0;  // 0 = analytic only
    std::uint64_t seed = 1;
    std::string output_path;  // CSV; empty writes nothing
    bool json_mirror = false;
    estimators::VarianceModel variance_model = estimators::VarianceModel::ClosedForm;
};

struct DetectorCells {
    double analytic_bep = 0.0;
    double mc_bep = 0.0;
    double mc_ci95 = 0.0;
    double threshold = 0.0;
    double mean0 = 0.0;
    double var0 = 0.0;
    double mean1 = 0.0;
    double var1 = 0.0;
};

struct SweepRow {
    double axis_value = 0.0;
    std::vector<DetectorCells> cells;  // aligned with SweepSpec::detector_kinds
    double pb_s0 = 0.0;  // receiver saturation at the mean interferer load
    double pb_s1 = 0.0;
};

// Scenario obtained by moving one axis: interferer concentration in units of
// KD_in, the affinity ratio k_off_s / k_off_in (holding k_off_s and the
// absolute mean interferer concentration fixed), the c0/c1 ratio (holding
// c1), or the receptor count.
sampler::ChannelScenario apply_axis(const sampler::ChannelScenario& base, SweepAxis axis,
                                    double value);

std::vector<SweepRow> run_sweep(const SweepSpec& spec);

std::string sweep_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows);

// ---------------------------------------------------------------------------
// Gaussian-approximation histograms
// ---------------------------------------------------------------------------

struct StatisticSummary {
    detectors::StatisticKind kind = detectors::StatisticKind::BoundCount;
    double empirical_mean = 0.0;
    double empirical_variance = 0.0;
    double se_mean = 0.0;      // standard error of the empirical mean
    double se_variance = 0.0;  // standard error of the empirical variance
    double model_mean = 0.0;
    double model_variance = 0.0;
    double ks_distance = 0.0;  // vs the Gaussian fitted to the empirical moments
};

struct HistogramReport {
    long long iterations = 0;
    std::vector<StatisticSummary> statistics;
};

// Samples full receptor observations, evaluates all four statistics per
// symbol, and summarizes each against its Gaussian model (exact-sum
// variances). When out_prefix is nonempty, writes <prefix>_<detector>.csv
// histograms and <prefix>_summary.csv.
HistogramReport emit_histograms(const sampler::ChannelScenario& scenario, int bit,
                                long long iterations, const EstimatorConfig& est,
                                rng::Stream stream, const std::string& out_prefix = "",
                                bool json_mirror = false);

// ---------------------------------------------------------------------------
// CRN validation
// ---------------------------------------------------------------------------

struct CrnDetectorReport {
    detectors::StatisticKind kind = detectors::StatisticKind::BoundCount;
    long long symbols = 0;
    long long disagreements = 0;
    double agreement = 1.0;
    double max_steady_rel_err = 0.0;  // ODE steady state vs analytic formula
};

struct CrnValidationReport {
    std::vector<CrnDetectorReport> detectors;
    double mean_d1 = 0.0;   // KPR short-bin emissions per symbol
    double mean_nb1 = 0.0;  // exact short-bin counts per symbol
};

// End-to-end check of the chemical pipeline: per symbol, transduce the
// observation, run the computation network to steady state, apply the
// comparator, and compare with the threshold decision on the same transduced
// statistic. The duration detectors threshold their KPR-transduced statistic
// with moments built from the KPR response matrix.
CrnValidationReport run_crn_validation(const sampler::ChannelScenario& scenario,
                                       long long symbols, const EstimatorConfig& est,
                                       const CrnConfig& crn_cfg, rng::Stream stream,
                                       const std::string& out_path = "",
                                       bool json_mirror = false);

// ---------------------------------------------------------------------------
// Config files
// ---------------------------------------------------------------------------

struct Config {
    sampler::ChannelScenario scenario;
    EstimatorConfig estimator;
    CrnConfig crn;
    SweepSpec sweep;  // values resolved from the grid below by resolve_sweep
    double sweep_from = 1.0;
    double sweep_to = 10.0;
    int sweep_points = 20;
};

// Flat INI-style file: [section] headers, key = value pairs, # comments.
// Unknown sections or keys are ConfigErrors.
Config parse_config_file(const std::string& path);
Config parse_config_text(const std::string& text);
Config default_config();

// Fills sweep.base and sweep.values from the scenario and grid fields.
// ReceptorCount grids are log-spaced, the other axes linear.
void resolve_sweep(Config& config);

std::vector<detectors::StatisticKind> parse_detector_list(const std::string& csv);

// Helpers for axis grids.
std::vector<double> linspace(double from, double to, int points);
std::vector<double> logspace(double from, double to, int points);

// RFC-4180 CSV field quoting.
std::string csv_escape(const std::string& field);
std::string format_number(double x);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace ligandmc::experiments
