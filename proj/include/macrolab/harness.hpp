// harness.hpp
// Configuration-driven experiment runner: samples an ensemble per (n, k)
// cell, evaluates both measures, aggregates statistics and writes CSV/JSON.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "macrolab/ensembles.hpp"
#include "macrolab/extremal.hpp"

namespace macrolab {

enum class Experiment { NamedState, XiScan, EtaBounds, PhysicalScan, ChainScan, HaarScan, SymmetricScan };

const char* experiment_name(Experiment e);
Experiment parse_experiment(const std::string& name);

/// Invalid configuration; `field` names the offending entry.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(const std::string& field, const std::string& message);
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// Named state for the named-state experiment and the `state` subcommand.
struct NamedStateSpec {
    std::string kind = "ghz";  ///< ghz|w|dicke|bell-product|xi|ghz-ones|phi-c|product
    int k = 1;                 ///< Dicke excitations, or N2 for ghz-ones
    double theta = 0.0;
    double epsilon = 0.0;
};

struct ExperimentConfig {
    static constexpr int kSchemaVersion = 1;

    Experiment experiment = Experiment::HaarScan;
    std::vector<int> n_values;
    /// Gate counts. Each entry is an integer or one of "n", "n-1", "n^p".
    std::vector<std::string> k_values;
    int samples = 1;
    std::uint64_t seed = 1;
    int restarts = -1;
    double tol = 1e-10;
    std::string output_path;
    std::string format = "csv";
    /// Dense states up to this size get the full optimizer, larger ones only
    /// the VCM bracket.
    int exact_max_n = 20;
    bool compute_e_g = true;
    PairSelection pair_selection = PairSelection::Adjacent;
    /// Worker threads; 0 selects the hardware concurrency.
    int threads = 0;
    /// Parameter points per line (xi-scan) or eta values per mode (eta-bounds).
    int grid = 32;
    NamedStateSpec state;

    /// Throws ConfigError or ResourceLimit.
    void validate() const;
};

ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& json_text);

/// Evaluates a k schedule entry for a given n.
long long evaluate_k(const std::string& expr, int n);

struct SampleRow {
    std::string ensemble;
    int n = 0;
    long long k = 0;
    int sample = 0;
    std::uint64_t seed = 0;
    double m_tilde_lower = 0.0;
    double m_tilde_upper = 0.0;
    double m_tilde = 0.0;
    double m_norm = 0.0;
    double n_m_norm = 0.0;
    double e_g = 0.0;
    bool opt_converged = false;
    bool eg_converged = false;

    bool operator==(const SampleRow&) const = default;
};

struct StatRecord {
    std::string ensemble;
    int n = 0;
    long long k = 0;
    int count = 0;
    double mean_m_norm = 0.0;
    double std_m_norm = 0.0;
    double mean_e_g = 0.0;
    double std_e_g = 0.0;
    double mean_bracket_width = 0.0;
    double mean_lambda1 = 0.0;
};

struct ExperimentResult {
    std::vector<SampleRow> rows;
    std::vector<StatRecord> summary;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

/// One row per (ensemble, n, k) cell in row order; std uses n - 1.
std::vector<StatRecord> summarize(const std::vector<SampleRow>& rows);

/// Evaluates a named state with the symmetric engines where they apply.
SampleRow evaluate_named_state(int n, const NamedStateSpec& spec, const ExperimentConfig& config);

extern const char* const kCsvHeader;
extern const char* const kSummaryHeader;

void write_csv(std::ostream& out, const std::vector<SampleRow>& rows);
void write_json(std::ostream& out, const std::vector<SampleRow>& rows);
void write_summary_csv(std::ostream& out, const std::vector<StatRecord>& records);
std::vector<SampleRow> read_csv(std::istream& in);

struct BoundsRow {
    BoundMode mode = BoundMode::General;
    int n = 0;
    double eta = 0.0;
    double e_g = 0.0;
    double m_tilde = 0.0;
    double m_norm = 0.0;
};

extern const char* const kBoundsHeader;

/// eta_max_bound over eta_grid(n, mode, grid_size) for every n and mode.
std::vector<BoundsRow> bounds_curves(const std::vector<int>& n_values, const std::vector<BoundMode>& modes,
                                     int grid_size);
void write_bounds_csv(std::ostream& out, const std::vector<BoundsRow>& rows);
void write_bounds_json(std::ostream& out, const std::vector<BoundsRow>& rows);

/// Writes rows to `path` in "csv" or "json"; throws std::runtime_error on I/O
/// failure.
void emit(const std::vector<SampleRow>& rows, const std::string& format, const std::string& path);

}  // namespace macrolab
