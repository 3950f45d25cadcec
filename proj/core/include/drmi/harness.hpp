#pragma once

#include "drmi/dataset.hpp"
#include "drmi/imputation.hpp"
#include "drmi/pooling.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace drmi {

inline constexpr std::uint64_t kDefaultSeed = 20240928;
inline constexpr int kDefaultReps = 500;
inline constexpr int kDefaultImputations = 20;

struct AnalysisModels {
    ModelFormula propensity;
    ModelFormula outcome;
};

// The analysis models for a generator: correctly specified throughout,
// except that precision_linear_everywhere downgrades the nonlinear
// generator's outcome model to a linear precision term.
AnalysisModels analysis_models(DgpKind dgp, Strategy strategy);

// One simulation cell: a (generator, n, missing target, strategy) point
// of a results table plus its execution parameters.
struct CellConfig {
    std::string table = "custom";
    DgpKind dgp = DgpKind::linear_het;
    std::size_t n = 2000;
    MissingTarget missing_target = MissingTarget::confounder;
    Strategy strategy = Strategy::correct;
    int reps = kDefaultReps;
    int m = kDefaultImputations;
    std::uint64_t master_seed = kDefaultSeed;
    // Diagnostic: draw no missingness at all; every imputed dataset is then
    // identical and the pooled estimate equals the full-data estimate.
    bool diagnostic_no_missingness = false;
    std::optional<AnalysisModels> models_override;

    // Stable identity used for seeding. Excludes reps and the table label,
    // so replication r sees the same data no matter how many replications
    // run or which table the cell is reported under.
    std::string id_string() const;
    std::uint64_t cell_id() const;

    // Enforces the closed set of (generator, target, strategy)
    // combinations appearing in the tables; throws ArgumentError.
    void validate() const;
};

struct ReplicationOutcome {
    bool ok = false;
    PooledResult pooled;
    std::string failure_reason;
};

// Deterministic in (master_seed, cell identity, rep_index).
// Replication-level failures come back recorded, not thrown.
ReplicationOutcome run_replication(const CellConfig& cell, int rep_index);

// Aggregated metrics over the successful replications of one cell.
struct CellSummary {
    double est = 0.0;      // mean pooled estimate
    double mc_se = 0.0;    // sample SD of pooled estimates
    double avg_se = 0.0;   // mean pooled SE
    double bias = 0.0;     // est - true ATE
    double rmse = 0.0;
    double coverage = 0.0; // share of intervals containing the true ATE
    int failures = 0;
    int successes = 0;
    bool invalid = false;  // failures exceed 10% of configured reps
};

CellSummary summarize_cell(std::span<const ReplicationOutcome> outcomes, int configured_reps,
                           double true_ate = 1.0);

struct CellResult {
    CellConfig config;
    CellSummary summary;
    std::vector<ReplicationOutcome> replications; // in replication order
};

CellSummary run_cell(const CellConfig& cell, int parallelism);
CellResult run_cell_detailed(const CellConfig& cell, int parallelism);

// Cells run in input order; replications within a cell run concurrently.
std::vector<CellResult> run_grid(std::span<const CellConfig> cells, int parallelism);

// Built-in grids reproducing the published tables. Names: table1..table6.
std::vector<CellConfig> preset_cells(const std::string& preset);
const std::vector<std::string>& all_preset_names();

// CSV with one row per cell:
// table,panel,n,dgp,missing_target,strategy,reps,m,est,mc_se,avg_se,bias,
// rmse,coverage,failures,seed
std::string csv_report(std::span<const CellResult> results);

// Markdown mirroring the published panel layout for visual comparison.
std::string markdown_report(std::span<const CellResult> results);

// Human-readable one-liner for progress output.
std::string cell_summary_line(const CellResult& result);

} // namespace drmi
