#pragma once

#include "drmi/dataset.hpp"
#include "drmi/formula.hpp"
#include "drmi/rng.hpp"

#include <span>
#include <string>
#include <vector>

namespace drmi {

// Closed catalog of per-cell strategies. complete_case is a cell strategy
// but not an imputation model; everything else maps to one formula per
// missing target through make_strategy.
enum class Strategy : std::uint8_t {
    correct,
    oversaturated,
    complete_case,
    omit_precision,
    omit_exposure,
    omit_outcome,
    omit_confounder,
    missing_interaction,
    misspec_precision,
    misspec_precision_missing_interaction,
    precision_linear_everywhere,
    misspec_zc2_linear,
    correct_zc2_quadratic
};

std::string to_string(Strategy strategy);
Strategy parse_strategy(const std::string& name);
const std::vector<std::string>& all_strategy_names();

struct ImputationStrategy {
    Strategy kind = Strategy::correct;
    ModelFormula formula;  // for the configured target
    bool stratified = false;
};

// Resolves (strategy, generator, target) to a concrete imputation model.
// Throws ArgumentError for combinations outside the catalog (including
// complete_case, which has no imputation model).
ImputationStrategy make_strategy(Strategy strategy, DgpKind dgp, MissingTarget target);

// Whether a (strategy, generator, target) combination appears in any
// simulation table; run configurations are restricted to these.
bool strategy_defined_for(Strategy strategy, DgpKind dgp, MissingTarget target);

// Values drawn for the masked rows of `target` within `selector`.
struct NormDraws {
    std::vector<RowIndex> rows; // masked rows, in selector order
    std::vector<double> values;
};

// Bayesian linear-regression imputation under the noninformative prior:
// fit WLS on the observed rows of the selector, draw
//   sigma*^2 = rss_df * sigma_hat^2 / chi2(rss_df),
//   beta*    ~ N(beta_hat, sigma*^2 (X'X)^{-1}),
// then return X_mis beta* + sigma* z. Consumes 1 + p + n_mis draws.
NormDraws norm_draw(const TableView& data, const std::string& target,
                    const ModelFormula& formula, std::span<const RowIndex> selector,
                    RngStream& stream);

// m completed datasets. Stratified strategies run norm_draw independently
// on the x = 1 and x = 0 selectors; otherwise one pooled fit over all
// rows. Every (imputation, stratum) pair draws from its own purpose-tagged
// substream of `stream`, so results do not depend on evaluation order.
std::vector<CompletedDataset> impute_multiple(const ObservedDataset& observed,
                                              const ImputationStrategy& strategy,
                                              MissingTarget target, int m,
                                              const RngStream& stream);

// Fully observed rows only; requires at least 30 such rows per exposure
// arm. No imputation takes place.
CompletedDataset complete_case(const ObservedDataset& observed);

} // namespace drmi
