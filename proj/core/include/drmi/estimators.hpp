#pragma once

#include "drmi/dataset.hpp"
#include "drmi/formula.hpp"

#include <span>

namespace drmi {

struct PropensityScores {
    std::vector<double> pi; // fitted P(X = 1 | .), clipped to [1e-6, 1 - 1e-6]
};

struct ArmPredictions {
    Eigen::VectorXd mu1; // X = 1 model evaluated on every row
    Eigen::VectorXd mu0; // X = 0 model evaluated on every row
};

// One dataset's treatment-effect estimate and its within variance
// (sample variance of the per-row contributions divided by n).
struct EstimateWithVariance {
    double delta_hat = 0.0;
    double within_variance = 0.0;
    std::size_t n = 0;
};

// Logistic propensity model over all rows. Separation or non-convergence
// surfaces as DegenerateCellError so the harness can record and skip.
PropensityScores fit_propensity(const CompletedDataset& data, const ModelFormula& ps_formula);

// Two unweighted least-squares outcome fits, one per exposure arm, each
// predicting for every row. Spline knots are learned per arm. An arm with
// no more rows than parameters raises DegenerateCellError.
ArmPredictions fit_outcome_by_arm(const CompletedDataset& data,
                                  const ModelFormula& outcome_formula);

// Augmented inverse-probability-weighted estimate: per-row contribution
//   psi_i = [mu1_i - mu0_i] + x_i (y_i - mu1_i) / pi_i
//                           - (1 - x_i)(y_i - mu0_i) / (1 - pi_i).
EstimateWithVariance aipw_estimate(const CompletedDataset& data, const ModelFormula& ps_formula,
                                   const ModelFormula& outcome_formula);

// Plain inverse-probability weighting:
//   s_i = x_i y_i / pi_i - (1 - x_i) y_i / (1 - pi_i).
// Identical to aipw with mu1 = mu0 = 0.
EstimateWithVariance ipw_estimate(const CompletedDataset& data, const ModelFormula& ps_formula);

// Component forms for fixed nuisance values (tests, diagnostics).
EstimateWithVariance aipw_from_components(std::span<const double> x, std::span<const double> y,
                                          std::span<const double> pi,
                                          std::span<const double> mu1,
                                          std::span<const double> mu0);
EstimateWithVariance ipw_from_components(std::span<const double> x, std::span<const double> y,
                                         std::span<const double> pi);

} // namespace drmi
