#include "drmi/estimators.hpp"

#include "drmi/errors.hpp"
#include "drmi/linalg.hpp"

#include <cmath>

namespace drmi {

namespace {

constexpr double kClip = 1e-6;

EstimateWithVariance summarize_contributions(const std::vector<double>& psi) {
    const auto n = psi.size();
    double mean = 0.0;
    for (const double v : psi) {
        if (!std::isfinite(v)) {
            throw DegenerateCellError("non-finite estimator contribution");
        }
        mean += v;
    }
    mean /= static_cast<double>(n);

    double ss = 0.0;
    for (const double v : psi) ss += (v - mean) * (v - mean);
    const double sample_variance = n > 1 ? ss / static_cast<double>(n - 1) : 0.0;

    EstimateWithVariance est;
    est.delta_hat = mean;
    est.within_variance = sample_variance / static_cast<double>(n);
    est.n = n;
    return est;
}

void check_lengths(std::span<const double> x, std::span<const double> y,
                   std::span<const double> pi) {
    if (x.size() != y.size() || x.size() != pi.size() || x.empty()) {
        throw ArgumentError("estimator inputs must share one nonzero length");
    }
}

} // namespace

PropensityScores fit_propensity(const CompletedDataset& data, const ModelFormula& ps_formula) {
    if (ps_formula.response != "x") {
        throw ArgumentError("propensity formula must have the exposure as its response");
    }
    const TableView view = data.view();
    const auto rows = all_rows(data.n);
    const DesignMatrix design = build_design(ps_formula, view, rows);
    const Eigen::VectorXd response = response_vector(ps_formula, view, rows);

    LogisticFit fit;
    try {
        fit = logistic_fit(design, response);
    } catch (const SeparationError& err) {
        throw DegenerateCellError(std::string("propensity fit: ") + err.what());
    }
    if (!fit.converged) {
        throw DegenerateCellError("propensity fit did not converge");
    }

    PropensityScores scores;
    scores.pi.resize(data.n);
    const Eigen::VectorXd eta = design.values * fit.coefficients;
    for (std::size_t i = 0; i < data.n; ++i) {
        scores.pi[i] = std::clamp(expit(eta[static_cast<Eigen::Index>(i)]), kClip, 1.0 - kClip);
    }
    return scores;
}

ArmPredictions fit_outcome_by_arm(const CompletedDataset& data,
                                  const ModelFormula& outcome_formula) {
    const TableView view = data.view();
    std::vector<RowIndex> treated, control;
    for (std::size_t i = 0; i < data.n; ++i) {
        (data.x[i] == 1.0 ? treated : control).push_back(i);
    }
    const auto rows = all_rows(data.n);

    const auto fit_arm = [&](const std::vector<RowIndex>& arm, const char* label) {
        const DesignMatrix arm_design = build_design(outcome_formula, view, arm, arm);
        if (static_cast<Eigen::Index>(arm.size()) <= arm_design.cols()) {
            throw DegenerateCellError(std::string("outcome fit: ") + label + " arm has " +
                                      std::to_string(arm.size()) + " rows for " +
                                      std::to_string(arm_design.cols()) + " parameters");
        }
        const Eigen::VectorXd arm_response = response_vector(outcome_formula, view, arm);
        LinearFit fit;
        try {
            fit = wls_fit(arm_design, arm_response);
        } catch (const SingularMatrixError& err) {
            throw DegenerateCellError(std::string("outcome fit (") + label + "): " + err.what());
        }
        // Evaluate on every row with the arm-trained knots.
        const DesignMatrix full = build_design(outcome_formula, view, arm, rows);
        return Eigen::VectorXd(full.values * fit.coefficients);
    };

    ArmPredictions predictions;
    predictions.mu1 = fit_arm(treated, "treated");
    predictions.mu0 = fit_arm(control, "control");
    return predictions;
}

EstimateWithVariance aipw_from_components(std::span<const double> x, std::span<const double> y,
                                          std::span<const double> pi,
                                          std::span<const double> mu1,
                                          std::span<const double> mu0) {
    check_lengths(x, y, pi);
    if (mu1.size() != x.size() || mu0.size() != x.size()) {
        throw ArgumentError("estimator inputs must share one nonzero length");
    }
    std::vector<double> psi(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        psi[i] = (mu1[i] - mu0[i]) + x[i] * (y[i] - mu1[i]) / pi[i] -
                 (1.0 - x[i]) * (y[i] - mu0[i]) / (1.0 - pi[i]);
    }
    return summarize_contributions(psi);
}

EstimateWithVariance ipw_from_components(std::span<const double> x, std::span<const double> y,
                                         std::span<const double> pi) {
    check_lengths(x, y, pi);
    std::vector<double> summand(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        summand[i] = x[i] * y[i] / pi[i] - (1.0 - x[i]) * y[i] / (1.0 - pi[i]);
    }
    return summarize_contributions(summand);
}

EstimateWithVariance aipw_estimate(const CompletedDataset& data, const ModelFormula& ps_formula,
                                   const ModelFormula& outcome_formula) {
    const PropensityScores scores = fit_propensity(data, ps_formula);
    const ArmPredictions mu = fit_outcome_by_arm(data, outcome_formula);
    return aipw_from_components(data.x, data.y, scores.pi,
                                std::span<const double>(mu.mu1.data(), data.n),
                                std::span<const double>(mu.mu0.data(), data.n));
}

EstimateWithVariance ipw_estimate(const CompletedDataset& data, const ModelFormula& ps_formula) {
    const PropensityScores scores = fit_propensity(data, ps_formula);
    return ipw_from_components(data.x, data.y, scores.pi);
}

} // namespace drmi
