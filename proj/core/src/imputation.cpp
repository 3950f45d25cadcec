#include "drmi/imputation.hpp"

#include "drmi/errors.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <limits>

namespace drmi {

std::string to_string(Strategy strategy) {
    switch (strategy) {
        case Strategy::correct: return "correct";
        case Strategy::oversaturated: return "oversaturated";
        case Strategy::complete_case: return "complete_case";
        case Strategy::omit_precision: return "omit_precision";
        case Strategy::omit_exposure: return "omit_exposure";
        case Strategy::omit_outcome: return "omit_outcome";
        case Strategy::omit_confounder: return "omit_confounder";
        case Strategy::missing_interaction: return "missing_interaction";
        case Strategy::misspec_precision: return "misspec_precision";
        case Strategy::misspec_precision_missing_interaction:
            return "misspec_precision_missing_interaction";
        case Strategy::precision_linear_everywhere: return "precision_linear_everywhere";
        case Strategy::misspec_zc2_linear: return "misspec_zc2_linear";
        case Strategy::correct_zc2_quadratic: return "correct_zc2_quadratic";
    }
    return "unknown";
}

const std::vector<std::string>& all_strategy_names() {
    static const std::vector<std::string> names = {
        "correct",
        "oversaturated",
        "complete_case",
        "omit_precision",
        "omit_exposure",
        "omit_outcome",
        "omit_confounder",
        "missing_interaction",
        "misspec_precision",
        "misspec_precision_missing_interaction",
        "precision_linear_everywhere",
        "misspec_zc2_linear",
        "correct_zc2_quadratic",
    };
    return names;
}

Strategy parse_strategy(const std::string& name) {
    const auto& names = all_strategy_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return static_cast<Strategy>(i);
    }
    std::string valid;
    for (const auto& n : names) {
        if (!valid.empty()) valid += ", ";
        valid += n;
    }
    throw ArgumentError("unknown strategy '" + name + "'; valid strategies: " + valid);
}

namespace {

ModelFormula stratified(std::string response, std::vector<Term> terms) {
    ModelFormula f;
    f.response = std::move(response);
    f.terms = std::move(terms);
    f.stratify_by_exposure = true;
    return f;
}

ModelFormula pooled(std::string response, std::vector<Term> terms) {
    ModelFormula f;
    f.response = std::move(response);
    f.terms = std::move(terms);
    return f;
}

// The precision variable enters the linear generators linearly and the
// nonlinear generator through its square.
Term precision_term(DgpKind dgp) {
    return dgp == DgpKind::nonlinear_het ? Term::squared("zp") : Term::plain("zp");
}

ModelFormula strategy_formula(Strategy strategy, DgpKind dgp, MissingTarget target) {
    const bool multi = is_multi_confounder(dgp);
    const std::string conf = missing_confounder_name(dgp);
    const bool conf_missing = target == MissingTarget::confounder;

    switch (strategy) {
        case Strategy::correct:
            if (multi) break;
            return conf_missing
                       ? stratified("zc", {Term::plain("y"), precision_term(dgp), Term::plain("zi")})
                       : stratified("y", {Term::plain("zc"), precision_term(dgp)});
        case Strategy::oversaturated:
            if (multi) {
                return conf_missing
                           ? stratified("zc1", {Term::plain("y"), Term::spline("zc2", 3)})
                           : stratified("y", {Term::spline("zc1", 3), Term::spline("zc2", 3)});
            }
            return conf_missing
                       ? stratified("zc", {Term::plain("y"), Term::spline("zp", 3)})
                       : stratified("y", {Term::spline("zc", 3), Term::spline("zp", 3)});
        case Strategy::omit_precision:
            if (multi) break;
            return conf_missing ? stratified("zc", {Term::plain("y"), Term::plain("zi")})
                                : stratified("y", {Term::plain("zc")});
        case Strategy::omit_exposure:
            // Omitting X also drops the stratification; the strata are X.
            if (multi) break;
            return conf_missing
                       ? pooled("zc", {Term::plain("y"), Term::plain("zp"), Term::plain("zi")})
                       : pooled("y", {Term::plain("zc"), Term::plain("zp")});
        case Strategy::omit_outcome:
            if (multi || !conf_missing) break;
            return stratified("zc", {Term::plain("zp"), Term::plain("zi")});
        case Strategy::omit_confounder:
            if (multi || conf_missing) break;
            return stratified("y", {Term::plain("zp")});
        case Strategy::missing_interaction:
            // Pooled fit with X as an additive term: the exposure is present
            // but its interaction with everything else is not.
            if (multi) break;
            return conf_missing ? pooled("zc", {Term::plain("x"), Term::plain("zi"),
                                                Term::plain("zp"), Term::plain("y")})
                                : pooled("y", {Term::plain("x"), Term::plain("zc"),
                                               Term::plain("zp")});
        case Strategy::misspec_precision:
            if (dgp != DgpKind::nonlinear_het) break;
            return conf_missing
                       ? stratified("zc", {Term::plain("y"), Term::plain("zp"), Term::plain("zi")})
                       : stratified("y", {Term::plain("zc"), Term::plain("zp")});
        case Strategy::misspec_precision_missing_interaction:
            if (dgp != DgpKind::nonlinear_het) break;
            return conf_missing ? pooled("zc", {Term::plain("x"), Term::plain("y"),
                                                Term::plain("zp"), Term::plain("zi")})
                                : pooled("y", {Term::plain("x"), Term::plain("zc"),
                                               Term::plain("zp")});
        case Strategy::precision_linear_everywhere:
            // Same imputation model as misspec_precision; the analysis model
            // is downgraded to match (see analysis_models).
            if (dgp != DgpKind::nonlinear_het || !conf_missing) break;
            return stratified("zc", {Term::plain("y"), Term::plain("zp"), Term::plain("zi")});
        case Strategy::misspec_zc2_linear:
            if (!multi) break;
            return conf_missing ? stratified("zc1", {Term::plain("y"), Term::plain("zc2")})
                                : stratified("y", {Term::plain("zc1"), Term::plain("zc2")});
        case Strategy::correct_zc2_quadratic:
            // Spans both analysis models, whichever carries the quadratic.
            if (!multi) break;
            return conf_missing ? stratified("zc1", {Term::plain("y"), Term::plain("zc2"),
                                                     Term::squared("zc2")})
                                : stratified("y", {Term::plain("zc1"), Term::plain("zc2"),
                                                   Term::squared("zc2")});
        case Strategy::complete_case: break;
    }
    throw ArgumentError("strategy '" + to_string(strategy) + "' is not defined for generator '" +
                        to_string(dgp) + "' with missing " + to_string(target) +
                        (conf_missing ? " (" + conf + ")" : ""));
}

} // namespace

ImputationStrategy make_strategy(Strategy strategy, DgpKind dgp, MissingTarget target) {
    ImputationStrategy out;
    out.kind = strategy;
    out.formula = strategy_formula(strategy, dgp, target);
    out.stratified = out.formula.stratify_by_exposure;
    return out;
}

bool strategy_defined_for(Strategy strategy, DgpKind dgp, MissingTarget target) {
    if (strategy == Strategy::complete_case) {
        return !is_multi_confounder(dgp) && dgp != DgpKind::nonlinear_het;
    }
    try {
        make_strategy(strategy, dgp, target);
        return true;
    } catch (const ArgumentError&) {
        return false;
    }
}

NormDraws norm_draw(const TableView& data, const std::string& target,
                    const ModelFormula& formula, std::span<const RowIndex> selector,
                    RngStream& stream) {
    if (formula.response != target) {
        throw ArgumentError("imputation formula response '" + formula.response +
                            "' does not match target '" + target + "'");
    }
    const ColumnRef* column = data.find(target);
    if (column == nullptr) {
        throw ArgumentError("imputation target '" + target + "' not found");
    }

    NormDraws draws;
    std::vector<RowIndex> train;
    for (const RowIndex r : selector) {
        const bool masked = column->mask != nullptr && (*column->mask)[r] != 0;
        (masked ? draws.rows : train).push_back(r);
    }
    if (draws.rows.empty()) return draws;

    const DesignMatrix train_design = build_design(formula, data, train, train);
    const Eigen::Index p = train_design.cols();
    if (static_cast<Eigen::Index>(train.size()) <= p + 1) {
        throw DegenerateCellError("norm_draw: " + std::to_string(train.size()) +
                                  " training rows for " + std::to_string(p) + " parameters");
    }

    const Eigen::VectorXd response = response_vector(formula, data, train);
    const LinearFit fit = wls_fit(train_design, response);

    const double dof = static_cast<double>(fit.degrees_freedom);
    const double chi2 = stream.chi_squared(fit.degrees_freedom);
    const double sigma2_star = fit.residual_variance * dof / chi2;
    const double sigma_star = std::sqrt(sigma2_star);

    Eigen::LLT<Eigen::MatrixXd> llt(fit.gram_inverse);
    Eigen::MatrixXd chol;
    if (llt.info() == Eigen::Success) {
        chol = llt.matrixL();
    } else {
        // PSD fallback: eigendecompose and clamp tiny negatives.
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(fit.gram_inverse);
        chol = es.eigenvectors() *
               es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
    }

    Eigen::VectorXd z(p);
    for (Eigen::Index k = 0; k < p; ++k) z[k] = stream.standard_normal();
    const Eigen::VectorXd beta_star = fit.coefficients + sigma_star * (chol * z);

    const DesignMatrix miss_design = build_design(formula, data, train, draws.rows);
    const Eigen::VectorXd mean = miss_design.values * beta_star;
    draws.values.resize(draws.rows.size());
    for (std::size_t i = 0; i < draws.rows.size(); ++i) {
        draws.values[i] = mean[static_cast<Eigen::Index>(i)] + sigma_star * stream.standard_normal();
    }
    return draws;
}

namespace {

CompletedDataset begin_completion(const ObservedDataset& observed) {
    const CompleteDataset& base = observed.base;
    CompletedDataset cd;
    cd.n = base.n;
    cd.kind = base.kind;
    cd.x = base.x;
    cd.y = base.y;
    cd.zc = base.zc;
    cd.zc1 = base.zc1;
    cd.zc2 = base.zc2;
    cd.zi = base.zi;
    cd.zp = base.zp;
    cd.imputed_column = observed.target_column();
    cd.imputed.assign(base.n, 0);

    // Poison the masked entries so an incomplete fill cannot silently
    // leak the generator's hidden truth.
    auto& target = cd.column(cd.imputed_column);
    const auto& mask = observed.active_mask();
    for (std::size_t i = 0; i < base.n; ++i) {
        if (mask[i]) {
            target[i] = std::numeric_limits<double>::quiet_NaN();
            cd.imputed[i] = 1;
        }
    }
    return cd;
}

} // namespace

std::vector<CompletedDataset> impute_multiple(const ObservedDataset& observed,
                                              const ImputationStrategy& strategy,
                                              MissingTarget target, int m,
                                              const RngStream& stream) {
    if (m < 2) throw ArgumentError("impute_multiple: m must be >= 2");
    if (target != observed.target) {
        throw ArgumentError("impute_multiple: target does not match the observed dataset");
    }

    const std::string target_column = observed.target_column();
    const TableView view = observed.view();

    std::vector<std::vector<RowIndex>> selectors;
    if (strategy.stratified) {
        std::vector<RowIndex> treated, control;
        for (std::size_t i = 0; i < observed.base.n; ++i) {
            (observed.base.x[i] == 1.0 ? treated : control).push_back(i);
        }
        selectors.push_back(std::move(treated));
        selectors.push_back(std::move(control));
    } else {
        selectors.push_back(all_rows(observed.base.n));
    }

    std::vector<CompletedDataset> completed;
    completed.reserve(static_cast<std::size_t>(m));
    for (int j = 1; j <= m; ++j) {
        CompletedDataset cd = begin_completion(observed);
        auto& filled = cd.column(target_column);
        for (std::size_t s = 0; s < selectors.size(); ++s) {
            const int stratum = strategy.stratified ? (s == 0 ? 1 : 0) : 2;
            RngStream sub = stream.fork(purpose::imputation_draw(j, stratum));
            const NormDraws draws =
                norm_draw(view, target_column, strategy.formula, selectors[s], sub);
            for (std::size_t i = 0; i < draws.rows.size(); ++i) {
                filled[draws.rows[i]] = draws.values[i];
            }
        }
        for (const double v : filled) {
            if (std::isnan(v)) {
                throw IntegrityError("imputation left masked entries unfilled");
            }
        }
        cd.imputation_index = j;
        completed.push_back(std::move(cd));
    }
    return completed;
}

CompletedDataset complete_case(const ObservedDataset& observed) {
    const CompleteDataset& base = observed.base;
    std::vector<RowIndex> keep;
    keep.reserve(base.n);
    std::size_t treated = 0, control = 0;
    for (std::size_t i = 0; i < base.n; ++i) {
        if (observed.miss_y[i] == 0 && observed.miss_conf[i] == 0) {
            keep.push_back(i);
            (base.x[i] == 1.0 ? treated : control) += 1;
        }
    }
    if (treated < 30 || control < 30) {
        throw DegenerateCellError("complete_case: fewer than 30 fully observed rows in an arm (" +
                                  std::to_string(treated) + " treated, " +
                                  std::to_string(control) + " control)");
    }

    CompletedDataset cd;
    cd.n = keep.size();
    cd.kind = base.kind;
    cd.imputation_index = 0;
    const auto subset = [&](const std::vector<double>& src, std::vector<double>& dst) {
        if (src.empty()) return;
        dst.reserve(keep.size());
        for (const RowIndex r : keep) dst.push_back(src[r]);
    };
    subset(base.x, cd.x);
    subset(base.y, cd.y);
    subset(base.zc, cd.zc);
    subset(base.zc1, cd.zc1);
    subset(base.zc2, cd.zc2);
    subset(base.zi, cd.zi);
    subset(base.zp, cd.zp);
    cd.imputed.assign(cd.n, 0);
    return cd;
}

} // namespace drmi
