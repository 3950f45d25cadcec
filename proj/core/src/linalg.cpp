#include "drmi/linalg.hpp"

#include "drmi/errors.hpp"

#include <sstream>

namespace drmi {

namespace {

constexpr double kScoreTol = 1e-8;
constexpr double kDevianceTol = 1e-10;
constexpr double kPinTol = 1e-10;
constexpr int kMaxIrlsIterations = 50;

std::string offending_columns(const DesignMatrix& design,
                              const Eigen::ColPivHouseholderQR<Eigen::MatrixXd>& qr) {
    const auto perm = qr.colsPermutation().indices();
    std::ostringstream msg;
    bool first = true;
    for (Eigen::Index k = qr.rank(); k < design.cols(); ++k) {
        const Eigen::Index col = perm[k];
        if (!first) msg << ", ";
        msg << (col < static_cast<Eigen::Index>(design.labels.size())
                    ? design.labels[static_cast<std::size_t>(col)]
                    : "column " + std::to_string(col));
        first = false;
    }
    return msg.str();
}

// Solve min ||sqrt(w) (X b - y)|| and return (b, (X'WX)^{-1}).
struct WeightedSolve {
    Eigen::VectorXd coefficients;
    Eigen::MatrixXd gram_inverse;
};

WeightedSolve solve_weighted(const DesignMatrix& design, const Eigen::VectorXd& response,
                             const Eigen::VectorXd& sqrt_weights) {
    const Eigen::MatrixXd scaled = sqrt_weights.asDiagonal() * design.values;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(scaled);
    if (qr.rank() < design.cols()) {
        throw SingularMatrixError("rank-deficient design; offending columns: " +
                                  offending_columns(design, qr));
    }

    WeightedSolve out;
    out.coefficients = qr.solve(sqrt_weights.cwiseProduct(response));

    const Eigen::Index p = design.cols();
    const Eigen::MatrixXd r_inv = qr.matrixR()
                                      .topLeftCorner(p, p)
                                      .triangularView<Eigen::Upper>()
                                      .solve(Eigen::MatrixXd::Identity(p, p));
    Eigen::MatrixXd gram_inv = r_inv * r_inv.transpose();
    gram_inv = qr.colsPermutation() * gram_inv * qr.colsPermutation().transpose();
    out.gram_inverse = 0.5 * (gram_inv + gram_inv.transpose());
    return out;
}

void check_dimensions(const DesignMatrix& design, const Eigen::VectorXd& response) {
    if (design.rows() < design.cols()) {
        throw ArgumentError("design has fewer rows (" + std::to_string(design.rows()) +
                            ") than columns (" + std::to_string(design.cols()) + ")");
    }
    if (response.size() != design.rows()) {
        throw ArgumentError("response length " + std::to_string(response.size()) +
                            " does not match design rows " + std::to_string(design.rows()));
    }
    if (!design.values.allFinite()) {
        throw ArgumentError("design contains non-finite entries");
    }
    if (!response.allFinite()) {
        throw ArgumentError("response contains non-finite entries");
    }
}

} // namespace

LinearFit wls_fit(const DesignMatrix& design, const Eigen::VectorXd& response,
                  const std::optional<Eigen::VectorXd>& weights) {
    check_dimensions(design, response);

    const Eigen::Index n = design.rows();
    const Eigen::Index p = design.cols();

    Eigen::VectorXd w = Eigen::VectorXd::Ones(n);
    long n_effective = static_cast<long>(n);
    if (weights) {
        if (weights->size() != n) {
            throw ArgumentError("weights length does not match response length");
        }
        if ((weights->array() < 0.0).any()) {
            throw ArgumentError("weights must be nonnegative");
        }
        w = *weights;
        n_effective = static_cast<long>((w.array() > 0.0).count());
        if (n_effective < static_cast<long>(p)) {
            throw ArgumentError("fewer strictly positive weights than design columns");
        }
    }

    const auto solved = solve_weighted(design, response, w.cwiseSqrt());

    LinearFit fit;
    fit.coefficients = solved.coefficients;
    fit.gram_inverse = solved.gram_inverse;
    fit.degrees_freedom = n_effective - static_cast<long>(p);

    const Eigen::VectorXd residuals = response - design.values * fit.coefficients;
    const double rss = (w.array() * residuals.array().square()).sum();
    fit.residual_variance =
        fit.degrees_freedom > 0 ? rss / static_cast<double>(fit.degrees_freedom) : 0.0;
    return fit;
}

LogisticFit logistic_fit(const DesignMatrix& design, const Eigen::VectorXd& response) {
    check_dimensions(design, response);
    for (Eigen::Index i = 0; i < response.size(); ++i) {
        if (response[i] != 0.0 && response[i] != 1.0) {
            throw ArgumentError("logistic response must be 0/1");
        }
    }

    const Eigen::Index n = design.rows();
    const Eigen::Index p = design.cols();

    LogisticFit fit;
    fit.coefficients = Eigen::VectorXd::Zero(p);

    double previous_deviance = std::numeric_limits<double>::infinity();
    double last_step = 0.0;
    Eigen::VectorXd eta(n), prob(n), irls_weight(n), working(n);
    bool any_pinned = false;

    for (int iter = 1; iter <= kMaxIrlsIterations; ++iter) {
        fit.iterations = iter;
        eta = design.values * fit.coefficients;

        double deviance = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            prob[i] = expit(eta[i]);
            deviance += 2.0 * (log1pexp(eta[i]) - response[i] * eta[i]);
        }

        const Eigen::VectorXd score = design.values.transpose() * (response - prob);
        fit.max_abs_score = score.lpNorm<Eigen::Infinity>();

        any_pinned = (prob.array() < kPinTol).any() || (prob.array() > 1.0 - kPinTol).any();
        const bool score_converged = fit.max_abs_score < kScoreTol;
        const bool deviance_converged =
            std::abs(deviance - previous_deviance) <
            kDevianceTol * (std::abs(previous_deviance) + kDevianceTol);

        if (score_converged || deviance_converged) {
            // Separation also drives the score to 0, but does so with the
            // coefficients still marching along the separating direction.
            // A finite interior MLE is reached with a vanishing final step.
            const double step_scale = 1.0 + fit.coefficients.lpNorm<Eigen::Infinity>();
            if (any_pinned && last_step > 1e-4 * step_scale) {
                throw SeparationError(
                    "fitted probabilities pinned to 0/1 while coefficients diverge");
            }
            fit.converged = true;
            return fit;
        }
        previous_deviance = deviance;

        for (Eigen::Index i = 0; i < n; ++i) {
            irls_weight[i] = std::max(prob[i] * (1.0 - prob[i]), 1e-300);
            working[i] = eta[i] + (response[i] - prob[i]) / irls_weight[i];
        }

        try {
            const Eigen::VectorXd next =
                solve_weighted(design, working, irls_weight.cwiseSqrt()).coefficients;
            last_step = (next - fit.coefficients).lpNorm<Eigen::Infinity>();
            fit.coefficients = next;
        } catch (const SingularMatrixError&) {
            if (any_pinned) {
                throw SeparationError(
                    "weighted Gram matrix collapsed with probabilities pinned to 0/1");
            }
            throw;
        }
    }

    if (any_pinned) {
        throw SeparationError("fitted probabilities pinned to 0/1 without convergence");
    }
    fit.converged = false;
    return fit;
}

} // namespace drmi
