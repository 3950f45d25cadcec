#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace drmi {

inline double expit(double t) {
    // Stable on both tails.
    if (t >= 0.0) {
        const double e = std::exp(-t);
        return 1.0 / (1.0 + e);
    }
    const double e = std::exp(t);
    return e / (1.0 + e);
}

// log(1 + exp(t)) without overflow.
inline double log1pexp(double t) {
    if (t > 0.0) return t + std::log1p(std::exp(-t));
    return std::log1p(std::exp(t));
}

// Dense regression design, row-major in the usual Eigen sense
// (values(i, j) = observation i, term j). The first column is the
// intercept unless the generating formula suppressed it.
struct DesignMatrix {
    Eigen::MatrixXd values;
    std::vector<std::string> labels;

    Eigen::Index rows() const { return values.rows(); }
    Eigen::Index cols() const { return values.cols(); }
};

struct LinearFit {
    Eigen::VectorXd coefficients;
    double residual_variance = 0.0; // RSS / (n_effective - p)
    Eigen::MatrixXd gram_inverse;   // (X' W X)^{-1}
    long degrees_freedom = 0;       // n_effective - p
};

struct LogisticFit {
    Eigen::VectorXd coefficients;
    bool converged = false;
    int iterations = 0;
    double max_abs_score = 0.0;
};

// Weighted least squares via Householder QR (column-pivoted so that a
// rank-deficient design can name its offending columns). Weights, when
// given, must be nonnegative with at least cols() strictly positive
// entries; n_effective is the count of strictly positive weights.
LinearFit wls_fit(const DesignMatrix& design, const Eigen::VectorXd& response,
                  const std::optional<Eigen::VectorXd>& weights = std::nullopt);

// Binomial-logit maximum likelihood by iteratively reweighted least
// squares. Converges when the max absolute score drops below 1e-8 or the
// relative deviance change drops below 1e-10, within 50 iterations.
// Throws SeparationError when fitted probabilities pin to 0/1 within
// 1e-10 while the score has not converged.
LogisticFit logistic_fit(const DesignMatrix& design, const Eigen::VectorXd& response);

inline Eigen::VectorXd predict(const DesignMatrix& design, const Eigen::VectorXd& coefficients) {
    return design.values * coefficients;
}

} // namespace drmi
