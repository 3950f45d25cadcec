#pragma once

#include "drmi/estimators.hpp"

#include <span>

namespace drmi {

// Combined result across m imputed analyses:
//   delta_bar = mean of estimates
//   u_bar     = mean of within variances
//   b         = between variance (denominator m - 1)
//   t         = u_bar + (1 + 1/m) b
//   dof       = (m - 1) (1 + u_bar / ((1 + 1/m) b))^2, +inf when b = 0
// The interval uses a Student-t quantile on dof, or the normal quantile
// when dof is infinite.
struct PooledResult {
    double delta_bar = 0.0;
    double u_bar = 0.0;
    double b = 0.0;
    double t = 0.0;
    int m = 0;
    double dof = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

PooledResult pool_rubin(std::span<const EstimateWithVariance> estimates,
                        double confidence = 0.95);

// Complete-case path: no imputations to combine, normal-quantile interval
// on the single estimate.
PooledResult single_estimate_normal(const EstimateWithVariance& estimate,
                                    double confidence = 0.95);

} // namespace drmi
