#include "drmi/pooling.hpp"

#include "drmi/errors.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include <cmath>
#include <limits>

namespace drmi {

namespace {

double upper_quantile(double dof, double confidence) {
    const double prob = 0.5 * (1.0 + confidence);
    if (std::isinf(dof)) {
        return boost::math::quantile(boost::math::normal_distribution<double>(), prob);
    }
    return boost::math::quantile(boost::math::students_t_distribution<double>(dof), prob);
}

} // namespace

PooledResult pool_rubin(std::span<const EstimateWithVariance> estimates, double confidence) {
    const auto m = estimates.size();
    if (m < 2) {
        throw ArgumentError("pool_rubin: need at least 2 estimates (between variance undefined)");
    }
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw ArgumentError("pool_rubin: confidence must lie in (0, 1)");
    }
    for (const auto& est : estimates) {
        if (!std::isfinite(est.delta_hat) || !std::isfinite(est.within_variance)) {
            throw ArgumentError("pool_rubin: non-finite estimate or variance");
        }
    }

    PooledResult pooled;
    pooled.m = static_cast<int>(m);

    for (const auto& est : estimates) {
        pooled.delta_bar += est.delta_hat;
        pooled.u_bar += est.within_variance;
    }
    pooled.delta_bar /= static_cast<double>(m);
    pooled.u_bar /= static_cast<double>(m);

    double ss = 0.0;
    for (const auto& est : estimates) {
        const double d = est.delta_hat - pooled.delta_bar;
        ss += d * d;
    }
    pooled.b = ss / static_cast<double>(m - 1);

    const double inflation = 1.0 + 1.0 / static_cast<double>(m);
    pooled.t = pooled.u_bar + inflation * pooled.b;

    if (pooled.b > 0.0) {
        const double ratio = pooled.u_bar / (inflation * pooled.b);
        pooled.dof = static_cast<double>(m - 1) * (1.0 + ratio) * (1.0 + ratio);
    } else {
        pooled.dof = std::numeric_limits<double>::infinity();
    }

    const double half_width = upper_quantile(pooled.dof, confidence) * std::sqrt(pooled.t);
    pooled.ci_low = pooled.delta_bar - half_width;
    pooled.ci_high = pooled.delta_bar + half_width;
    return pooled;
}

PooledResult single_estimate_normal(const EstimateWithVariance& estimate, double confidence) {
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw ArgumentError("confidence must lie in (0, 1)");
    }
    PooledResult pooled;
    pooled.delta_bar = estimate.delta_hat;
    pooled.u_bar = estimate.within_variance;
    pooled.b = 0.0;
    pooled.t = estimate.within_variance;
    pooled.m = 1;
    pooled.dof = std::numeric_limits<double>::infinity();
    const double half_width =
        upper_quantile(pooled.dof, confidence) * std::sqrt(pooled.t);
    pooled.ci_low = pooled.delta_bar - half_width;
    pooled.ci_high = pooled.delta_bar + half_width;
    return pooled;
}

} // namespace drmi
