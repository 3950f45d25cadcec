#include "drmi/spline.hpp"

#include "drmi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

namespace drmi {

double quantile_type7(std::span<const double> sorted_values, double prob) {
    const std::size_t n = sorted_values.size();
    if (n == 0) throw ArgumentError("quantile of empty sample");
    const double h = (static_cast<double>(n) - 1.0) * prob;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, n - 1);
    const double frac = h - std::floor(h);
    return sorted_values[lo] + frac * (sorted_values[hi] - sorted_values[lo]);
}

DesignMatrix natural_spline_basis(std::span<const double> train_values,
                                  std::span<const double> eval_values, int df) {
    if (df < 1) throw ArgumentError("natural_spline_basis: df must be >= 1");
    if (train_values.empty()) throw ArgumentError("natural_spline_basis: empty training values");

    const std::set<double> distinct(train_values.begin(), train_values.end());
    if (static_cast<int>(distinct.size()) < df + 2) {
        throw ArgumentError("natural_spline_basis: df = " + std::to_string(df) +
                            " needs at least " + std::to_string(df + 2) +
                            " distinct training values, got " + std::to_string(distinct.size()));
    }

    std::vector<double> sorted(train_values.begin(), train_values.end());
    std::sort(sorted.begin(), sorted.end());

    // df + 1 knots: the two boundaries plus df - 1 internal quantiles.
    std::vector<double> knots;
    knots.reserve(static_cast<std::size_t>(df) + 1);
    knots.push_back(sorted.front());
    for (int k = 1; k < df; ++k) {
        knots.push_back(quantile_type7(sorted, static_cast<double>(k) / df));
    }
    knots.push_back(sorted.back());
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (!(knots[i] > knots[i - 1])) {
            throw ArgumentError("natural_spline_basis: knots are not strictly increasing");
        }
    }

    const std::size_t k_total = knots.size();
    const double boundary_high = knots.back();
    const auto cube_plus = [](double t) { return t > 0.0 ? t * t * t : 0.0; };
    // d_j(x) = [(x - k_j)_+^3 - (x - k_max)_+^3] / (k_max - k_j)
    const auto d = [&](std::size_t j, double x) {
        return (cube_plus(x - knots[j]) - cube_plus(x - boundary_high)) /
               (boundary_high - knots[j]);
    };

    DesignMatrix basis;
    basis.values.resize(static_cast<Eigen::Index>(eval_values.size()), df);
    basis.labels.reserve(static_cast<std::size_t>(df));
    for (int c = 0; c < df; ++c) {
        basis.labels.push_back("ns." + std::to_string(c + 1));
    }

    for (std::size_t i = 0; i < eval_values.size(); ++i) {
        const double x = eval_values[i];
        const auto row = static_cast<Eigen::Index>(i);
        basis.values(row, 0) = x;
        // Differences against the last interior d term keep the tail linear.
        for (int c = 1; c < df; ++c) {
            const auto j = static_cast<std::size_t>(c - 1);
            basis.values(row, c) = d(j, x) - d(k_total - 2, x);
        }
    }
    return basis;
}

} // namespace drmi
