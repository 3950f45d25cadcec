#pragma once

#include "drmi/linalg.hpp"

#include <span>

namespace drmi {

// Natural cubic spline basis with df columns: boundary knots at
// min/max(train_values), df - 1 internal knots at equally spaced
// type-7 quantiles of train_values. The basis is C^2 inside the boundary
// and exactly linear outside it. Knots derive from train_values only, so
// the same basis extends to arbitrary eval_values.
//
// The parameterization is the reduced truncated-power form: column 0 is
// the identity, the remaining columns are scaled differences of truncated
// cubes. Callers should compare by column space, not by column values.
DesignMatrix natural_spline_basis(std::span<const double> train_values,
                                  std::span<const double> eval_values, int df);

// Type-7 (linear interpolation of order statistics) sample quantile.
double quantile_type7(std::span<const double> sorted_values, double prob);

} // namespace drmi
