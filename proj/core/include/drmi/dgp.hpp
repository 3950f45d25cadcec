#pragma once

#include "drmi/dataset.hpp"
#include "drmi/rng.hpp"

#include <iosfwd>

namespace drmi {

// Single-confounder generators. Draw order (all column-wise): zi, zp, zc,
// x, then the shared outcome noise. The exposure follows
// X ~ Bernoulli(expit(1 - zc + 2 zi)); potential outcomes share one noise
// term per row, so y1 - y0 is exact in every row and the mean treatment
// effect is 1 in expectation for every generator.
CompleteDataset generate_primary(DgpKind kind, std::size_t n, RngStream& stream);

// Two-confounder generators (scenarios 1..3 == multi_1..multi_3). Draw
// order: zc1, zc2, x, noise. Scenarios 1 and 3 share
// X ~ Bernoulli(expit(-(zc1 + zc2^2))); scenario 2 uses
// expit(-(zc1 + zc2)). Outcomes add zc2 (scenario 1) or zc2^2
// (scenarios 2, 3), always with the 0.5 X*zc1 interaction.
CompleteDataset generate_multi(int scenario, std::size_t n, RngStream& stream);

// Dispatch on kind to one of the two generators above.
CompleteDataset generate(DgpKind kind, std::size_t n, RngStream& stream);

// Draws the MAR mask for the selected target, one Bernoulli per row:
//   P(miss y)    = expit(-(0.65 + zc))      (zc1 for multi-confounder kinds)
//   P(miss conf) = expit(-(1.15 + 0.5 x))
// The untargeted mask is all zeros. Base data is copied untouched.
ObservedDataset apply_missingness(const CompleteDataset& ds, MissingTarget target,
                                  RngStream& stream);

// Diagnostic variant: both masks empty (all observed); used to check that
// the imputation pipeline is exact when there is nothing to impute.
ObservedDataset observe_fully(const CompleteDataset& ds, MissingTarget target);

// Debug dump: x, y, zc (or zc1/zc2), zi, zp, miss_y, miss_conf.
void dump_csv(const ObservedDataset& observed, std::ostream& out);

} // namespace drmi
