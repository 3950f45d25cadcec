#pragma once

#include <stdexcept>
#include <string>

namespace drmi {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid arguments: dimension mismatches, out-of-range parameters,
// unknown names, malformed formulas or configs.
class ArgumentError : public Error {
public:
    using Error::Error;
};

// Rank-deficient design or non-invertible Gram matrix. The message names
// the offending columns when they can be identified.
class SingularMatrixError : public Error {
public:
    using Error::Error;
};

// Complete or quasi-complete separation in a logistic fit.
class SeparationError : public Error {
public:
    using Error::Error;
};

// A masked (missing) value was referenced without completion.
class IntegrityError : public Error {
public:
    using Error::Error;
};

// A replication-level failure: too few training rows, an arm with fewer
// rows than parameters, a nuisance fit that did not converge. The harness
// records these and excludes the replication from aggregation.
class DegenerateCellError : public Error {
public:
    using Error::Error;
};

} // namespace drmi
