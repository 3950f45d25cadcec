#pragma once

#include "drmi/dataset.hpp"
#include "drmi/linalg.hpp"

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace drmi {

enum class Transform : std::uint8_t { identity, square, natural_spline };

struct Term {
    std::string variable;
    Transform transform = Transform::identity;
    int spline_df = 0;

    static Term plain(std::string name) { return {std::move(name), Transform::identity, 0}; }
    static Term squared(std::string name) { return {std::move(name), Transform::square, 0}; }
    static Term spline(std::string name, int df) {
        return {std::move(name), Transform::natural_spline, df};
    }

    bool operator==(const Term&) const = default;
};

// Declarative model formula shared by the imputation and analysis models.
// Stratified formulas exclude the exposure from the term list; the
// stratifier is always the exposure x.
struct ModelFormula {
    std::string response;
    std::vector<Term> terms;
    bool include_intercept = true;
    std::vector<std::pair<Term, Term>> interactions;
    bool stratify_by_exposure = false;

    bool operator==(const ModelFormula&) const = default;
};

// Realizes a formula's right-hand side over eval_rows, with any spline
// knots learned from training_rows only. Column order: intercept, main
// terms in declaration order (each spline expands to a df-column block),
// interaction products last. Referencing a column with masked entries on
// any requested row throws IntegrityError.
DesignMatrix build_design(const ModelFormula& formula, const TableView& data,
                          std::span<const RowIndex> training_rows,
                          std::span<const RowIndex> eval_rows);

inline DesignMatrix build_design(const ModelFormula& formula, const TableView& data,
                                 std::span<const RowIndex> rows) {
    return build_design(formula, data, rows, rows);
}

// Response values over the given rows, with the same masked-value guard.
Eigen::VectorXd response_vector(const ModelFormula& formula, const TableView& data,
                                std::span<const RowIndex> rows);

// Text form, e.g. "zc ~ y + ns(zp,3) | x" for an exposure-stratified
// model and "y ~ x + zc + zp + 0" for an intercept-free pooled one.
std::string render_formula(const ModelFormula& formula);
ModelFormula parse_formula(std::string_view text);

std::vector<RowIndex> all_rows(std::size_t n);

} // namespace drmi
