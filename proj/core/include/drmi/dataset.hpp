#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace drmi {

enum class DgpKind : std::uint8_t {
    linear_het,    // Y = 0.5 X + Zc + 2 Zp + 0.5 X*Zc + e
    linear_hom,    // Y = X + Zc + 2 Zp + e
    nonlinear_het, // Y = 0.5 X + Zc + 2 Zp^2 + 0.5 X*Zc + e
    multi_1,       // two confounders, quadratic Zc2 in the exposure model
    multi_2,       // two confounders, quadratic Zc2 in the outcome
    multi_3        // two confounders, quadratic Zc2 in both
};

enum class MissingTarget : std::uint8_t { outcome, confounder };

bool is_multi_confounder(DgpKind kind);
std::string to_string(DgpKind kind);
std::string to_string(MissingTarget target);
DgpKind parse_dgp_kind(const std::string& name);
MissingTarget parse_missing_target(const std::string& name);

// Name of the confounder column a missingness mechanism targets:
// "zc" for the single-confounder generators, "zc1" otherwise.
std::string missing_confounder_name(DgpKind kind);

using RowIndex = std::size_t;

// Non-owning reference to one named column plus its optional mask
// (1 = masked). A null mask means the column is fully observed.
struct ColumnRef {
    const std::vector<double>* values = nullptr;
    const std::vector<std::uint8_t>* mask = nullptr;
};

// Flat name -> column lookup shared by every dataset shape. build_design
// and the estimators only see data through this view, which is what lets
// the masked-value guard live in one place.
class TableView {
public:
    TableView() = default;
    explicit TableView(std::size_t n) : n_(n) {}

    void add(std::string name, const std::vector<double>* values,
             const std::vector<std::uint8_t>* mask = nullptr);
    const ColumnRef* find(const std::string& name) const;
    std::size_t n() const { return n_; }

private:
    std::size_t n_ = 0;
    std::vector<std::pair<std::string, ColumnRef>> columns_;
};

// One fully generated replication: covariates, exposure, realized outcome,
// and both potential outcomes. y == x*y1 + (1-x)*y0 elementwise.
struct CompleteDataset {
    std::size_t n = 0;
    DgpKind kind = DgpKind::linear_het;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> y1;
    std::vector<double> y0;
    std::vector<double> zc;  // single-confounder generators
    std::vector<double> zc1; // multi-confounder generators
    std::vector<double> zc2;
    std::vector<double> zi;
    std::vector<double> zp;
    double true_ate = 1.0;

    // Modeling view: excludes the potential outcomes, which no estimator
    // may touch.
    TableView view() const;
};

// A complete dataset plus missingness masks. Exactly one mask is active
// per scenario cell; masked entries must never reach a fit.
struct ObservedDataset {
    CompleteDataset base;
    MissingTarget target = MissingTarget::confounder;
    std::vector<std::uint8_t> miss_y;
    std::vector<std::uint8_t> miss_conf;

    TableView view() const;
    const std::vector<std::uint8_t>& active_mask() const {
        return target == MissingTarget::outcome ? miss_y : miss_conf;
    }
    std::string target_column() const {
        return target == MissingTarget::outcome ? "y" : missing_confounder_name(base.kind);
    }
};

// One imputed (or complete-case subset) dataset ready for analysis.
// Non-missing entries equal the observed entries exactly.
struct CompletedDataset {
    std::size_t n = 0;
    DgpKind kind = DgpKind::linear_het;
    int imputation_index = 0; // 1..m, 0 for complete-case / no imputation
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> zc;
    std::vector<double> zc1;
    std::vector<double> zc2;
    std::vector<double> zi;
    std::vector<double> zp;
    std::string imputed_column;          // empty when nothing was imputed
    std::vector<std::uint8_t> imputed;   // per-row provenance for that column

    TableView view() const;
    std::vector<double>& column(const std::string& name);
};

} // namespace drmi
