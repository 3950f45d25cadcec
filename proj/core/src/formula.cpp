#include "drmi/formula.hpp"

#include "drmi/errors.hpp"
#include "drmi/spline.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace drmi {

std::vector<RowIndex> all_rows(std::size_t n) {
    std::vector<RowIndex> rows(n);
    std::iota(rows.begin(), rows.end(), RowIndex{0});
    return rows;
}

namespace {

std::string term_label(const Term& term) {
    switch (term.transform) {
        case Transform::identity: return term.variable;
        case Transform::square: return term.variable + "^2";
        case Transform::natural_spline:
            return "ns(" + term.variable + "," + std::to_string(term.spline_df) + ")";
    }
    return term.variable;
}

const ColumnRef& checked_column(const TableView& data, const std::string& name,
                                std::span<const RowIndex> training_rows,
                                std::span<const RowIndex> eval_rows) {
    const ColumnRef* ref = data.find(name);
    if (ref == nullptr) {
        throw ArgumentError("formula references unknown column '" + name + "'");
    }
    if (ref->mask != nullptr) {
        for (auto rows : {training_rows, eval_rows}) {
            for (const RowIndex r : rows) {
                if ((*ref->mask)[r]) {
                    throw IntegrityError("column '" + name +
                                         "' has masked entries on requested rows; "
                                         "complete the data before modeling");
                }
            }
        }
    }
    return *ref;
}

std::vector<double> gather(const std::vector<double>& values, std::span<const RowIndex> rows) {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const RowIndex r : rows) out.push_back(values[r]);
    return out;
}

// Realized columns for one term (df columns for a spline, one otherwise).
Eigen::MatrixXd realize_term(const Term& term, const TableView& data,
                             std::span<const RowIndex> training_rows,
                             std::span<const RowIndex> eval_rows) {
    const ColumnRef& ref = checked_column(data, term.variable, training_rows, eval_rows);
    const std::vector<double>& column = *ref.values;

    switch (term.transform) {
        case Transform::identity: {
            Eigen::MatrixXd out(eval_rows.size(), 1);
            for (std::size_t i = 0; i < eval_rows.size(); ++i) out(i, 0) = column[eval_rows[i]];
            return out;
        }
        case Transform::square: {
            Eigen::MatrixXd out(eval_rows.size(), 1);
            for (std::size_t i = 0; i < eval_rows.size(); ++i) {
                const double v = column[eval_rows[i]];
                out(i, 0) = v * v;
            }
            return out;
        }
        case Transform::natural_spline: {
            const std::vector<double> train = gather(column, training_rows);
            const std::vector<double> eval = gather(column, eval_rows);
            return natural_spline_basis(train, eval, term.spline_df).values;
        }
    }
    throw ArgumentError("unknown transform");
}

std::vector<std::string> term_labels(const Term& term) {
    if (term.transform == Transform::natural_spline) {
        std::vector<std::string> labels;
        for (int k = 1; k <= term.spline_df; ++k) {
            labels.push_back(term_label(term) + "." + std::to_string(k));
        }
        return labels;
    }
    return {term_label(term)};
}

void validate_formula(const ModelFormula& formula) {
    const auto check_term = [&](const Term& term) {
        if (term.variable == formula.response) {
            throw ArgumentError("response '" + formula.response +
                                "' may not appear on the right-hand side");
        }
        if (term.transform == Transform::natural_spline && term.spline_df < 1) {
            throw ArgumentError("spline term on '" + term.variable + "' needs df >= 1");
        }
        if (formula.stratify_by_exposure && term.variable == "x") {
            throw ArgumentError("stratified formulas must not list the exposure as a term");
        }
    };
    for (const Term& term : formula.terms) check_term(term);
    for (const auto& [a, b] : formula.interactions) {
        check_term(a);
        check_term(b);
    }
}

} // namespace

DesignMatrix build_design(const ModelFormula& formula, const TableView& data,
                          std::span<const RowIndex> training_rows,
                          std::span<const RowIndex> eval_rows) {
    validate_formula(formula);

    std::vector<Eigen::MatrixXd> blocks;
    std::vector<std::string> labels;

    if (formula.include_intercept) {
        blocks.emplace_back(Eigen::MatrixXd::Ones(eval_rows.size(), 1));
        labels.emplace_back("intercept");
    }
    for (const Term& term : formula.terms) {
        blocks.push_back(realize_term(term, data, training_rows, eval_rows));
        for (auto& label : term_labels(term)) labels.push_back(std::move(label));
    }
    for (const auto& [a, b] : formula.interactions) {
        const Eigen::MatrixXd left = realize_term(a, data, training_rows, eval_rows);
        const Eigen::MatrixXd right = realize_term(b, data, training_rows, eval_rows);
        Eigen::MatrixXd prod(eval_rows.size(), left.cols() * right.cols());
        Eigen::Index col = 0;
        for (Eigen::Index i = 0; i < left.cols(); ++i) {
            for (Eigen::Index j = 0; j < right.cols(); ++j, ++col) {
                prod.col(col) = left.col(i).cwiseProduct(right.col(j));
            }
        }
        blocks.push_back(std::move(prod));
        const auto left_labels = term_labels(a);
        const auto right_labels = term_labels(b);
        for (const auto& ll : left_labels) {
            for (const auto& rl : right_labels) labels.push_back(ll + ":" + rl);
        }
    }

    Eigen::Index total_cols = 0;
    for (const auto& block : blocks) total_cols += block.cols();
    if (total_cols == 0) {
        throw ArgumentError("formula produces an empty design");
    }

    DesignMatrix design;
    design.values.resize(static_cast<Eigen::Index>(eval_rows.size()), total_cols);
    Eigen::Index offset = 0;
    for (const auto& block : blocks) {
        design.values.middleCols(offset, block.cols()) = block;
        offset += block.cols();
    }
    design.labels = std::move(labels);
    return design;
}

Eigen::VectorXd response_vector(const ModelFormula& formula, const TableView& data,
                                std::span<const RowIndex> rows) {
    const ColumnRef& ref = checked_column(data, formula.response, rows, {});
    Eigen::VectorXd out(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) out[i] = (*ref.values)[rows[i]];
    return out;
}

std::string render_formula(const ModelFormula& formula) {
    std::ostringstream out;
    out << formula.response << " ~ ";
    bool first = true;
    const auto append = [&](const std::string& text) {
        if (!first) out << " + ";
        out << text;
        first = false;
    };
    for (const Term& term : formula.terms) append(term_label(term));
    for (const auto& [a, b] : formula.interactions) append(term_label(a) + ":" + term_label(b));
    if (!formula.include_intercept) append("0");
    if (first) out << "1";
    if (formula.stratify_by_exposure) out << " | x";
    return out.str();
}

namespace {

std::string strip(std::string_view text) {
    std::size_t begin = 0, end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    return std::string(text.substr(begin, end - begin));
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == sep) {
            parts.push_back(strip(text.substr(start, i - start)));
            start = i + 1;
        }
    }
    return parts;
}

Term parse_simple_term(const std::string& text) {
    if (text.starts_with("ns(") && text.ends_with(")")) {
        const auto inner = split(text.substr(3, text.size() - 4), ',');
        if (inner.size() != 2 || inner[0].empty()) {
            throw ArgumentError("malformed spline term '" + text + "'");
        }
        int df = 0;
        try {
            df = std::stoi(inner[1]);
        } catch (const std::exception&) {
            throw ArgumentError("malformed spline df in '" + text + "'");
        }
        return Term::spline(inner[0], df);
    }
    if (text.ends_with("^2")) {
        const std::string name = strip(std::string_view(text).substr(0, text.size() - 2));
        if (name.empty()) throw ArgumentError("malformed squared term '" + text + "'");
        return Term::squared(name);
    }
    if (text.empty()) throw ArgumentError("empty term in formula");
    return Term::plain(text);
}

} // namespace

ModelFormula parse_formula(std::string_view text) {
    const auto tilde = text.find('~');
    if (tilde == std::string_view::npos) {
        throw ArgumentError("formula must contain '~'");
    }

    ModelFormula formula;
    formula.response = strip(text.substr(0, tilde));
    if (formula.response.empty()) throw ArgumentError("formula has an empty response");

    std::string_view rhs = text.substr(tilde + 1);
    const auto bar = rhs.find('|');
    if (bar != std::string_view::npos) {
        const std::string strat = strip(rhs.substr(bar + 1));
        if (strat != "x") {
            throw ArgumentError("only '| x' exposure stratification is supported");
        }
        formula.stratify_by_exposure = true;
        rhs = rhs.substr(0, bar);
    }

    for (const std::string& piece : split(rhs, '+')) {
        if (piece == "0") {
            formula.include_intercept = false;
        } else if (piece == "1") {
            formula.include_intercept = true;
        } else if (const auto colon = piece.find(':'); colon != std::string::npos) {
            formula.interactions.emplace_back(parse_simple_term(strip(piece.substr(0, colon))),
                                              parse_simple_term(strip(piece.substr(colon + 1))));
        } else {
            formula.terms.push_back(parse_simple_term(piece));
        }
    }
    validate_formula(formula);
    return formula;
}

} // namespace drmi
