#include "drmi/dataset.hpp"

#include "drmi/errors.hpp"

namespace drmi {

bool is_multi_confounder(DgpKind kind) {
    return kind == DgpKind::multi_1 || kind == DgpKind::multi_2 || kind == DgpKind::multi_3;
}

std::string to_string(DgpKind kind) {
    switch (kind) {
        case DgpKind::linear_het: return "linear_het";
        case DgpKind::linear_hom: return "linear_hom";
        case DgpKind::nonlinear_het: return "nonlinear_het";
        case DgpKind::multi_1: return "multi_1";
        case DgpKind::multi_2: return "multi_2";
        case DgpKind::multi_3: return "multi_3";
    }
    return "unknown";
}

std::string to_string(MissingTarget target) {
    return target == MissingTarget::outcome ? "outcome" : "confounder";
}

DgpKind parse_dgp_kind(const std::string& name) {
    if (name == "linear_het") return DgpKind::linear_het;
    if (name == "linear_hom") return DgpKind::linear_hom;
    if (name == "nonlinear_het") return DgpKind::nonlinear_het;
    if (name == "multi_1") return DgpKind::multi_1;
    if (name == "multi_2") return DgpKind::multi_2;
    if (name == "multi_3") return DgpKind::multi_3;
    throw ArgumentError("unknown data-generating process '" + name +
                        "'; valid: linear_het, linear_hom, nonlinear_het, "
                        "multi_1, multi_2, multi_3");
}

MissingTarget parse_missing_target(const std::string& name) {
    if (name == "outcome") return MissingTarget::outcome;
    if (name == "confounder") return MissingTarget::confounder;
    throw ArgumentError("unknown missing target '" + name + "'; valid: outcome, confounder");
}

std::string missing_confounder_name(DgpKind kind) {
    return is_multi_confounder(kind) ? "zc1" : "zc";
}

void TableView::add(std::string name, const std::vector<double>* values,
                    const std::vector<std::uint8_t>* mask) {
    columns_.emplace_back(std::move(name), ColumnRef{values, mask});
}

const ColumnRef* TableView::find(const std::string& name) const {
    for (const auto& [col_name, ref] : columns_) {
        if (col_name == name) return &ref;
    }
    return nullptr;
}

namespace {

template <typename Dataset>
TableView base_view(const Dataset& ds) {
    TableView view(ds.n);
    view.add("x", &ds.x);
    view.add("y", &ds.y);
    if (!ds.zc.empty()) view.add("zc", &ds.zc);
    if (!ds.zc1.empty()) view.add("zc1", &ds.zc1);
    if (!ds.zc2.empty()) view.add("zc2", &ds.zc2);
    if (!ds.zi.empty()) view.add("zi", &ds.zi);
    if (!ds.zp.empty()) view.add("zp", &ds.zp);
    return view;
}

} // namespace

TableView CompleteDataset::view() const {
    return base_view(*this);
}

TableView ObservedDataset::view() const {
    TableView view(base.n);
    view.add("x", &base.x);
    view.add("y", &base.y, miss_y.empty() ? nullptr : &miss_y);
    const std::string conf = missing_confounder_name(base.kind);
    if (!base.zc.empty()) {
        view.add("zc", &base.zc, conf == "zc" && !miss_conf.empty() ? &miss_conf : nullptr);
    }
    if (!base.zc1.empty()) {
        view.add("zc1", &base.zc1, conf == "zc1" && !miss_conf.empty() ? &miss_conf : nullptr);
    }
    if (!base.zc2.empty()) view.add("zc2", &base.zc2);
    if (!base.zi.empty()) view.add("zi", &base.zi);
    if (!base.zp.empty()) view.add("zp", &base.zp);
    return view;
}

TableView CompletedDataset::view() const {
    return base_view(*this);
}

std::vector<double>& CompletedDataset::column(const std::string& name) {
    if (name == "x") return x;
    if (name == "y") return y;
    if (name == "zc") return zc;
    if (name == "zc1") return zc1;
    if (name == "zc2") return zc2;
    if (name == "zi") return zi;
    if (name == "zp") return zp;
    throw ArgumentError("unknown column '" + name + "'");
}

} // namespace drmi
