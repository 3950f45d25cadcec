#include "drmi/dgp.hpp"

#include "drmi/errors.hpp"
#include "drmi/linalg.hpp"

#include <ostream>

namespace drmi {

namespace {

std::vector<double> draw_normals(std::size_t n, RngStream& stream, double mean = 0.0) {
    std::vector<double> v(n);
    for (auto& value : v) value = mean + stream.standard_normal();
    return v;
}

} // namespace

CompleteDataset generate_primary(DgpKind kind, std::size_t n, RngStream& stream) {
    if (is_multi_confounder(kind)) {
        throw ArgumentError("generate_primary: kind must be a single-confounder generator");
    }
    if (n < 1) throw ArgumentError("generate_primary: n must be >= 1");

    CompleteDataset ds;
    ds.n = n;
    ds.kind = kind;
    ds.zi = draw_normals(n, stream);
    ds.zp = draw_normals(n, stream);
    ds.zc = draw_normals(n, stream, 1.0);

    ds.x.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        ds.x[i] = stream.bernoulli(expit(1.0 - ds.zc[i] + 2.0 * ds.zi[i]));
    }

    ds.y.resize(n);
    ds.y1.resize(n);
    ds.y0.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double noise = stream.standard_normal();
        const double zc = ds.zc[i];
        const double zp = ds.zp[i];
        double base = 0.0, treated = 0.0;
        switch (kind) {
            case DgpKind::linear_het:
                base = zc + 2.0 * zp + noise;
                treated = base + 0.5 + 0.5 * zc;
                break;
            case DgpKind::linear_hom:
                base = zc + 2.0 * zp + noise;
                treated = base + 1.0;
                break;
            case DgpKind::nonlinear_het:
                base = zc + 2.0 * zp * zp + noise;
                treated = base + 0.5 + 0.5 * zc;
                break;
            default: break;
        }
        ds.y0[i] = base;
        ds.y1[i] = treated;
        ds.y[i] = ds.x[i] == 1.0 ? treated : base;
    }
    return ds;
}

CompleteDataset generate_multi(int scenario, std::size_t n, RngStream& stream) {
    if (scenario < 1 || scenario > 3) {
        throw ArgumentError("generate_multi: scenario must be 1, 2, or 3");
    }
    if (n < 1) throw ArgumentError("generate_multi: n must be >= 1");

    CompleteDataset ds;
    ds.n = n;
    ds.kind = scenario == 1   ? DgpKind::multi_1
              : scenario == 2 ? DgpKind::multi_2
                              : DgpKind::multi_3;
    ds.zc1 = draw_normals(n, stream, 1.0);
    ds.zc2 = draw_normals(n, stream, 1.0);

    const bool quadratic_exposure = scenario != 2;
    const bool quadratic_outcome = scenario != 1;

    ds.x.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double zc2_term = quadratic_exposure ? ds.zc2[i] * ds.zc2[i] : ds.zc2[i];
        ds.x[i] = stream.bernoulli(expit(-(ds.zc1[i] + zc2_term)));
    }

    ds.y.resize(n);
    ds.y1.resize(n);
    ds.y0.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double noise = stream.standard_normal();
        const double zc2_term = quadratic_outcome ? ds.zc2[i] * ds.zc2[i] : ds.zc2[i];
        const double base = ds.zc1[i] + zc2_term + noise;
        const double treated = base + 0.5 + 0.5 * ds.zc1[i];
        ds.y0[i] = base;
        ds.y1[i] = treated;
        ds.y[i] = ds.x[i] == 1.0 ? treated : base;
    }
    return ds;
}

CompleteDataset generate(DgpKind kind, std::size_t n, RngStream& stream) {
    switch (kind) {
        case DgpKind::multi_1: return generate_multi(1, n, stream);
        case DgpKind::multi_2: return generate_multi(2, n, stream);
        case DgpKind::multi_3: return generate_multi(3, n, stream);
        default: return generate_primary(kind, n, stream);
    }
}

ObservedDataset apply_missingness(const CompleteDataset& ds, MissingTarget target,
                                  RngStream& stream) {
    ObservedDataset observed;
    observed.base = ds;
    observed.target = target;
    observed.miss_y.assign(ds.n, 0);
    observed.miss_conf.assign(ds.n, 0);

    const std::vector<double>& conf =
        is_multi_confounder(ds.kind) ? observed.base.zc1 : observed.base.zc;
    for (std::size_t i = 0; i < ds.n; ++i) {
        if (target == MissingTarget::outcome) {
            observed.miss_y[i] =
                stream.bernoulli(expit(-(0.65 + conf[i]))) == 1.0 ? 1 : 0;
        } else {
            observed.miss_conf[i] =
                stream.bernoulli(expit(-(1.15 + 0.5 * observed.base.x[i]))) == 1.0 ? 1 : 0;
        }
    }
    return observed;
}

ObservedDataset observe_fully(const CompleteDataset& ds, MissingTarget target) {
    ObservedDataset observed;
    observed.base = ds;
    observed.target = target;
    observed.miss_y.assign(ds.n, 0);
    observed.miss_conf.assign(ds.n, 0);
    return observed;
}

void dump_csv(const ObservedDataset& observed, std::ostream& out) {
    const CompleteDataset& ds = observed.base;
    const bool multi = is_multi_confounder(ds.kind);
    out << (multi ? "x,y,zc1,zc2,zi,zp,miss_y,miss_conf\n" : "x,y,zc,zi,zp,miss_y,miss_conf\n");
    for (std::size_t i = 0; i < ds.n; ++i) {
        out << ds.x[i] << ',' << ds.y[i] << ',';
        if (multi) {
            out << ds.zc1[i] << ',' << ds.zc2[i] << ',';
        } else {
            out << ds.zc[i] << ',';
        }
        out << (ds.zi.empty() ? 0.0 : ds.zi[i]) << ',' << (ds.zp.empty() ? 0.0 : ds.zp[i]) << ','
            << int(observed.miss_y[i]) << ',' << int(observed.miss_conf[i]) << '\n';
    }
}

} // namespace drmi
