#include <cmath>
#include <map>
#include <memory>

#include "fracx/errors.hpp"
#include "fracx/relaxations.hpp"
#include "fracx/transforms.hpp"

namespace fracx {

namespace {

/// g0 + g'x >= 0
struct Factor {
    double g0 = 0.0;
    std::vector<std::pair<int, double>> g;
};

struct Builder {
    const FractionalProgram& fp;
    LiftedModel lm;

    explicit Builder(const FractionalProgram& f) : fp(f) {
        check_dimensions(fp);
        lm.n = fp.n;
        lm.m = fp.m();
        lm.model.sense = fp.sense;
        for (const VarKind& k : fp.kind) lm.binary.push_back(k.binary);
    }

    void columns(const VariableBounds* b) {
        for (int j = 0; j < fp.n; ++j) {
            const VarKind& k = fp.kind[j];
            double lo = k.binary ? 0.0 : k.lo, hi = k.binary ? 1.0 : k.hi;
            if (b) {
                lo = std::max(lo, b->x_lo[j]);
                hi = std::min(hi, b->x_hi[j]);
            }
            lm.x.push_back(lm.model.add_column(LiftedIndex::x(j).name(), lo, hi, fp.c[j]));
        }
        lm.y.assign(fp.m(), {});
        for (int i = 0; i < fp.m(); ++i) {
            double lo = b ? b->rho_lo[i] : 0.0, hi = b ? b->rho_hi[i] : kInf;
            lm.rho.push_back(lm.model.add_column(LiftedIndex::rho(i).name(), lo, hi, fp.ratios[i].b0));
            for (int j = 0; j < fp.n; ++j)
                lm.y[i].push_back(lm.model.add_column(LiftedIndex::y(i, j).name(), -kInf, kInf, fp.ratios[i].b[j]));
        }
    }

    void normalization() {
        for (int i = 0; i < fp.m(); ++i) {
            const Ratio& r = fp.ratios[i];
            std::vector<Term> t{{lm.rho[i], r.a0}};
            for (int j = 0; j < fp.n; ++j) t.push_back({lm.y[i][j], r.a[j]});
            lm.model.add_row(std::move(t), Relation::equal, 1.0, "norm_" + std::to_string(i));
        }
    }

    void constraint_rows() {
        for (int r = 0; r < fp.num_constraints(); ++r) {
            std::vector<Term> t;
            for (int j = 0; j < fp.n; ++j) t.push_back({lm.x[j], fp.C[r][j]});
            lm.model.add_row(std::move(t), Relation::less_equal, fp.d[r]);
        }
    }

    void lef_rows(const VariableBounds& b) {
        for (int i = 0; i < fp.m(); ++i) {
            double rL = b.rho_lo[i], rU = b.rho_hi[i];
            int rho = lm.rho[i];
            for (int j = 0; j < fp.n; ++j) {
                double xL = lm.model.column(lm.x[j]).lo, xU = lm.model.column(lm.x[j]).hi;
                if (!std::isfinite(xL) || !std::isfinite(xU)) throw MissingBounds("x_" + std::to_string(j) + " is unbounded");
                int y = lm.y[i][j], x = lm.x[j];
                auto& md = lm.model;
                // y >= rL x + xL rho - rL xL ; y >= rU x + xU rho - rU xU
                md.add_row({{y, 1.0}, {x, -rL}, {rho, -xL}}, Relation::greater_equal, -rL * xL);
                md.add_row({{y, 1.0}, {x, -rU}, {rho, -xU}}, Relation::greater_equal, -rU * xU);
                // y <= rU x + xL rho - rU xL ; y <= rL x + xU rho - rL xU
                md.add_row({{y, 1.0}, {x, -rU}, {rho, -xL}}, Relation::less_equal, -rU * xL);
                md.add_row({{y, 1.0}, {x, -rL}, {rho, -xU}}, Relation::less_equal, -rL * xU);
            }
        }
    }

    int W(int i, int j, int k) {
        bool alias = j == k && lm.binary[j];
        std::string nm = LiftedIndex::W(i, j, k).name(alias);
        if (auto c = lm.model.find(nm)) return *c;
        return lm.model.add_column(nm, -kInf, kInf);
    }

    void product(int i, const Factor& f, const Factor& h) {
        std::map<int, double> acc;
        if (f.g0 * h.g0 != 0.0) acc[lm.rho[i]] += f.g0 * h.g0;
        for (auto [j, v] : h.g) acc[lm.y[i][j]] += f.g0 * v;
        for (auto [j, v] : f.g) acc[lm.y[i][j]] += h.g0 * v;
        for (auto [j, u] : f.g)
            for (auto [k, v] : h.g) acc[W(i, j, k)] += u * v;
        std::vector<Term> t;
        for (auto [c, v] : acc)
            if (v != 0.0) t.push_back({c, v});
        if (t.empty()) return;
        lm.model.add_row(std::move(t), Relation::greater_equal, 0.0);
    }

    void products(const std::vector<Factor>& fs) {
        for (int i = 0; i < fp.m(); ++i)
            for (size_t p = 0; p < fs.size(); ++p)
                for (size_t q = p; q < fs.size(); ++q) product(i, fs[p], fs[q]);
    }

    void linking() {
        for (int i = 0; i < fp.m(); ++i) {
            const Ratio& r = fp.ratios[i];
            for (int j = 0; j < fp.n; ++j) {
                std::vector<Term> t{{lm.x[j], 1.0}, {lm.y[i][j], -r.a0}};
                for (int k = 0; k < fp.n; ++k)
                    if (r.a[k] != 0.0) t.push_back({W(i, j, k), -r.a[k]});
                lm.model.add_row(std::move(t), Relation::equal, 0.0);
            }
        }
    }

    void homogenized_closure() {
        std::vector<AffineRow> rows = closure_rows(fp);
        for (int i = 0; i < fp.m(); ++i)
            for (Row& r : homogenize_rows(rows, lm.y[i], lm.rho[i])) lm.model.add_row(std::move(r));
    }
};

std::vector<Factor> bound_factors(const FractionalProgram& fp) {
    std::vector<Factor> fs;
    for (int j = 0; j < fp.n; ++j) {
        const VarKind& k = fp.kind[j];
        double lo = k.binary ? 0.0 : k.lo, hi = k.binary ? 1.0 : k.hi;
        if (!std::isfinite(lo) || !std::isfinite(hi)) throw MissingBounds("x_" + std::to_string(j) + " is unbounded");
        fs.push_back({-lo, {{j, 1.0}}});
        fs.push_back({hi, {{j, -1.0}}});
    }
    return fs;
}

std::vector<Factor> closure_factors(const FractionalProgram& fp) {
    std::vector<Factor> fs;
    for (const AffineRow& r : closure_rows(fp)) {
        Factor f;
        f.g0 = r.beta;
        for (int j = 0; j < fp.n; ++j)
            if (r.a[j] != 0.0) f.g.push_back({j, -r.a[j]});
        fs.push_back(std::move(f));
    }
    return fs;
}

void check_bounds(const FractionalProgram& fp, const VariableBounds& b) {
    auto n = static_cast<size_t>(fp.n), m = static_cast<size_t>(fp.m());
    if (b.x_lo.size() != n || b.x_hi.size() != n || b.rho_lo.size() != m || b.rho_hi.size() != m)
        throw MissingBounds("bounds do not match the program");
}

}  // namespace

LiftedModel build_lef(const FractionalProgram& fp, const VariableBounds& b) {
    check_bounds(fp, b);
    Builder B(fp);
    B.columns(&b);
    B.lef_rows(b);
    B.normalization();
    B.constraint_rows();
    return std::move(B.lm);
}

LiftedModel build_1term(const FractionalProgram& fp, const VariableBounds& b) {
    check_bounds(fp, b);
    Builder B(fp);
    B.columns(&b);
    B.lef_rows(b);
    B.normalization();
    B.constraint_rows();
    B.products(bound_factors(fp));
    B.linking();
    return std::move(B.lm);
}

LiftedModel build_rqp(const FractionalProgram& fp, const VariableBounds& b) {
    check_bounds(fp, b);
    Builder B(fp);
    B.columns(nullptr);
    B.normalization();
    B.constraint_rows();
    B.homogenized_closure();
    B.products(closure_factors(fp));
    B.linking();
    return std::move(B.lm);
}

std::vector<Cut> conic_oa_cuts(const LiftedModel& lm, std::span<const double> pt, const FractionalProgram& fp,
                               const VariableBounds& b, ConicFamily family, double tol) {
    std::vector<Cut> cuts;
    auto fam = static_cast<unsigned>(family);
    for (int i = 0; i < fp.m(); ++i) {
        const Ratio& r = fp.ratios[i];
        double den = r.a0;
        for (int j = 0; j < fp.n; ++j) den += r.a[j] * pt[lm.x[j]];
        if (!(den > 0.0)) throw DomainError("denominator not positive at the separation point");
        if (den < 0.5 * b.denom_lo[i]) continue;
        double inv = 1.0 / den, inv2 = inv * inv;
        if (fam & 1u) {
            // rho >= 2/den - d(x)/den^2
            double viol = inv - pt[lm.rho[i]];
            if (viol > tol) {
                Cut c;
                c.group = i;
                c.row.rel = Relation::greater_equal;
                c.row.terms.push_back({lm.rho[i], 1.0});
                for (int j = 0; j < fp.n; ++j)
                    if (r.a[j] != 0.0) c.row.terms.push_back({lm.x[j], r.a[j] * inv2});
                c.row.rhs = 2.0 * inv - r.a0 * inv2;
                cuts.push_back(std::move(c));
            }
        }
        if (fam & 2u) {
            for (int j = 0; j < fp.n; ++j) {
                if (!fp.kind[j].binary) continue;
                double xj = pt[lm.x[j]];
                double viol = xj * xj * inv - pt[lm.y[i][j]];
                if (viol <= tol) continue;
                // y_j >= (2 xj/den) x_j - (xj^2/den^2) d(x)
                double s = xj * xj * inv2;
                Cut c;
                c.group = i;
                c.row.rel = Relation::greater_equal;
                c.row.terms.push_back({lm.y[i][j], 1.0});
                c.row.terms.push_back({lm.x[j], -2.0 * xj * inv});
                for (int k = 0; k < fp.n; ++k)
                    if (r.a[k] != 0.0) c.row.terms.push_back({lm.x[k], s * r.a[k]});
                c.row.rhs = -s * r.a0;
                cuts.push_back(std::move(c));
            }
        }
    }
    return cuts;
}

std::vector<Cut> triangle_cuts(const LiftedModel& lm, std::span<const double> pt, double tol) {
    std::vector<Cut> cuts;
    int n = lm.n;
    for (int i = 0; i < lm.m; ++i) {
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (int c = b + 1; c < n; ++c) {
                    if (!lm.binary[a] || !lm.binary[b] || !lm.binary[c]) continue;
                    int wab = lm.W(i, a, b), wbc = lm.W(i, b, c), wac = lm.W(i, a, c);
                    if (wab < 0 || wbc < 0 || wac < 0) continue;
                    int ya = lm.y[i][a], yb = lm.y[i][b], yc = lm.y[i][c], rho = lm.rho[i];
                    std::vector<Term> forms[4] = {
                        {{ya, 1}, {yb, 1}, {yc, 1}, {wab, -1}, {wbc, -1}, {wac, -1}, {rho, -1}},
                        {{ya, -1}, {wab, 1}, {wac, 1}, {wbc, -1}},
                        {{yb, -1}, {wab, 1}, {wbc, 1}, {wac, -1}},
                        {{yc, -1}, {wac, 1}, {wbc, 1}, {wab, -1}},
                    };
                    for (auto& f : forms) {
                        Row row{f, Relation::less_equal, 0.0, {}};
                        if (row_activity(row, pt) > tol) cuts.push_back({std::move(row), i});
                    }
                }
    }
    return cuts;
}

Separator triangle_separator(const LiftedModel& lm, double tol) {
    auto shared = std::make_shared<LiftedModel>();
    shared->n = lm.n;
    shared->m = lm.m;
    shared->x = lm.x;
    shared->rho = lm.rho;
    shared->y = lm.y;
    shared->binary = lm.binary;
    // the W lookup needs the registry; keep a column-only copy of the model
    for (int j = 0; j < lm.model.num_cols(); ++j) {
        const Column& c = lm.model.column(j);
        shared->model.add_column(c.name, c.lo, c.hi, c.obj);
    }
    return [shared, tol](std::span<const double> x) { return triangle_cuts(*shared, x, tol); };
}

namespace {

// Tangents of rho * d(x) >= 1 at k denominators spaced geometrically over [denom_lo, denom_hi],
// so the first cutting round starts close to the curve.
void add_tangent_rows(LiftedModel& lm, const FractionalProgram& fp, const VariableBounds& b, int k) {
    for (int i = 0; i < fp.m(); ++i) {
        const Ratio& r = fp.ratios[i];
        double lo = b.denom_lo[i], hi = b.denom_hi[i];
        if (!(hi > lo * (1.0 + 1e-9))) continue;
        for (int t = 0; t < k; ++t) {
            double den = lo * std::pow(hi / lo, (t + 0.5) / k);
            double inv = 1.0 / den, inv2 = inv * inv;
            std::vector<Term> terms{{lm.rho[i], 1.0}};
            for (int j = 0; j < fp.n; ++j)
                if (r.a[j] != 0.0) terms.push_back({lm.x[j], r.a[j] * inv2});
            lm.model.add_row(std::move(terms), Relation::greater_equal, 2.0 * inv - r.a0 * inv2);
        }
    }
}

Separator conic_separator(const LiftedModel& lm, const FractionalProgram& fp, const VariableBounds& b,
                          ConicFamily fam) {
    auto idx = std::make_shared<LiftedModel>();
    idx->n = lm.n;
    idx->m = lm.m;
    idx->x = lm.x;
    idx->rho = lm.rho;
    idx->y = lm.y;
    idx->binary = lm.binary;
    auto f = std::make_shared<FractionalProgram>(fp);
    auto vb = std::make_shared<VariableBounds>(b);
    return [idx, f, vb, fam](std::span<const double> x) { return conic_oa_cuts(*idx, x, *f, *vb, fam, 1e-9); };
}

}  // namespace

RelaxationWithCuts build_cef(const FractionalProgram& fp, const VariableBounds& b) {
    RelaxationWithCuts r;
    r.lifted = build_lef(fp, b);
    r.separators.push_back(conic_separator(r.lifted, fp, b, ConicFamily::both));
    return r;
}

RelaxationWithCuts build_1term_conic(const FractionalProgram& fp, const VariableBounds& b) {
    RelaxationWithCuts r;
    r.lifted = build_1term(fp, b);
    add_tangent_rows(r.lifted, fp, b, 8);
    r.separators.push_back(conic_separator(r.lifted, fp, b, ConicFamily::rho_denominator));
    return r;
}

}  // namespace fracx
