#include <cmath>
#include <string>

#include "fracx/errors.hpp"
#include "fracx/transforms.hpp"

namespace fracx {

void LabeledPointSet::validate() const {
    for (const ProjPoint& p : points) {
        if (!(p.rho > 0.0)) throw DomainError("point with rho <= 0 outside R++ x R^n");
        if (static_cast<int>(p.x.size()) != dim) throw DomainError("point dimension mismatch");
    }
}

ProjPoint phi(const ProjPoint& p) {
    if (!(p.rho > 0.0)) throw DomainError("phi needs rho > 0");
    ProjPoint q;
    q.rho = 1.0 / p.rho;
    q.x.resize(p.x.size());
    for (size_t j = 0; j < p.x.size(); ++j) q.x[j] = p.x[j] / p.rho;
    return q;
}

namespace {

// Feasibility of  sum_k lambda_k v_k = target, sum lambda = 1, lambda >= 0.
bool in_hull(const std::vector<std::vector<double>>& v, const std::vector<double>& target, double tol) {
    LinearModel lp;
    lp.sense = Sense::minimize;
    for (size_t k = 0; k < v.size(); ++k) lp.add_column("l" + std::to_string(k), 0.0, kInf);
    for (size_t r = 0; r < target.size(); ++r) {
        std::vector<Term> t;
        for (size_t k = 0; k < v.size(); ++k) t.push_back({static_cast<int>(k), v[k][r]});
        lp.add_row(std::move(t), Relation::equal, target[r]);
    }
    std::vector<Term> sum;
    for (size_t k = 0; k < v.size(); ++k) sum.push_back({static_cast<int>(k), 1.0});
    lp.add_row(std::move(sum), Relation::equal, 1.0);
    SolverOptions o;
    o.backend = Backend::dense;
    o.feas_tol = tol;
    return solve(lp, o).status == LpStatus::optimal;
}

}  // namespace

HullVerdict hull_correspondence(const LabeledPointSet& S, const ProjPoint& q, double tol) {
    S.validate();
    if (!(q.rho > 0.0)) throw DomainError("query needs rho > 0");
    if (static_cast<int>(q.x.size()) != S.dim) throw DomainError("query dimension mismatch");
    HullVerdict out;

    std::vector<std::vector<double>> direct;
    for (const ProjPoint& p : S.points) {
        std::vector<double> v{p.rho};
        v.insert(v.end(), p.x.begin(), p.x.end());
        direct.push_back(std::move(v));
    }
    std::vector<double> target{q.rho};
    target.insert(target.end(), q.x.begin(), q.x.end());
    out.in_conv_S = in_hull(direct, target, tol);

    // (1, x) in rho * conv(phi(S))  <=>  (1, x) / rho in conv(phi(S))
    std::vector<std::vector<double>> image;
    for (const ProjPoint& p : S.points) {
        ProjPoint f = phi(p);
        std::vector<double> v{f.rho};
        v.insert(v.end(), f.x.begin(), f.x.end());
        for (double& c : v) c *= q.rho;
        image.push_back(std::move(v));
    }
    std::vector<double> unit{1.0};
    unit.insert(unit.end(), q.x.begin(), q.x.end());
    out.in_conv_phi = in_hull(image, unit, tol);
    return out;
}

double hull_distance(std::span<const std::vector<double>> points, std::span<const double> q) {
    LinearModel lp;
    lp.sense = Sense::minimize;
    int K = static_cast<int>(points.size());
    for (int k = 0; k < K; ++k) lp.add_column("l" + std::to_string(k), 0.0, kInf);
    int t = lp.add_column("t", 0.0, kInf, 1.0);
    for (size_t r = 0; r < q.size(); ++r) {
        std::vector<Term> lo, hi;
        for (int k = 0; k < K; ++k) {
            lo.push_back({k, points[k][r]});
            hi.push_back({k, points[k][r]});
        }
        lo.push_back({t, 1.0});
        hi.push_back({t, -1.0});
        lp.add_row(std::move(lo), Relation::greater_equal, q[r]);
        lp.add_row(std::move(hi), Relation::less_equal, q[r]);
    }
    std::vector<Term> sum;
    for (int k = 0; k < K; ++k) sum.push_back({k, 1.0});
    lp.add_row(std::move(sum), Relation::equal, 1.0);
    SolverOptions o;
    o.backend = Backend::dense;
    LpSolution s = solve(lp, o);
    require_optimal(s, "hull distance");
    return s.objective;
}

std::vector<AffineRow> closure_rows(const FractionalProgram& fp) {
    std::vector<AffineRow> rows;
    for (int r = 0; r < fp.num_constraints(); ++r) rows.push_back({fp.C[r], Relation::less_equal, fp.d[r]});
    for (int j = 0; j < fp.n; ++j) {
        const VarKind& k = fp.kind[j];
        double lo = k.binary ? 0.0 : k.lo, hi = k.binary ? 1.0 : k.hi;
        std::vector<double> e(fp.n, 0.0);
        if (std::isfinite(hi)) {
            e[j] = 1.0;
            rows.push_back({e, Relation::less_equal, hi});
        }
        if (std::isfinite(lo)) {
            e[j] = -1.0;
            rows.push_back({e, Relation::less_equal, -lo});
        }
    }
    return rows;
}

std::vector<Row> homogenize_rows(std::span<const AffineRow> rows, std::span<const int> g_cols, int rho_col) {
    std::vector<Row> out;
    out.reserve(rows.size());
    for (const AffineRow& a : rows) {
        Row r;
        r.rel = a.rel;
        r.rhs = 0.0;
        for (size_t j = 0; j < a.a.size(); ++j)
            if (a.a[j] != 0.0) r.terms.push_back({g_cols[j], a.a[j]});
        if (a.beta != 0.0) r.terms.push_back({rho_col, -a.beta});
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<double> CharnesCooperModel::recover_x(std::span<const double> primal) const {
    double rho = primal[rho_col];
    if (!(rho > 0.0)) throw DomainError("recovered rho is not positive");
    std::vector<double> x(y_cols.size());
    for (size_t j = 0; j < y_cols.size(); ++j) x[j] = primal[y_cols[j]] / rho;
    return x;
}

CharnesCooperModel charnes_cooper(const FractionalProgram& fp, Sense sense) {
    check_dimensions(fp);
    if (fp.m() != 1) throw NotSingleRatio("program has " + std::to_string(fp.m()) + " ratios");
    for (double v : fp.c)
        if (v != 0.0) throw NotSingleRatio("linear term must vanish");
    validate_program(fp);
    const Ratio& r = fp.ratios[0];
    CharnesCooperModel cc;
    LinearModel& lp = cc.model;
    lp.sense = sense;
    cc.rho_col = lp.add_column("rho", 0.0, kInf, r.b0);
    for (int j = 0; j < fp.n; ++j) cc.y_cols.push_back(lp.add_column("y_" + std::to_string(j), -kInf, kInf, r.b[j]));
    std::vector<AffineRow> rows = closure_rows(fp);
    for (Row& h : homogenize_rows(rows, cc.y_cols, cc.rho_col)) lp.add_row(std::move(h));
    std::vector<Term> norm{{cc.rho_col, r.a0}};
    for (int j = 0; j < fp.n; ++j) norm.push_back({cc.y_cols[j], r.a[j]});
    lp.add_row(std::move(norm), Relation::equal, 1.0, "normalization");
    return cc;
}

}  // namespace fracx
