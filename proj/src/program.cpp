#include <algorithm>
#include <cmath>
#include <string>

#include "fracx/errors.hpp"
#include "fracx/program.hpp"
#include "fracx/transforms.hpp"

namespace fracx {

double Ratio::numerator(std::span<const double> x) const {
    double s = b0;
    for (size_t j = 0; j < b.size(); ++j) s += b[j] * x[j];
    return s;
}

double Ratio::denominator(std::span<const double> x) const {
    double s = a0;
    for (size_t j = 0; j < a.size(); ++j) s += a[j] * x[j];
    return s;
}

bool FractionalProgram::all_binary() const {
    return std::all_of(kind.begin(), kind.end(), [](const VarKind& k) { return k.binary; });
}

double FractionalProgram::evaluate(std::span<const double> x) const {
    double s = 0.0;
    for (const Ratio& r : ratios) s += r.numerator(x) / r.denominator(x);
    for (int j = 0; j < n; ++j) s += c[j] * x[j];
    return s;
}

bool FractionalProgram::feasible(std::span<const double> x, double slack) const {
    for (size_t r = 0; r < C.size(); ++r) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += C[r][j] * x[j];
        if (s > d[r] + slack) return false;
    }
    return true;
}

FractionalProgram FractionalProgram::binary(int n, std::vector<Ratio> ratios, Sense sense) {
    FractionalProgram fp;
    fp.n = n;
    fp.ratios = std::move(ratios);
    fp.c.assign(n, 0.0);
    fp.kind.assign(n, VarKind::make_binary());
    fp.sense = sense;
    return fp;
}

void check_dimensions(const FractionalProgram& fp) {
    auto bad = [](const std::string& what) { throw DimensionMismatch(what); };
    if (fp.n < 0) bad("negative n");
    if (static_cast<int>(fp.c.size()) != fp.n) bad("len(c) != n");
    if (static_cast<int>(fp.kind.size()) != fp.n) bad("len(var_kind) != n");
    for (int i = 0; i < fp.m(); ++i) {
        if (static_cast<int>(fp.ratios[i].a.size()) != fp.n) bad("len(a) != n in ratio " + std::to_string(i));
        if (static_cast<int>(fp.ratios[i].b.size()) != fp.n) bad("len(b) != n in ratio " + std::to_string(i));
    }
    if (fp.C.size() != fp.d.size()) bad("rows(C) != len(d)");
    for (const auto& row : fp.C)
        if (static_cast<int>(row.size()) != fp.n) bad("row of C has wrong length");
    for (const VarKind& k : fp.kind)
        if (!k.binary && k.lo > k.hi) bad("continuous variable with lo > hi");
}

LinearModel relaxation_polytope(const FractionalProgram& fp) {
    LinearModel lp;
    for (int j = 0; j < fp.n; ++j) {
        const VarKind& k = fp.kind[j];
        lp.add_column("x_" + std::to_string(j), k.binary ? 0.0 : k.lo, k.binary ? 1.0 : k.hi);
    }
    for (int r = 0; r < fp.num_constraints(); ++r) {
        std::vector<Term> t;
        for (int j = 0; j < fp.n; ++j)
            if (fp.C[r][j] != 0.0) t.push_back({j, fp.C[r][j]});
        lp.add_row(std::move(t), Relation::less_equal, fp.d[r]);
    }
    return lp;
}

namespace {

// Optimizes a0 + a'x over the relaxation; returns value and point.
LpSolution optimize_affine(LinearModel lp, double a0, std::span<const double> a, Sense sense) {
    lp.sense = sense;
    lp.obj_constant = a0;
    for (int j = 0; j < lp.num_cols(); ++j) lp.set_obj(j, a[j]);
    return solve(lp);
}

}  // namespace

ValidationReport validate_program(const FractionalProgram& fp) {
    check_dimensions(fp);
    LinearModel base = relaxation_polytope(fp);
    ValidationReport rep;
    for (int i = 0; i < fp.m(); ++i) {
        const Ratio& r = fp.ratios[i];
        LpSolution s = optimize_affine(base, r.a0, r.a, Sense::minimize);
        if (s.status == LpStatus::infeasible) throw InfeasibleRegion("continuous relaxation is empty");
        if (s.status == LpStatus::unbounded) throw NonPositiveDenominator(i, {}, -kInf);
        require_optimal(s, "denominator bound");
        if (s.objective < kPositivityMargin) throw NonPositiveDenominator(i, s.primal, s.objective);
        rep.denom_min.push_back(s.objective);
        rep.argmin.push_back(s.primal);
    }
    return rep;
}

VariableBounds compute_bounds(const FractionalProgram& fp) {
    ValidationReport rep = validate_program(fp);
    LinearModel base = relaxation_polytope(fp);
    VariableBounds vb;
    const bool boxed = fp.num_constraints() == 0;
    std::vector<double> e(fp.n, 0.0);
    for (int j = 0; j < fp.n; ++j) {
        const Column& col = base.column(j);
        if (boxed) {
            vb.x_lo.push_back(col.lo);
            vb.x_hi.push_back(col.hi);
            continue;
        }
        e.assign(fp.n, 0.0);
        e[j] = 1.0;
        LpSolution lo = optimize_affine(base, 0.0, e, Sense::minimize);
        LpSolution hi = optimize_affine(base, 0.0, e, Sense::maximize);
        vb.x_lo.push_back(lo.status == LpStatus::unbounded ? -kInf : (require_optimal(lo, "x bound"), lo.objective));
        vb.x_hi.push_back(hi.status == LpStatus::unbounded ? kInf : (require_optimal(hi, "x bound"), hi.objective));
    }
    for (int i = 0; i < fp.m(); ++i) {
        const Ratio& r = fp.ratios[i];
        double dlo = rep.denom_min[i];
        LpSolution hi = optimize_affine(base, r.a0, r.a, Sense::maximize);
        if (hi.status == LpStatus::unbounded) throw UnboundedPolyhedron("denominator unbounded in ratio " + std::to_string(i));
        require_optimal(hi, "denominator bound");
        double dhi = std::max(hi.objective, dlo);
        vb.denom_lo.push_back(dlo);
        vb.denom_hi.push_back(dhi);
        vb.rho_lo.push_back(1.0 / dhi);
        vb.rho_hi.push_back(1.0 / dlo);

        FractionalProgram single;
        single.n = fp.n;
        single.ratios = {r};
        single.c.assign(fp.n, 0.0);
        single.C = fp.C;
        single.d = fp.d;
        single.kind = fp.kind;
        for (Sense s : {Sense::minimize, Sense::maximize}) {
            CharnesCooperModel cc = charnes_cooper(single, s);
            LpSolution sol = solve(cc.model);
            if (sol.status == LpStatus::unbounded) throw UnboundedPolyhedron("ratio unbounded in ratio " + std::to_string(i));
            require_optimal(sol, "ratio bound");
            (s == Sense::minimize ? vb.ratio_lo : vb.ratio_hi).push_back(sol.objective);
        }
    }
    return vb;
}

int SupportGraph::edge_index(int u, int v) const {
    if (u > v) std::swap(u, v);
    for (size_t e = 0; e < edges.size(); ++e)
        if (edges[e].first == u && edges[e].second == v) return static_cast<int>(e);
    return -1;
}

void SupportGraph::validate() const {
    for (size_t e = 0; e < edges.size(); ++e) {
        auto [u, v] = edges[e];
        if (u == v) throw InvalidArgument("self-loop in support graph");
        if (u > v || u < 0 || v >= nodes) throw InvalidArgument("edge endpoints must satisfy 0 <= u < v < nodes");
        for (size_t f = 0; f < e; ++f)
            if (edges[f] == edges[e]) throw InvalidArgument("duplicate edge in support graph");
    }
}

double BilinearFractional::denominator(std::span<const double> x) const {
    double s = c0;
    for (int v = 0; v < graph.nodes; ++v) s += c[v] * x[v];
    for (size_t e = 0; e < graph.edges.size(); ++e) s += A[e] * x[graph.edges[e].first] * x[graph.edges[e].second];
    return s;
}

double BilinearFractional::numerator(std::span<const double> x) const {
    double s = d0;
    for (int v = 0; v < graph.nodes; ++v) s += d[v] * x[v];
    for (size_t e = 0; e < graph.edges.size(); ++e) s += B[e] * x[graph.edges[e].first] * x[graph.edges[e].second];
    return s;
}

}  // namespace fracx
