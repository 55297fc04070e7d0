#include <memory>

#include "fracx/errors.hpp"
#include "fracx/relaxations.hpp"

namespace fracx {

BilinearModel build_bilinear_frac(const BilinearFractional& q, double tol) {
    const SupportGraph& g = q.graph;
    g.validate();
    const int V = g.nodes, E = static_cast<int>(g.edges.size());
    if (static_cast<int>(q.A.size()) != E || static_cast<int>(q.B.size()) != E || static_cast<int>(q.c.size()) != V ||
        static_cast<int>(q.d.size()) != V)
        throw DimensionMismatch("bilinear fractional data do not match the graph");
    if (V > 24) throw TooLarge("denominator certification enumerates 2^V points");

    std::vector<double> x(V);
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << V); ++s) {
        for (int v = 0; v < V; ++v) x[v] = static_cast<double>((s >> (V - 1 - v)) & 1u);
        double den = q.denominator(x);
        if (den < 1e-7) throw NonPositiveDenominator(0, x, den);
    }

    BilinearModel bm;
    LinearModel& md = bm.model;
    md.sense = q.sense;
    bm.rho = md.add_column("rho_0", 0.0, kInf, q.d0);
    for (int v = 0; v < V; ++v) bm.y.push_back(md.add_column("y_0_" + std::to_string(v), 0.0, kInf, q.d[v]));
    for (int e = 0; e < E; ++e) {
        auto [u, v] = g.edges[e];
        bm.w.push_back(md.add_column("W_0_" + std::to_string(u) + "_" + std::to_string(v), 0.0, kInf, q.B[e]));
    }
    for (int v = 0; v < V; ++v) md.add_row({{bm.y[v], 1.0}, {bm.rho, -1.0}}, Relation::less_equal, 0.0);
    for (int e = 0; e < E; ++e) {
        auto [u, v] = g.edges[e];
        md.add_row({{bm.w[e], 1.0}, {bm.y[u], -1.0}}, Relation::less_equal, 0.0);
        md.add_row({{bm.w[e], 1.0}, {bm.y[v], -1.0}}, Relation::less_equal, 0.0);
        md.add_row({{bm.w[e], -1.0}, {bm.y[u], 1.0}, {bm.y[v], 1.0}, {bm.rho, -1.0}}, Relation::less_equal, 0.0);
    }
    std::vector<Term> norm{{bm.rho, q.c0}};
    for (int v = 0; v < V; ++v) norm.push_back({bm.y[v], q.c[v]});
    for (int e = 0; e < E; ++e) norm.push_back({bm.w[e], q.A[e]});
    md.add_row(std::move(norm), Relation::equal, 1.0, "normalization");

    auto graph = std::make_shared<SupportGraph>(g);
    int rho = bm.rho;
    std::vector<int> ycols = bm.y, wcols = bm.w;
    bm.separators.push_back([graph, rho, ycols, wcols, tol](std::span<const double> pt) {
        std::vector<double> y(ycols.size()), w(wcols.size());
        for (size_t v = 0; v < ycols.size(); ++v) y[v] = pt[ycols[v]];
        for (size_t e = 0; e < wcols.size(); ++e) w[e] = pt[wcols[e]];
        std::vector<Cut> cuts;
        for (const OddCycleInequality& ineq : oddcycle_separate(pt[rho], y, w, *graph, tol))
            cuts.push_back({oddcycle_row(ineq, *graph, rho, ycols, wcols), 0});
        return cuts;
    });
    return bm;
}

}  // namespace fracx
