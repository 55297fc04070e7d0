#pragma once

// Helpers shared by the unit tests and the acceptance run.

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fracx/bench.hpp"
#include "fracx/lp.hpp"
#include "fracx/program.hpp"
#include "fracx/relaxations.hpp"

namespace fracx::testing {

inline std::vector<std::string> split_name(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string p; std::getline(ss, p, '_');) parts.push_back(p);
    return parts;
}

/// Exact lifting of a point x: rho = 1/den, y = rho x, W = rho x x, w_S = rho prod x, u_S = prod x.
/// Unknown names are left at zero.
inline std::vector<double> exact_lifting(const LinearModel& md, const FractionalProgram& fp,
                                         const std::vector<double>& x) {
    std::vector<double> pt(md.num_cols(), 0.0);
    std::vector<double> rho(fp.m());
    for (int i = 0; i < fp.m(); ++i) rho[i] = 1.0 / fp.ratios[i].denominator(x);
    for (int c = 0; c < md.num_cols(); ++c) {
        auto p = split_name(md.column(c).name);
        auto idx = [&](size_t from) {
            double v = 1.0;
            for (size_t t = from; t < p.size(); ++t) v *= x[std::stoi(p[t])];
            return v;
        };
        if (p[0] == "x") pt[c] = x[std::stoi(p[1])];
        else if (p[0] == "rho") pt[c] = rho[std::stoi(p[1])];
        else if (p[0] == "y" || p[0] == "W" || p[0] == "w") pt[c] = rho[std::stoi(p[1])] * idx(2);
        else if (p[0] == "u") pt[c] = idx(1);
    }
    return pt;
}

/// Fixes the named columns to the given values and asks whether the rest can be completed.
inline bool completable(LinearModel md, const std::vector<std::pair<std::string, double>>& fixed,
                        double feas_tol = 1e-7) {
    for (int j = 0; j < md.num_cols(); ++j) md.set_obj(j, 0.0);
    for (const auto& [name, v] : fixed) md.set_bounds(md.col(name), v, v);
    SolverOptions o;
    o.backend = Backend::dense;
    o.feas_tol = feas_tol;
    return solve(md, o).status == LpStatus::optimal;
}

/// Every simple cycle of g as (nodes, edge indices), each listed once.
inline std::vector<std::pair<std::vector<int>, std::vector<int>>> simple_cycles(const SupportGraph& g) {
    std::vector<std::vector<int>> adj(g.nodes);
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        adj[g.edges[e].first].push_back(e);
        adj[g.edges[e].second].push_back(e);
    }
    std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
    // root each cycle at its smallest node; fix direction by second node < last node
    for (int s = 0; s < g.nodes; ++s) {
        std::vector<int> nodes{s}, edges;
        std::vector<char> on(g.nodes, 0);
        on[s] = 1;
        std::function<void(int)> dfs = [&](int u) {
            for (int e : adj[u]) {
                int v = g.edges[e].first == u ? g.edges[e].second : g.edges[e].first;
                if (v == s && nodes.size() >= 3 && nodes[1] < nodes.back()) {
                    std::vector<int> ce = edges;
                    ce.push_back(e);
                    out.push_back({nodes, ce});
                }
                if (v <= s || on[v]) continue;
                on[v] = 1;
                nodes.push_back(v);
                edges.push_back(e);
                dfs(v);
                nodes.pop_back();
                edges.pop_back();
                on[v] = 0;
            }
        };
        dfs(s);
    }
    return out;
}

/// Largest violation rho - [sum_D (rho - c_e) + sum_{C\D} c_e] over all cycles and odd D,
/// with c_e = y_u + y_v - 2 w_e. Positive means some odd-cycle inequality is violated.
inline double exhaustive_oddcycle(const SupportGraph& g,
                                  const std::vector<std::pair<std::vector<int>, std::vector<int>>>& cycles,
                                  double rho, const std::vector<double>& y, const std::vector<double>& w) {
    double best = -1e300;
    for (const auto& [nodes, edges] : cycles) {
        double even = 0.0, odd = 1e300;  // cheapest sum with |D| even / odd so far
        for (int e : edges) {
            auto [u, v] = g.edges[e];
            double c = y[u] + y[v] - 2.0 * w[e];
            double ne = std::min(even + c, odd + (rho - c));
            double no = std::min(odd + c, even + (rho - c));
            even = ne;
            odd = no;
        }
        best = std::max(best, rho - odd);
    }
    return best;
}

inline SupportGraph parse_graph_line(const std::string& line) {
    std::stringstream ss(line);
    SupportGraph g;
    ss >> g.nodes;
    for (std::string tok; ss >> tok;) {
        auto dash = tok.find('-');
        int u = std::stoi(tok.substr(0, dash)), v = std::stoi(tok.substr(dash + 1));
        g.edges.push_back({std::min(u, v), std::max(u, v)});
    }
    return g;
}

/// Random single-ratio continuous program over a box cut by `rows` random half-spaces
/// through a slack of an interior point; the denominator stays above 1.
inline FractionalProgram random_single_ratio(int n, int rows, SplitMix64& rng) {
    FractionalProgram fp;
    fp.n = n;
    fp.c.assign(n, 0.0);
    Ratio r;
    r.a.resize(n);
    r.b.resize(n);
    std::vector<double> center(n);
    double spread = 0.0;
    for (int j = 0; j < n; ++j) {
        double lo = rng.uniform(-2.0, 0.0), hi = lo + rng.uniform(0.5, 3.0);
        fp.kind.push_back(VarKind::continuous(lo, hi));
        center[j] = 0.5 * (lo + hi);
        r.a[j] = rng.uniform(-1.0, 1.0);
        r.b[j] = rng.uniform(-2.0, 2.0);
        spread += std::abs(r.a[j]) * std::max(std::abs(lo), std::abs(hi));
    }
    r.a0 = 1.0 + spread + rng.uniform(0.0, 1.0);
    r.b0 = rng.uniform(-2.0, 2.0);
    fp.ratios.push_back(r);
    for (int k = 0; k < rows; ++k) {
        std::vector<double> a(n);
        double act = 0.0;
        for (int j = 0; j < n; ++j) {
            a[j] = rng.uniform(-1.0, 1.0);
            act += a[j] * center[j];
        }
        fp.C.push_back(a);
        fp.d.push_back(act + rng.uniform(0.1, 1.0));
    }
    return fp;
}

}  // namespace fracx::testing
