// Odd-cycle separation for the (homogenized) boolean quadric polytope.
//
// With c_e = y_u + y_v - 2 w_e the inequality for (C, D) reads
//   sum_D (rho - c_e) + sum_{C\D} c_e >= rho,
// so a violated one is a closed walk with an odd number of D-edges and
// weight below rho in the two-layer graph: D-edges switch layers.

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>

#include "fracx/errors.hpp"
#include "fracx/relaxations.hpp"

namespace fracx {

namespace {

struct Step {
    int from, to, edge;
    bool odd;
};

std::vector<Step> simplify(std::vector<Step> walk) {
    for (;;) {
        int L = static_cast<int>(walk.size());
        int bi = -1, bj = -1;
        // node sequence n_0 .. n_{L-1}; n_L = n_0
        for (int j = 1; j < L && bi < 0; ++j)
            for (int i = 0; i < j; ++i)
                if (walk[i].from == walk[j].from) {
                    bi = i;
                    bj = j;
                    break;
                }
        if (bi < 0) return walk;
        std::vector<Step> sub(walk.begin() + bi, walk.begin() + bj);
        std::vector<Step> rest(walk.begin(), walk.begin() + bi);
        rest.insert(rest.end(), walk.begin() + bj, walk.end());
        int par = 0;
        for (const Step& s : sub) par ^= s.odd;
        walk = par ? std::move(sub) : std::move(rest);
    }
}

}  // namespace

double oddcycle_excess(const OddCycleInequality& q, double rho, std::span<const double> y, std::span<const double> w,
                       const SupportGraph& g) {
    (void)g;
    int L = static_cast<int>(q.nodes.size());
    int D = 0;
    double s = 0.0;
    for (int t = 0; t < L; ++t) {
        if (q.in_D[t]) {
            ++D;
            s -= w[q.edges[t]];
        } else {
            s += w[q.edges[t]];
        }
        // node t sits between edges t-1 and t
        bool a = q.in_D[(t + L - 1) % L], b = q.in_D[t];
        if (a && b) s += y[q.nodes[t]];
        else if (!a && !b) s -= y[q.nodes[t]];
    }
    return s - 0.5 * (D - 1) * rho;
}

Row oddcycle_row(const OddCycleInequality& q, const SupportGraph& g, int rho_col, std::span<const int> y_cols,
                 std::span<const int> w_cols) {
    (void)g;
    int L = static_cast<int>(q.nodes.size());
    int D = 0;
    Row r;
    r.rel = Relation::less_equal;
    for (int t = 0; t < L; ++t) {
        if (q.in_D[t]) ++D;
        r.terms.push_back({w_cols[q.edges[t]], q.in_D[t] ? -1.0 : 1.0});
        bool a = q.in_D[(t + L - 1) % L], b = q.in_D[t];
        if (a && b) r.terms.push_back({y_cols[q.nodes[t]], 1.0});
        else if (!a && !b) r.terms.push_back({y_cols[q.nodes[t]], -1.0});
    }
    r.terms.push_back({rho_col, -0.5 * (D - 1)});
    return r;
}

std::vector<OddCycleInequality> oddcycle_separate(double rho, std::span<const double> y, std::span<const double> w,
                                                  const SupportGraph& g, double tol) {
    const int V = g.nodes, E = static_cast<int>(g.edges.size());
    std::vector<double> even(E), odd(E);
    for (int e = 0; e < E; ++e) {
        auto [u, v] = g.edges[e];
        double slacks[4] = {w[e], y[u] - w[e], y[v] - w[e], rho - y[u] - y[v] + w[e]};
        for (double s : slacks)
            if (s < -1e-7) throw NegativeWeight("McCormick slack " + std::to_string(s) + " on edge " + std::to_string(e));
        double c = y[u] + y[v] - 2.0 * w[e];
        even[e] = std::max(0.0, c);
        odd[e] = std::max(0.0, rho - c);
    }
    std::vector<std::vector<int>> adj(V);
    for (int e = 0; e < E; ++e) {
        adj[g.edges[e].first].push_back(e);
        adj[g.edges[e].second].push_back(e);
    }

    std::vector<OddCycleInequality> out;
    std::set<std::pair<std::vector<int>, std::vector<int>>> keys;
    for (int s = 0; s < V; ++s) {
        if (adj[s].empty()) continue;
        // Dijkstra on (node, layer)
        std::vector<double> dist(2 * V, kInf);
        std::vector<int> prev_edge(2 * V, -1), prev_node(2 * V, -1);
        using QE = std::pair<double, int>;
        std::priority_queue<QE, std::vector<QE>, std::greater<>> pq;
        dist[2 * s] = 0.0;
        pq.push({0.0, 2 * s});
        while (!pq.empty()) {
            auto [dd, a] = pq.top();
            pq.pop();
            if (dd > dist[a]) continue;
            if (a == 2 * s + 1) break;
            int node = a / 2, layer = a % 2;
            for (int e : adj[node]) {
                int other = g.edges[e].first == node ? g.edges[e].second : g.edges[e].first;
                for (int sw = 0; sw < 2; ++sw) {
                    int b = 2 * other + (layer ^ sw);
                    double nd = dd + (sw ? odd[e] : even[e]);
                    if (nd < dist[b]) {
                        dist[b] = nd;
                        prev_edge[b] = e;
                        prev_node[b] = a;
                        pq.push({nd, b});
                    }
                }
            }
        }
        if (!(dist[2 * s + 1] < rho - 2.0 * tol)) continue;

        std::vector<Step> walk;
        for (int b = 2 * s + 1; b != 2 * s;) {
            int a = prev_node[b];
            walk.push_back({a / 2, b / 2, prev_edge[b], (a % 2) != (b % 2)});
            b = a;
        }
        std::reverse(walk.begin(), walk.end());
        walk = simplify(std::move(walk));
        if (walk.size() < 3) continue;

        OddCycleInequality q;
        for (const Step& st : walk) {
            q.nodes.push_back(st.from);
            q.edges.push_back(st.edge);
            q.in_D.push_back(st.odd);
        }
        q.violation = oddcycle_excess(q, rho, y, w, g);
        if (q.violation <= tol) continue;
        std::vector<int> ce = q.edges, de;
        for (size_t t = 0; t < q.edges.size(); ++t)
            if (q.in_D[t]) de.push_back(q.edges[t]);
        std::sort(ce.begin(), ce.end());
        std::sort(de.begin(), de.end());
        if (keys.insert({ce, de}).second) out.push_back(std::move(q));
    }
    return out;
}

}  // namespace fracx
