#include <algorithm>
#include <cmath>

#include "fracx/bench.hpp"
#include "fracx/errors.hpp"

namespace fracx {

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform(double lo, double hi) {
    double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

FractionalProgram gen_uniform(int n, int m, std::uint64_t seed) {
    if (n < 1 || m < 1) throw InvalidArgument("gen_uniform needs n, m >= 1");
    SplitMix64 rng(seed);
    std::vector<Ratio> ratios(m);
    for (Ratio& r : ratios) {
        r.a0 = rng.uniform(1.0, 20.0);
        r.a.resize(n);
        for (double& v : r.a) v = rng.uniform(0.0, 20.0);
        r.b0 = rng.uniform(-20.0, 0.0);
        r.b.resize(n);
        for (double& v : r.b) v = rng.uniform(-20.0, 0.0);
    }
    return FractionalProgram::binary(n, std::move(ratios));
}

FractionalProgram gen_assortment(int n, int m, std::uint64_t seed) {
    if (n < 1 || m < 1) throw InvalidArgument("gen_assortment needs n, m >= 1");
    SplitMix64 rng(seed);
    std::vector<Ratio> ratios(m);
    for (Ratio& r : ratios) {
        double ri = rng.uniform(1.0, 3.0);
        r.a0 = 0.1 * n;
        r.b0 = 0.0;
        r.a.resize(n);
        r.b.resize(n);
        for (int j = 0; j < n; ++j) {
            r.a[j] = rng.uniform(0.0, 1.0);
            r.b[j] = r.a[j] * ri;
        }
    }
    FractionalProgram fp = FractionalProgram::binary(n, std::move(ratios));
    fp.C.push_back(std::vector<double>(n, 1.0));
    fp.d.push_back(std::floor(0.2 * n));
    return fp;
}

UnivariateInstance gen_univariate(int m, std::uint64_t seed) {
    if (m < 1 || m % 2 == 0) throw InvalidArgument("gen_univariate needs an odd m");
    SplitMix64 rng(seed);
    UnivariateInstance u;
    u.c.resize(m);
    u.r.resize(m);
    for (double& v : u.c) v = rng.uniform(-1.0, 1.0);
    for (int i = 0; i < m; ++i) u.r[i] = i < (m + 1) / 2 ? rng.uniform(-1.0, -0.1) : rng.uniform(1.1, 2.0);
    double x0 = rng.uniform(0.0, 1.0);
    std::vector<double> y0(m);
    for (double& v : y0) v = rng.uniform(1.0, 2.0);
    u.a = 0.0;
    u.b.resize(m);
    for (int i = 0; i < m; ++i) {
        double t = x0 - u.r[i];
        u.a += -u.c[i] * y0[i] / (t * t);
        u.b[i] = u.c[i] / t;
    }
    u.x_lo = 0.0;
    u.x_hi = 1.0;
    u.y_lo.assign(m, 1.0);
    u.y_hi.assign(m, 2.0);
    return u;
}

SupportGraph gen_series_parallel(int nodes, std::uint64_t seed) {
    if (nodes < 2) throw InvalidArgument("series-parallel graphs need at least 2 nodes");
    SplitMix64 rng(seed);
    std::vector<std::pair<int, int>> edges{{0, 1}};
    for (int w = 2; w < nodes; ++w) {
        std::size_t e = rng.next() % edges.size();
        auto [u, v] = edges[e];
        if (rng.next() & 1u) edges.erase(edges.begin() + static_cast<long>(e));  // series: subdivide
        edges.push_back({u, w});
        edges.push_back({v, w});
    }
    SupportGraph g;
    g.nodes = nodes;
    for (auto [u, v] : edges) g.edges.push_back({std::min(u, v), std::max(u, v)});
    std::sort(g.edges.begin(), g.edges.end());
    g.series_parallel = true;
    g.validate();
    return g;
}

BilinearFractional gen_bilinear(const SupportGraph& g, std::uint64_t seed, Sense sense) {
    g.validate();
    SplitMix64 rng(seed);
    BilinearFractional q;
    q.graph = g;
    q.sense = sense;
    const std::size_t E = g.edges.size(), V = static_cast<std::size_t>(g.nodes);
    q.A.resize(E);
    q.B.resize(E);
    q.c.resize(V);
    q.d.resize(V);
    for (double& v : q.A) v = rng.uniform(0.0, 1.0);
    for (double& v : q.B) v = rng.uniform(-1.0, 1.0);
    for (double& v : q.c) v = rng.uniform(0.0, 1.0);
    for (double& v : q.d) v = rng.uniform(-1.0, 1.0);
    q.c0 = rng.uniform(0.5, 1.5);
    q.d0 = rng.uniform(-1.0, 1.0);
    return q;
}

}  // namespace fracx
