// k-th level of the RLT hierarchy for sums of ratios over binary points.
//
// Subsets of [n] are bitmasks; all enumeration runs by (size, lexicographic
// order of the sorted members) so the generated model is reproducible.

#include <bit>
#include <cstdint>
#include <unordered_map>

#include "fracx/errors.hpp"
#include "fracx/relaxations.hpp"

namespace fracx {

namespace {

using Mask = std::uint32_t;

std::vector<int> members(Mask s) {
    std::vector<int> v;
    for (int j = 0; s; ++j, s >>= 1)
        if (s & 1u) v.push_back(j);
    return v;
}

/// All subsets of [n] of size t, lexicographic in their sorted members.
std::vector<Mask> combinations(int n, int t) {
    std::vector<Mask> out;
    if (t > n || t < 0) return out;
    std::vector<int> c(t);
    for (int i = 0; i < t; ++i) c[i] = i;
    for (;;) {
        Mask m = 0;
        for (int v : c) m |= Mask{1} << v;
        out.push_back(m);
        int i = t - 1;
        while (i >= 0 && c[i] == n - t + i) --i;
        if (i < 0) break;
        ++c[i];
        for (int j = i + 1; j < t; ++j) c[j] = c[j - 1] + 1;
    }
    return out;
}

/// Subsets of u in increasing mask order.
std::vector<Mask> subsets(Mask u) {
    std::vector<Mask> out;
    Mask s = 0;
    do {
        out.push_back(s);
        s = (s - u) & u;
    } while (s != 0);
    return out;
}

long binom(int n, int t) {
    if (t < 0 || t > n) return 0;
    long r = 1;
    for (int i = 1; i <= t; ++i) r = r * (n - t + i) / i;
    return r;
}

}  // namespace

LiftedModel build_kterm(const FractionalProgram& fp, int k, const KTermOptions& opts) {
    check_dimensions(fp);
    if (!fp.all_binary()) throw InvalidArgument("k-term relaxation needs binary variables");
    const int n = fp.n, m = fp.m();
    if (n > opts.max_vars) throw SizeGuard("n = " + std::to_string(n) + " exceeds " + std::to_string(opts.max_vars));
    if (k < 1 || k > n) throw InvalidArgument("k must lie in [1, n]");
    validate_program(fp);
    const int K = std::min(k + 1, n);

    long cols = n + m;
    for (int t = 1; t <= K; ++t) cols += m * binom(n, t);
    for (int t = 2; t <= k; ++t) cols += binom(n, t);
    if (cols > opts.column_cap)
        throw SizeGuard(std::to_string(cols) + " lifted columns exceed the cap " + std::to_string(opts.column_cap));

    LiftedModel lm;
    lm.n = n;
    lm.m = m;
    lm.binary.assign(n, 1);
    LinearModel& md = lm.model;
    md.sense = fp.sense;

    std::unordered_map<Mask, int> u;
    for (int j = 0; j < n; ++j) {
        lm.x.push_back(md.add_column(LiftedIndex::x(j).name(), 0.0, 1.0, fp.c[j]));
        u[Mask{1} << j] = lm.x.back();
    }
    for (int t = 2; t <= k; ++t)
        for (Mask s : combinations(n, t)) u[s] = md.add_column(LiftedIndex::u(members(s)).name(), 0.0, 1.0);

    std::vector<std::unordered_map<Mask, int>> w(m);
    lm.y.assign(m, {});
    for (int i = 0; i < m; ++i) {
        const Ratio& r = fp.ratios[i];
        lm.rho.push_back(md.add_column(LiftedIndex::rho(i).name(), 0.0, kInf, r.b0));
        w[i][0] = lm.rho.back();
        for (int t = 1; t <= K; ++t)
            for (Mask s : combinations(n, t)) {
                double obj = t == 1 ? r.b[std::countr_zero(s)] : 0.0;
                w[i][s] = md.add_column(LiftedIndex::w(i, members(s)).name(), -kInf, kInf, obj);
            }
        for (int j = 0; j < n; ++j) lm.y[i].push_back(w[i][Mask{1} << j]);
    }

    for (int i = 0; i < m; ++i) {
        const Ratio& r = fp.ratios[i];
        auto& wi = w[i];

        std::vector<Term> norm{{wi[0], r.a0}};
        for (int j = 0; j < n; ++j) norm.push_back({wi[Mask{1} << j], r.a[j]});
        md.add_row(std::move(norm), Relation::equal, 1.0, "norm_" + std::to_string(i));

        // prod_S x prod_T (1 - x) >= 0 with |S u T| = K
        for (Mask U : combinations(n, K))
            for (Mask S : subsets(U)) {
                Mask T = U & ~S;
                std::vector<Term> t;
                for (Mask Tp : subsets(T)) t.push_back({wi[S | Tp], std::popcount(Tp) % 2 ? -1.0 : 1.0});
                md.add_row(std::move(t), Relation::greater_equal, 0.0);
            }

        // (d - Cx) prod_S x prod_T (1 - x) >= 0 with |S u T| = k
        for (int c = 0; c < fp.num_constraints(); ++c)
            for (Mask U : combinations(n, k))
                for (Mask S : subsets(U)) {
                    Mask T = U & ~S;
                    std::vector<Term> t;
                    for (Mask Tp : subsets(T)) {
                        double sg = std::popcount(Tp) % 2 ? -1.0 : 1.0;
                        Mask base = S | Tp;
                        t.push_back({wi[base], sg * fp.d[c]});
                        for (int j = 0; j < n; ++j)
                            if (fp.C[c][j] != 0.0) t.push_back({wi[base | (Mask{1} << j)], -sg * fp.C[c][j]});
                    }
                    md.add_row(std::move(t), Relation::greater_equal, 0.0);
                }

        // normalization times prod_S x:  u_S = (a0 + sum_S a) w_S + sum_{r not in S} a_r w_{S+r}
        for (int t = 1; t <= k; ++t)
            for (Mask S : combinations(n, t)) {
                double coef = r.a0;
                std::vector<Term> row{{u[S], 1.0}};
                for (int j = 0; j < n; ++j) {
                    Mask bit = Mask{1} << j;
                    if (S & bit) coef += r.a[j];
                    else if (r.a[j] != 0.0) row.push_back({wi[S | bit], -r.a[j]});
                }
                row.push_back({wi[S], -coef});
                md.add_row(std::move(row), Relation::equal, 0.0);
            }
    }

    for (int c = 0; c < fp.num_constraints(); ++c) {
        std::vector<Term> t;
        for (int j = 0; j < n; ++j) t.push_back({lm.x[j], fp.C[c][j]});
        md.add_row(std::move(t), Relation::less_equal, fp.d[c]);
    }
    return lm;
}

}  // namespace fracx
