#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>

#include <Eigen/Dense>

#include "fracx/errors.hpp"
#include "fracx/oracle.hpp"

namespace fracx {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

int worker_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("FRACX_THREADS")) {
        int t = std::atoi(env);
        if (t > 0) return t;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// Values of an affine form over all assignments of variables [from, to); x_from is the top bit.
std::vector<double> half_table(std::span<const double> coef, double constant, int from, int to) {
    const int L = to - from;
    std::vector<double> t(std::size_t{1} << L);
    for (std::size_t s = 0; s < t.size(); ++s) {
        double v = constant;
        for (int k = 0; k < L; ++k)
            if ((s >> (L - 1 - k)) & 1u) v += coef[from + k];
        t[s] = v;
    }
    return t;
}

struct Tables {
    int m = 0, rows = 0;
    std::vector<std::vector<double>> num, den, act;
    std::vector<double> lin;
};

Tables build_tables(const FractionalProgram& fp, int from, int to, bool with_constants) {
    Tables t;
    t.m = fp.m();
    t.rows = fp.num_constraints();
    for (const Ratio& r : fp.ratios) {
        t.num.push_back(half_table(r.b, with_constants ? r.b0 : 0.0, from, to));
        t.den.push_back(half_table(r.a, with_constants ? r.a0 : 0.0, from, to));
    }
    for (int c = 0; c < t.rows; ++c) t.act.push_back(half_table(fp.C[c], 0.0, from, to));
    t.lin = half_table(fp.c, 0.0, from, to);
    return t;
}

struct Best {
    double value = kNegInf;
    std::uint64_t index = 0;
    bool found = false;
};

std::vector<double> decode(std::uint64_t s, int n) {
    std::vector<double> x(n);
    for (int j = 0; j < n; ++j) x[j] = static_cast<double>((s >> (n - 1 - j)) & 1u);
    return x;
}

OracleResult enumerate(const FractionalProgram& fp, int threads, const char* method) {
    check_dimensions(fp);
    if (!fp.all_binary()) throw InvalidArgument("enumeration needs binary variables");
    const int n = fp.n;
    const int L = n / 2, H = n - L;
    const double sgn = fp.sense == Sense::maximize ? 1.0 : -1.0;
    Tables hi = build_tables(fp, 0, H, true);
    Tables lo = build_tables(fp, H, n, false);
    const std::size_t NH = std::size_t{1} << H, NL = std::size_t{1} << L;

    auto work = [&](std::size_t h0, std::size_t h1, Best& best) {
        std::vector<double> acc(NL);
        for (std::size_t h = h0; h < h1; ++h) {
            const double lh = hi.lin[h];
            const double* ll = lo.lin.data();
            for (std::size_t l = 0; l < NL; ++l) acc[l] = lh + ll[l];
            for (int i = 0; i < hi.m; ++i) {
                const double nh = hi.num[i][h], dh = hi.den[i][h];
                const double* nl = lo.num[i].data();
                const double* dl = lo.den[i].data();
                for (std::size_t l = 0; l < NL; ++l) acc[l] += (nh + nl[l]) / (dh + dl[l]);
            }
            for (int c = 0; c < hi.rows; ++c) {
                const double lim = fp.d[c] + 1e-9 - hi.act[c][h];
                const double* al = lo.act[c].data();
                for (std::size_t l = 0; l < NL; ++l)
                    if (al[l] > lim) acc[l] = kNegInf;
            }
            for (std::size_t l = 0; l < NL; ++l) {
                double v = sgn * acc[l];
                if (v > best.value) {
                    best.value = v;
                    best.index = (static_cast<std::uint64_t>(h) << L) | l;
                    best.found = true;
                }
            }
        }
    };

    int T = std::min<std::size_t>(worker_count(threads), NH);
    std::vector<Best> shard(T);
    if (T == 1) {
        work(0, NH, shard[0]);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < T; ++t) pool.emplace_back(work, NH * t / T, NH * (t + 1) / T, std::ref(shard[t]));
        for (auto& th : pool) th.join();
    }
    // shards cover increasing index ranges, so strict > keeps the lexicographically first maximizer
    Best best;
    for (const Best& b : shard)
        if (b.found && (!best.found || b.value > best.value)) best = b;
    if (!best.found) throw Infeasible("no binary point satisfies Cx <= d");

    OracleResult res;
    res.argmax = decode(best.index, n);
    res.value = fp.evaluate(res.argmax);
    res.enumerated = std::uint64_t{1} << n;
    res.method = method;
    return res;
}

struct SplitMix {
    std::uint64_t s;
    std::uint64_t next() {
        std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

}  // namespace

OracleResult brute_force_binary(const FractionalProgram& fp) {
    if (fp.n > 22) throw TooLarge("brute force is limited to n <= 22");
    return enumerate(fp, 1, "enumeration");
}

OracleResult split_enumeration(const FractionalProgram& fp, int threads) {
    if (fp.n > 32) throw TooLarge("split enumeration is limited to n <= 32");
    return enumerate(fp, threads, "split-enumeration");
}

OracleResult local_search(const FractionalProgram& fp, int starts, std::uint64_t seed) {
    check_dimensions(fp);
    if (!fp.all_binary()) throw InvalidArgument("local search needs binary variables");
    const int n = fp.n;
    const double sgn = fp.sense == Sense::maximize ? 1.0 : -1.0;
    auto score = [&](const std::vector<double>& x) {
        return fp.feasible(x) ? sgn * fp.evaluate(x) : kNegInf;
    };

    SplitMix rng{seed};
    OracleResult res;
    res.method = "local-search";
    double best = kNegInf;
    for (int s = 0; s < starts; ++s) {
        std::vector<double> x(n, 0.0);
        if (s > 0)
            for (int j = 0; j < n; ++j) x[j] = static_cast<double>(rng.next() >> 63);
        double cur = score(x);
        ++res.enumerated;
        if (cur == kNegInf) continue;
        for (bool improved = true; improved;) {
            improved = false;
            for (int j = 0; j < n; ++j) {
                x[j] = 1.0 - x[j];
                double v = score(x);
                ++res.enumerated;
                if (v > cur + 1e-12) {
                    cur = v;
                    improved = true;
                } else {
                    x[j] = 1.0 - x[j];
                }
            }
            if (improved) continue;
            for (int j = 0; j < n && !improved; ++j)
                for (int k = j + 1; k < n && !improved; ++k) {
                    x[j] = 1.0 - x[j];
                    x[k] = 1.0 - x[k];
                    double v = score(x);
                    ++res.enumerated;
                    if (v > cur + 1e-12) {
                        cur = v;
                        improved = true;
                    } else {
                        x[j] = 1.0 - x[j];
                        x[k] = 1.0 - x[k];
                    }
                }
        }
        if (cur > best || (cur == best && x < res.argmax)) {
            best = cur;
            res.argmax = x;
        }
    }
    if (best == kNegInf) throw Infeasible("local search found no feasible binary point");
    res.value = fp.evaluate(res.argmax);
    return res;
}

OracleResult best_known(const FractionalProgram& fp) {
    if (fp.n <= 22) return brute_force_binary(fp);
    if (fp.n <= 32) return split_enumeration(fp);
    return local_search(fp);
}

OracleResult brute_force_bilinear(const BilinearFractional& q) {
    q.graph.validate();
    const int V = q.graph.nodes;
    if (V > 24) throw TooLarge("bilinear enumeration is limited to 24 nodes");
    const double sgn = q.sense == Sense::maximize ? 1.0 : -1.0;
    OracleResult res;
    res.method = "enumeration";
    double best = kNegInf;
    std::uint64_t arg = 0;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << V); ++s) {
        std::vector<double> x = decode(s, V);
        double den = q.denominator(x);
        if (!(den > 0.0)) throw NonPositiveDenominator(0, x, den);
        double v = sgn * q.numerator(x) / den;
        if (v > best) {
            best = v;
            arg = s;
        }
    }
    res.enumerated = std::uint64_t{1} << V;
    res.argmax = decode(arg, V);
    res.value = q.numerator(res.argmax) / q.denominator(res.argmax);
    return res;
}

std::vector<std::vector<double>> enumerate_vertices(const std::vector<std::vector<double>>& C,
                                                    std::span<const double> d, std::span<const double> lo,
                                                    std::span<const double> hi) {
    const int n = static_cast<int>(lo.size());
    if (static_cast<int>(hi.size()) != n || C.size() != d.size()) throw DimensionMismatch("vertex enumeration data");
    if (n > 6 || C.size() > 12) throw TooLarge("vertex enumeration is limited to n <= 6 and 12 rows");
    std::vector<std::vector<double>> A;
    std::vector<double> rhs;
    for (size_t r = 0; r < C.size(); ++r) {
        if (static_cast<int>(C[r].size()) != n) throw DimensionMismatch("row length differs from n");
        A.push_back(C[r]);
        rhs.push_back(d[r]);
    }
    for (int j = 0; j < n; ++j) {
        std::vector<double> e(n, 0.0);
        if (std::isfinite(hi[j])) {
            e[j] = 1.0;
            A.push_back(e);
            rhs.push_back(hi[j]);
        }
        if (std::isfinite(lo[j])) {
            e[j] = -1.0;
            A.push_back(e);
            rhs.push_back(-lo[j]);
        }
    }
    const int R = static_cast<int>(A.size());
    std::vector<std::vector<double>> out;
    if (R < n) return out;
    std::vector<int> pick(n);
    for (int i = 0; i < n; ++i) pick[i] = i;
    for (;;) {
        Eigen::MatrixXd M(n, n);
        Eigen::VectorXd b(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) M(i, j) = A[pick[i]][j];
            b(i) = rhs[pick[i]];
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
        if (lu.rank() == n) {
            Eigen::VectorXd x = lu.solve(b);
            bool ok = true;
            for (int r = 0; r < R && ok; ++r) {
                double act = 0.0;
                for (int j = 0; j < n; ++j) act += A[r][j] * x(j);
                ok = act <= rhs[r] + 1e-8;
            }
            if (ok) {
                std::vector<double> v(x.data(), x.data() + n);
                bool dup = std::any_of(out.begin(), out.end(), [&](const std::vector<double>& w) {
                    for (int j = 0; j < n; ++j)
                        if (std::abs(w[j] - v[j]) > 1e-8) return false;
                    return true;
                });
                if (!dup) out.push_back(std::move(v));
            }
        }
        int i = n - 1;
        while (i >= 0 && pick[i] == R - n + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
    }
    return out;
}

OracleResult univariate_exact(const UnivariateInstance& inst, int grid) {
    inst.validate();
    if (grid < 3) throw InvalidArgument("grid needs at least 3 points");
    const int m = inst.m();
    auto best_y = [&](double x, std::vector<double>* y) {
        double v = -inst.a * x;
        for (int i = 0; i < m; ++i) {
            double k = inst.c[i] / (x - inst.r[i]) - inst.b[i];
            double yi = k > 0.0 ? inst.y_hi[i] : inst.y_lo[i];
            if (y) (*y)[i] = yi;
            v += k * yi;
        }
        return v;
    };
    const double lo = inst.x_lo, hi = inst.x_hi;
    auto at = [&](int t) { return lo + (hi - lo) * t / (grid - 1); };
    int arg = 0;
    double best = kNegInf;
    for (int t = 0; t < grid; ++t) {
        double v = best_y(at(t), nullptr);
        if (v > best) {
            best = v;
            arg = t;
        }
    }
    double bx = at(arg);
    if (hi > lo) {
        double l = at(std::max(arg - 1, 0)), r = at(std::min(arg + 1, grid - 1));
        const double g = (std::sqrt(5.0) - 1.0) / 2.0;
        double p = r - g * (r - l), q = l + g * (r - l);
        double fp = best_y(p, nullptr), fq = best_y(q, nullptr);
        while (r - l > 1e-9) {
            if (fp < fq) {
                l = p;
                p = q;
                fp = fq;
                q = l + g * (r - l);
                fq = best_y(q, nullptr);
            } else {
                r = q;
                q = p;
                fq = fp;
                p = r - g * (r - l);
                fp = best_y(p, nullptr);
            }
        }
        double xm = 0.5 * (l + r);
        double vm = best_y(xm, nullptr);
        if (vm > best) {
            best = vm;
            bx = xm;
        }
    }
    OracleResult res;
    res.method = "univariate-grid";
    res.enumerated = static_cast<std::uint64_t>(grid);
    std::vector<double> y(m);
    res.value = best_y(bx, &y);
    res.argmax = {bx};
    res.argmax.insert(res.argmax.end(), y.begin(), y.end());
    return res;
}

}  // namespace fracx
