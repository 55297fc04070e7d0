// Dense bounded-variable primal simplex.
//
// Every row r becomes  a_r x - s_r = 0  with the slack s_r carrying the row
// bounds, so all constraints are equalities and all variables are boxed.
// Rows whose starting activity violates the slack box get an artificial.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "fracx/errors.hpp"
#include "fracx/lp.hpp"

namespace fracx {

namespace {

enum class NbStatus : unsigned char { basic, at_lo, at_hi, free_zero, fixed };

struct Tableau {
    int m = 0;  // rows
    int n = 0;  // structural columns
    int N = 0;  // all columns
    std::vector<double> T;  // m x N row major, B^-1 [A | -I | art]
    std::vector<double> lo, hi, x, cost, d;
    std::vector<int> basis;  // basic variable of each row
    std::vector<NbStatus> st;
    std::vector<int> art_row;  // row of each artificial column (index j - n - m)
    std::vector<double> art_sign;

    double& at(int r, int j) { return T[static_cast<size_t>(r) * N + j]; }
    double at(int r, int j) const { return T[static_cast<size_t>(r) * N + j]; }
};

struct Simplex {
    const LinearModel& model;
    const SolverOptions& opts;
    Tableau tb;
    long iters = 0;
    long limit = 0;

    Simplex(const LinearModel& mdl, const SolverOptions& o) : model(mdl), opts(o) {}

    void setup() {
        int m = model.num_rows(), n = model.num_cols();
        tb.m = m;
        tb.n = n;
        std::vector<double> start(n);
        for (int j = 0; j < n; ++j) {
            const Column& c = model.column(j);
            if (std::isfinite(c.lo)) start[j] = c.lo;
            else if (std::isfinite(c.hi)) start[j] = c.hi;
            else start[j] = 0.0;
        }
        std::vector<double> act(m);
        std::vector<double> slo(m), shi(m);
        for (int r = 0; r < m; ++r) {
            const Row& row = model.row(r);
            act[r] = row_activity(row, start);
            slo[r] = row.rel == Relation::less_equal ? -kInf : row.rhs;
            shi[r] = row.rel == Relation::greater_equal ? kInf : row.rhs;
        }
        std::vector<int> need_art;
        for (int r = 0; r < m; ++r)
            if (act[r] < slo[r] || act[r] > shi[r]) need_art.push_back(r);
        int na = static_cast<int>(need_art.size());
        tb.N = n + m + na;
        tb.T.assign(static_cast<size_t>(m) * tb.N, 0.0);
        tb.lo.resize(tb.N);
        tb.hi.resize(tb.N);
        tb.x.assign(tb.N, 0.0);
        tb.st.assign(tb.N, NbStatus::at_lo);
        tb.basis.assign(m, -1);
        tb.art_row = need_art;
        tb.art_sign.assign(na, 1.0);

        for (int j = 0; j < n; ++j) {
            const Column& c = model.column(j);
            tb.lo[j] = c.lo;
            tb.hi[j] = c.hi;
            tb.x[j] = start[j];
            if (c.lo == c.hi) tb.st[j] = NbStatus::fixed;
            else if (std::isfinite(c.lo)) tb.st[j] = NbStatus::at_lo;
            else if (std::isfinite(c.hi)) tb.st[j] = NbStatus::at_hi;
            else tb.st[j] = NbStatus::free_zero;
        }
        std::vector<double> rowsign(m, -1.0);
        for (int r = 0; r < m; ++r) {
            int s = n + r;
            tb.lo[s] = slo[r];
            tb.hi[s] = shi[r];
        }
        for (int k = 0; k < na; ++k) {
            int r = need_art[k];
            int s = n + r;
            int a = n + m + k;
            double target = act[r] < slo[r] ? slo[r] : shi[r];
            tb.x[s] = target;
            tb.st[s] = slo[r] == shi[r] ? NbStatus::fixed : (target == slo[r] ? NbStatus::at_lo : NbStatus::at_hi);
            // a_r x - s_r + sigma * art = 0 with art >= 0
            double sigma = target - act[r] >= 0 ? 1.0 : -1.0;
            tb.art_sign[k] = sigma;
            tb.lo[a] = 0.0;
            tb.hi[a] = kInf;
            tb.x[a] = std::abs(target - act[r]);
            tb.st[a] = NbStatus::basic;
            tb.basis[r] = a;
            rowsign[r] = sigma;  // B^-1 entry is 1 / sigma = sigma
        }
        for (int r = 0; r < m; ++r) {
            if (tb.basis[r] < 0) {
                tb.basis[r] = n + r;
                tb.st[n + r] = NbStatus::basic;
                tb.x[n + r] = act[r];
            }
        }
        for (int r = 0; r < m; ++r) {
            double f = rowsign[r];
            for (const Term& t : model.row(r).terms) tb.at(r, t.col) += f * t.coef;
            tb.at(r, n + r) = -f;
        }
        for (int k = 0; k < na; ++k) tb.at(need_art[k], n + m + k) = 1.0;
    }

    void price(const std::vector<double>& c) {
        tb.cost = c;
        tb.d = c;
        for (int r = 0; r < tb.m; ++r) {
            double cb = c[tb.basis[r]];
            if (cb == 0.0) continue;
            const double* row = &tb.T[static_cast<size_t>(r) * tb.N];
            for (int j = 0; j < tb.N; ++j) tb.d[j] -= cb * row[j];
        }
    }

    void pivot(int p, int q) {
        int N = tb.N;
        double* prow = &tb.T[static_cast<size_t>(p) * N];
        double piv = prow[q];
        double inv = 1.0 / piv;
        for (int j = 0; j < N; ++j) prow[j] *= inv;
        prow[q] = 1.0;
        std::vector<int> nz;
        nz.reserve(N);
        for (int j = 0; j < N; ++j)
            if (prow[j] != 0.0) nz.push_back(j);
        for (int r = 0; r < tb.m; ++r) {
            if (r == p) continue;
            double* row = &tb.T[static_cast<size_t>(r) * N];
            double f = row[q];
            if (f == 0.0) continue;
            for (int j : nz) row[j] -= f * prow[j];
            row[q] = 0.0;
        }
        double f = tb.d[q];
        if (f != 0.0) {
            for (int j : nz) tb.d[j] -= f * prow[j];
            tb.d[q] = 0.0;
        }
    }

    // Returns 0 optimal, 1 unbounded, 2 iteration limit.
    int run_phase(bool allow_art_entering) {
        long degenerate = 0;
        long bland_after = 3L * (tb.m + tb.n);
        bool bland = false;
        const double otol = opts.opt_tol;
        const double ftol = opts.feas_tol;
        const int art0 = tb.n + tb.m;
        for (;;) {
            if (iters >= limit) return 2;
            int q = -1;
            double best = 0.0;
            int dir = 0;
            for (int j = 0; j < tb.N; ++j) {
                NbStatus s = tb.st[j];
                if (s == NbStatus::basic || s == NbStatus::fixed) continue;
                if (!allow_art_entering && j >= art0) continue;
                double dj = tb.d[j];
                int dj_dir = 0;
                if (dj < -otol && (s == NbStatus::at_lo || s == NbStatus::free_zero)) dj_dir = 1;
                else if (dj > otol && (s == NbStatus::at_hi || s == NbStatus::free_zero)) dj_dir = -1;
                if (!dj_dir) continue;
                if (bland) {
                    q = j;
                    dir = dj_dir;
                    break;
                }
                if (std::abs(dj) > best) {
                    best = std::abs(dj);
                    q = j;
                    dir = dj_dir;
                }
            }
            if (q < 0) return 0;
            ++iters;

            double range = tb.hi[q] - tb.lo[q];
            int p = -1;
            double theta = kInf;
            if (!bland) {
                double theta_max = kInf;
                for (int r = 0; r < tb.m; ++r) {
                    double t = tb.at(r, q);
                    if (std::abs(t) <= opts.pivot_tol) continue;
                    double alpha = -dir * t;
                    int b = tb.basis[r];
                    double lim;
                    if (alpha < 0) {
                        if (!std::isfinite(tb.lo[b])) continue;
                        lim = (tb.x[b] - tb.lo[b] + ftol) / -alpha;
                    } else {
                        if (!std::isfinite(tb.hi[b])) continue;
                        lim = (tb.hi[b] + ftol - tb.x[b]) / alpha;
                    }
                    theta_max = std::min(theta_max, lim);
                }
                double big = 0.0;
                for (int r = 0; r < tb.m; ++r) {
                    double t = tb.at(r, q);
                    if (std::abs(t) <= opts.pivot_tol) continue;
                    double alpha = -dir * t;
                    int b = tb.basis[r];
                    double lim;
                    if (alpha < 0) {
                        if (!std::isfinite(tb.lo[b])) continue;
                        lim = (tb.x[b] - tb.lo[b]) / -alpha;
                    } else {
                        if (!std::isfinite(tb.hi[b])) continue;
                        lim = (tb.hi[b] - tb.x[b]) / alpha;
                    }
                    if (lim <= theta_max && std::abs(t) > big) {
                        big = std::abs(t);
                        p = r;
                        theta = std::max(0.0, lim);
                    }
                }
            } else {
                int pb = -1;
                for (int r = 0; r < tb.m; ++r) {
                    double t = tb.at(r, q);
                    if (std::abs(t) <= opts.pivot_tol) continue;
                    double alpha = -dir * t;
                    int b = tb.basis[r];
                    double lim;
                    if (alpha < 0) {
                        if (!std::isfinite(tb.lo[b])) continue;
                        lim = (tb.x[b] - tb.lo[b]) / -alpha;
                    } else {
                        if (!std::isfinite(tb.hi[b])) continue;
                        lim = (tb.hi[b] - tb.x[b]) / alpha;
                    }
                    lim = std::max(0.0, lim);
                    if (lim < theta || (lim == theta && b < pb)) {
                        theta = lim;
                        p = r;
                        pb = b;
                    }
                }
            }

            bool flip = std::isfinite(range) && range <= theta;
            if (!flip && p < 0) return 1;
            double step = flip ? range : theta;
            if (step <= 1e-12) {
                if (++degenerate > bland_after) bland = true;
            } else {
                degenerate = 0;
            }
            if (step != 0.0) {
                for (int r = 0; r < tb.m; ++r) {
                    double t = tb.at(r, q);
                    if (t != 0.0) tb.x[tb.basis[r]] -= dir * t * step;
                }
                tb.x[q] += dir * step;
            }
            if (flip) {
                tb.x[q] = dir > 0 ? tb.hi[q] : tb.lo[q];
                tb.st[q] = dir > 0 ? NbStatus::at_hi : NbStatus::at_lo;
                continue;
            }
            int leave = tb.basis[p];
            double alpha = -dir * tb.at(p, q);
            if (alpha < 0) {
                tb.x[leave] = tb.lo[leave];
                tb.st[leave] = NbStatus::at_lo;
            } else {
                tb.x[leave] = tb.hi[leave];
                tb.st[leave] = NbStatus::at_hi;
            }
            if (tb.lo[leave] == tb.hi[leave]) tb.st[leave] = NbStatus::fixed;
            tb.st[q] = NbStatus::basic;
            tb.basis[p] = q;
            pivot(p, q);
        }
    }

    // Recomputes basic values from the original columns to shed drift.
    void polish() {
        int m = tb.m, n = tb.n;
        if (m == 0 || m > 3000) return;
        Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m, m);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
        std::vector<int> pos(tb.N, -1);
        for (int r = 0; r < m; ++r) pos[tb.basis[r]] = r;
        auto add_col = [&](int j, double coef, int row, bool basic) {
            if (basic) B(row, pos[j]) += coef;
            else rhs(row) -= coef * tb.x[j];
        };
        for (int r = 0; r < m; ++r) {
            for (const Term& t : model.row(r).terms) add_col(t.col, t.coef, r, pos[t.col] >= 0);
            add_col(n + r, -1.0, r, pos[n + r] >= 0);
        }
        for (size_t k = 0; k < tb.art_row.size(); ++k) {
            int a = n + m + static_cast<int>(k);
            add_col(a, tb.art_sign[k], tb.art_row[k], pos[a] >= 0);
        }
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
        Eigen::VectorXd xb = lu.solve(rhs);
        if (!xb.allFinite()) throw NumericalBreakdown("singular basis in dense simplex");
        for (int r = 0; r < m; ++r) tb.x[tb.basis[r]] = xb(r);
    }

    std::uint64_t signature() const {
        std::uint64_t h = 1469598103934665603ULL;
        for (int j = 0; j < tb.N; ++j) {
            h ^= static_cast<std::uint64_t>(tb.st[j]) + 1;
            h *= 1099511628211ULL;
        }
        return h;
    }

    LpSolution run() {
        model.validate();
        setup();
        limit = opts.iteration_limit > 0 ? opts.iteration_limit : 50L * (model.num_rows() + model.num_cols());
        LpSolution sol;
        const int art0 = tb.n + tb.m;
        int na = tb.N - art0;
        if (na > 0) {
            std::vector<double> c1(tb.N, 0.0);
            for (int j = art0; j < tb.N; ++j) c1[j] = 1.0;
            price(c1);
            int rc = run_phase(true);
            if (rc == 2) {
                sol.status = LpStatus::iteration_limit;
                sol.iterations = iters;
                return sol;
            }
            double infeas = 0.0;
            for (int j = art0; j < tb.N; ++j) infeas += tb.x[j];
            if (infeas > opts.feas_tol) {
                sol.status = LpStatus::infeasible;
                sol.iterations = iters;
                return sol;
            }
            for (int j = art0; j < tb.N; ++j) {
                tb.hi[j] = 0.0;
                if (tb.st[j] != NbStatus::basic) {
                    tb.st[j] = NbStatus::fixed;
                    tb.x[j] = 0.0;
                }
            }
        }
        std::vector<double> c2(tb.N, 0.0);
        double sgn = model.sense == Sense::maximize ? -1.0 : 1.0;
        for (int j = 0; j < tb.n; ++j) c2[j] = sgn * model.column(j).obj;
        price(c2);
        int rc = run_phase(false);
        sol.iterations = iters;
        if (rc == 2) {
            sol.status = LpStatus::iteration_limit;
            return sol;
        }
        if (rc == 1) {
            sol.status = LpStatus::unbounded;
            return sol;
        }
        polish();
        sol.primal.assign(tb.x.begin(), tb.x.begin() + tb.n);
        for (int j = 0; j < tb.n; ++j) {
            const Column& c = model.column(j);
            sol.primal[j] = std::clamp(sol.primal[j], c.lo, c.hi);
        }
        double viol = model.max_scaled_row_violation(sol.primal);
        if (viol > 1e-6) throw NumericalBreakdown("dense simplex residual " + std::to_string(viol));
        sol.status = LpStatus::optimal;
        sol.objective = model.objective_value(sol.primal);
        sol.basis_signature = signature();
        return sol;
    }
};

}  // namespace

LpSolution solve_dense(const LinearModel& model, const SolverOptions& opts) {
    Simplex s(model, opts);
    return s.run();
}

}  // namespace fracx
