#include <algorithm>
#include <cmath>

#include "fracx/errors.hpp"
#include "fracx/lp.hpp"

#ifdef FRACX_HAVE_HIGHS
#include <Highs.h>
#endif

namespace fracx {

bool highs_available() {
#ifdef FRACX_HAVE_HIGHS
    return true;
#else
    return false;
#endif
}

Backend resolve_backend(const LinearModel& model, const SolverOptions& opts) {
    if (opts.backend != Backend::automatic) {
        if (opts.backend == Backend::highs && !highs_available())
            throw InvalidArgument("HiGHS backend requested but not compiled in");
        return opts.backend;
    }
    double rows = model.num_rows(), cols = model.num_cols();
    if (!highs_available() || (rows + 1) * (cols + 2 * rows) <= opts.dense_size_limit) return Backend::dense;
    return Backend::highs;
}

#ifdef FRACX_HAVE_HIGHS

namespace {

void row_bounds(const Row& row, double& lo, double& hi) {
    lo = row.rel == Relation::less_equal ? -kHighsInf : row.rhs;
    hi = row.rel == Relation::greater_equal ? kHighsInf : row.rhs;
}

double hinf(double v) {
    if (v == kInf) return kHighsInf;
    if (v == -kInf) return -kHighsInf;
    return v;
}

}  // namespace

struct LpSession::HighsState {
    Highs h;
};

static void load_highs(Highs& h, const LinearModel& model, const SolverOptions& opts) {
    h.setOptionValue("output_flag", false);
    h.setOptionValue("threads", 1);
    h.setOptionValue("random_seed", 0);
    // cold starts on big models go through the interior point method; crossover leaves a basis
    // for the warm-started simplex re-solves of a cutting loop
    if (model.num_rows() >= opts.ipm_min_rows) h.setOptionValue("solver", std::string("ipm"));
    h.setOptionValue("primal_feasibility_tolerance", opts.feas_tol);
    h.setOptionValue("dual_feasibility_tolerance", opts.opt_tol);
    long limit = opts.iteration_limit > 0 ? opts.iteration_limit : 50L * (model.num_rows() + model.num_cols());
    h.setOptionValue("simplex_iteration_limit", static_cast<HighsInt>(std::min<long>(limit, kHighsIInf)));

    HighsLp lp;
    int n = model.num_cols(), m = model.num_rows();
    lp.num_col_ = n;
    lp.num_row_ = m;
    lp.sense_ = model.sense == Sense::maximize ? ObjSense::kMaximize : ObjSense::kMinimize;
    lp.offset_ = model.obj_constant;
    lp.col_cost_.resize(n);
    lp.col_lower_.resize(n);
    lp.col_upper_.resize(n);
    for (int j = 0; j < n; ++j) {
        const Column& c = model.column(j);
        lp.col_cost_[j] = c.obj;
        lp.col_lower_[j] = hinf(c.lo);
        lp.col_upper_[j] = hinf(c.hi);
    }
    lp.row_lower_.resize(m);
    lp.row_upper_.resize(m);
    std::vector<HighsInt> count(n + 1, 0);
    for (int r = 0; r < m; ++r) {
        row_bounds(model.row(r), lp.row_lower_[r], lp.row_upper_[r]);
        for (const Term& t : model.row(r).terms) ++count[t.col + 1];
    }
    for (int j = 0; j < n; ++j) count[j + 1] += count[j];
    auto& A = lp.a_matrix_;
    A.format_ = MatrixFormat::kColwise;
    A.num_col_ = n;
    A.num_row_ = m;
    A.start_ = count;
    A.index_.resize(count[n]);
    A.value_.resize(count[n]);
    std::vector<HighsInt> fill(count.begin(), count.end() - 1);
    for (int r = 0; r < m; ++r)
        for (const Term& t : model.row(r).terms) {
            HighsInt p = fill[t.col]++;
            A.index_[p] = r;
            A.value_[p] = t.coef;
        }
    if (h.passModel(std::move(lp)) == HighsStatus::kError) throw NumericalBreakdown("HiGHS rejected the model");
}

static LpSolution run_highs(Highs& h, const LinearModel& model) {
    HighsStatus rs = h.run();
    LpSolution sol;
    HighsModelStatus ms = h.getModelStatus();
    sol.iterations = h.getInfo().simplex_iteration_count;
    if (ms == HighsModelStatus::kUnboundedOrInfeasible) {
        h.setOptionValue("presolve", "off");
        rs = h.run();
        ms = h.getModelStatus();
        h.setOptionValue("presolve", "choose");
    }
    switch (ms) {
        case HighsModelStatus::kOptimal: sol.status = LpStatus::optimal; break;
        case HighsModelStatus::kInfeasible: sol.status = LpStatus::infeasible; return sol;
        case HighsModelStatus::kUnbounded:
        case HighsModelStatus::kUnboundedOrInfeasible: sol.status = LpStatus::unbounded; return sol;
        case HighsModelStatus::kIterationLimit: sol.status = LpStatus::iteration_limit; return sol;
        default:
            throw NumericalBreakdown("HiGHS ended with " + h.modelStatusToString(ms));
    }
    (void)rs;
    const HighsSolution& hs = h.getSolution();
    sol.primal = hs.col_value;
    for (int j = 0; j < model.num_cols(); ++j) {
        const Column& c = model.column(j);
        sol.primal[j] = std::clamp(sol.primal[j], c.lo, c.hi);
    }
    sol.objective = model.objective_value(sol.primal);
    const HighsBasis& b = h.getBasis();
    std::uint64_t sig = 1469598103934665603ULL;
    for (auto s : b.col_status) {
        sig ^= static_cast<std::uint64_t>(s) + 1;
        sig *= 1099511628211ULL;
    }
    for (auto s : b.row_status) {
        sig ^= static_cast<std::uint64_t>(s) + 1;
        sig *= 1099511628211ULL;
    }
    sol.basis_signature = sig;
    return sol;
}

#else

struct LpSession::HighsState {};

#endif

LpSolution solve(const LinearModel& model, const SolverOptions& opts) {
    LpSession s(model, opts);
    return s.solve();
}

LpSession::LpSession(LinearModel model, SolverOptions opts)
    : model_(std::move(model)), opts_(opts), backend_(resolve_backend(model_, opts_)) {
    model_.validate();
#ifdef FRACX_HAVE_HIGHS
    if (backend_ == Backend::highs) {
        highs_ = std::make_unique<HighsState>();
        load_highs(highs_->h, model_, opts_);
    }
#endif
}

LpSession::~LpSession() = default;

void LpSession::add_rows(std::span<const Row> rows) {
    int first = model_.num_rows();
    for (const Row& r : rows) model_.add_row(r);
#ifdef FRACX_HAVE_HIGHS
    if (highs_ && !rows.empty()) {
        int k = static_cast<int>(rows.size());
        std::vector<double> lo(k), hi(k);
        std::vector<HighsInt> start, index;
        std::vector<double> value;
        for (int i = 0; i < k; ++i) {
            const Row& row = model_.row(first + i);
            row_bounds(row, lo[i], hi[i]);
            start.push_back(static_cast<HighsInt>(index.size()));
            for (const Term& t : row.terms) {
                index.push_back(t.col);
                value.push_back(t.coef);
            }
        }
        highs_->h.addRows(k, lo.data(), hi.data(), static_cast<HighsInt>(index.size()), start.data(), index.data(),
                          value.data());
    }
#else
    (void)first;
#endif
}

void LpSession::remove_rows(std::span<const int> sorted_rows) {
    model_.remove_rows(sorted_rows);
#ifdef FRACX_HAVE_HIGHS
    if (highs_ && !sorted_rows.empty()) {
        std::vector<HighsInt> set(sorted_rows.begin(), sorted_rows.end());
        highs_->h.deleteRows(static_cast<HighsInt>(set.size()), set.data());
    }
#endif
}

LpSolution LpSession::solve() {
#ifdef FRACX_HAVE_HIGHS
    if (highs_) {
        LpSolution s = run_highs(highs_->h, model_);
        highs_->h.setOptionValue("solver", std::string("simplex"));
        // exact steepest-edge weights cost a full pass over the rows at every warm start
        highs_->h.setOptionValue("simplex_dual_edge_weight_strategy", 1);
        if (s.optimal()) {
            double viol = model_.max_scaled_row_violation(s.primal);
            if (viol > 1e-5) throw NumericalBreakdown("HiGHS residual " + std::to_string(viol));
        }
        return s;
    }
#endif
    return solve_dense(model_, opts_);
}

}  // namespace fracx
