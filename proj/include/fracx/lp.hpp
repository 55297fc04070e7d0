#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fracx {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { maximize, minimize };
enum class Relation { less_equal, equal, greater_equal };

struct Term {
    int col;
    double coef;
};

struct Row {
    std::vector<Term> terms;
    Relation rel = Relation::less_equal;
    double rhs = 0.0;
    std::string name;
};

struct Column {
    std::string name;
    double lo = 0.0;
    double hi = kInf;
    double obj = 0.0;
    bool integer = false;
};

/// Sparse LP with a name registry for lifted symbols.
class LinearModel {
public:
    Sense sense = Sense::maximize;
    double obj_constant = 0.0;

    /// Adds a column; throws InvalidArgument if the name is already registered.
    int add_column(std::string name, double lo, double hi, double obj = 0.0);
    int add_row(Row row);
    int add_row(std::vector<Term> terms, Relation rel, double rhs, std::string name = {});

    std::optional<int> find(std::string_view name) const;
    /// Column index of a registered name; throws InvalidArgument if absent.
    int col(std::string_view name) const;

    int num_cols() const { return static_cast<int>(cols_.size()); }
    int num_rows() const { return static_cast<int>(rows_.size()); }
    const Column& column(int j) const { return cols_[j]; }
    Column& column(int j) { return cols_[j]; }
    const Row& row(int r) const { return rows_[r]; }
    const std::vector<Column>& columns() const { return cols_; }
    const std::vector<Row>& rows() const { return rows_; }

    void set_obj(int j, double c) { cols_[j].obj = c; }
    void add_obj(int j, double c) { cols_[j].obj += c; }
    void set_bounds(int j, double lo, double hi);

    void remove_rows(std::span<const int> sorted_rows);

    /// Throws InvalidArgument if a row references a missing column or has a NaN.
    void validate() const;

    double objective_value(std::span<const double> x) const;
    double activity(int r, std::span<const double> x) const;
    /// Positive amount by which row r is violated at x (0 if satisfied).
    double violation(int r, std::span<const double> x) const;
    /// Largest row violation and bound violation at x.
    double max_row_violation(std::span<const double> x) const;
    double max_bound_violation(std::span<const double> x) const;
    /// Row violation divided by max(1, |rhs| + sum |a_j x_j|).
    double max_scaled_row_violation(std::span<const double> x) const;

private:
    std::vector<Column> cols_;
    std::vector<Row> rows_;
    std::unordered_map<std::string, int> index_;
};

double row_activity(const Row& row, std::span<const double> x);
double row_violation(const Row& row, std::span<const double> x);

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };
const char* to_string(LpStatus s);

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    std::vector<double> primal;
    double objective = 0.0;
    long iterations = 0;
    /// Hash of the final basis, for determinism checks.
    std::uint64_t basis_signature = 0;
    bool optimal() const { return status == LpStatus::optimal; }
};

enum class Backend { automatic, dense, highs };

struct SolverOptions {
    Backend backend = Backend::automatic;
    /// 0 means 50 * (rows + cols).
    long iteration_limit = 0;
    double feas_tol = 1e-7;
    double opt_tol = 1e-7;
    double pivot_tol = 1e-11;
    /// automatic picks the dense solver while rows * (cols + rows) stays below this.
    double dense_size_limit = 2.5e5;
    /// HiGHS cold starts use the interior point method from this many rows on.
    long ipm_min_rows = 4000;
};

bool highs_available();
Backend resolve_backend(const LinearModel& model, const SolverOptions& opts);

/// Solves the model once. Throws NumericalBreakdown on unrecoverable numerics.
LpSolution solve(const LinearModel& model, const SolverOptions& opts = {});

/// Dense bounded-variable primal simplex, Dantzig pricing with Bland fallback.
LpSolution solve_dense(const LinearModel& model, const SolverOptions& opts = {});

/// Incremental solver state: rows may be appended or removed between solves.
class LpSession {
public:
    explicit LpSession(LinearModel model, SolverOptions opts = {});
    ~LpSession();
    LpSession(const LpSession&) = delete;
    LpSession& operator=(const LpSession&) = delete;

    void add_rows(std::span<const Row> rows);
    void remove_rows(std::span<const int> sorted_rows);
    LpSolution solve();
    const LinearModel& model() const { return model_; }
    Backend backend() const { return backend_; }

private:
    struct HighsState;
    LinearModel model_;
    SolverOptions opts_;
    Backend backend_;
    std::unique_ptr<HighsState> highs_;
};

struct Cut {
    Row row;
    /// Cuts sharing a group compete for the same pool slots.
    int group = 0;
};

using Separator = std::function<std::vector<Cut>(std::span<const double> x)>;

struct CuttingOptions {
    int max_rounds = 200;
    double tol = 1e-6;
    /// Pool cap per group; slack cuts beyond it are evicted.
    int max_cuts_per_group = 500;
    SolverOptions lp;
};

struct CuttingResult {
    LpSolution solution;
    int rounds = 0;
    int cuts_added = 0;
    bool converged = false;
    std::vector<double> trace;
};

CuttingResult cutting_loop(const LinearModel& model, std::span<const Separator> separators,
                           const CuttingOptions& opts = {});

/// CPLEX-style LP file text.
std::string export_lp(const LinearModel& model);

/// Throws IterationLimit / Infeasible / UnboundedPolyhedron unless the status is optimal.
void require_optimal(const LpSolution& s, std::string_view what);

}  // namespace fracx
