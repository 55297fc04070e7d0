#include <algorithm>
#include <cmath>

#include "fracx/errors.hpp"
#include "fracx/lp.hpp"

namespace fracx {

int LinearModel::add_column(std::string name, double lo, double hi, double obj) {
    if (index_.count(name)) throw InvalidArgument("duplicate column name " + name);
    if (lo > hi) throw InvalidArgument("column " + name + " has lo > hi");
    int j = num_cols();
    index_.emplace(name, j);
    cols_.push_back(Column{std::move(name), lo, hi, obj, false});
    return j;
}

int LinearModel::add_row(Row row) {
    auto& t = row.terms;
    std::sort(t.begin(), t.end(), [](const Term& a, const Term& b) { return a.col < b.col; });
    size_t w = 0;
    for (size_t k = 0; k < t.size(); ++k) {
        if (w > 0 && t[w - 1].col == t[k].col) t[w - 1].coef += t[k].coef;
        else t[w++] = t[k];
    }
    t.resize(w);
    std::erase_if(t, [](const Term& a) { return a.coef == 0.0; });
    rows_.push_back(std::move(row));
    return num_rows() - 1;
}

int LinearModel::add_row(std::vector<Term> terms, Relation rel, double rhs, std::string name) {
    return add_row(Row{std::move(terms), rel, rhs, std::move(name)});
}

std::optional<int> LinearModel::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

int LinearModel::col(std::string_view name) const {
    auto j = find(name);
    if (!j) throw InvalidArgument("unknown column " + std::string(name));
    return *j;
}

void LinearModel::set_bounds(int j, double lo, double hi) {
    cols_[j].lo = lo;
    cols_[j].hi = hi;
}

void LinearModel::remove_rows(std::span<const int> sorted_rows) {
    if (sorted_rows.empty()) return;
    std::vector<Row> kept;
    kept.reserve(rows_.size());
    size_t p = 0;
    for (int r = 0; r < num_rows(); ++r) {
        if (p < sorted_rows.size() && sorted_rows[p] == r) {
            ++p;
            continue;
        }
        kept.push_back(std::move(rows_[r]));
    }
    rows_ = std::move(kept);
}

void LinearModel::validate() const {
    for (int r = 0; r < num_rows(); ++r) {
        for (const Term& t : rows_[r].terms) {
            if (t.col < 0 || t.col >= num_cols())
                throw InvalidArgument("row " + std::to_string(r) + " references missing column");
            if (!std::isfinite(t.coef)) throw InvalidArgument("row " + std::to_string(r) + " has non-finite coefficient");
        }
        if (std::isnan(rows_[r].rhs)) throw InvalidArgument("row " + std::to_string(r) + " has NaN rhs");
    }
}

double row_activity(const Row& row, std::span<const double> x) {
    double s = 0.0;
    for (const Term& t : row.terms) s += t.coef * x[t.col];
    return s;
}

double row_violation(const Row& row, std::span<const double> x) {
    double a = row_activity(row, x);
    switch (row.rel) {
        case Relation::less_equal: return std::max(0.0, a - row.rhs);
        case Relation::greater_equal: return std::max(0.0, row.rhs - a);
        case Relation::equal: return std::abs(a - row.rhs);
    }
    return 0.0;
}

double LinearModel::objective_value(std::span<const double> x) const {
    double s = obj_constant;
    for (int j = 0; j < num_cols(); ++j) s += cols_[j].obj * x[j];
    return s;
}

double LinearModel::activity(int r, std::span<const double> x) const { return row_activity(rows_[r], x); }

double LinearModel::violation(int r, std::span<const double> x) const { return row_violation(rows_[r], x); }

double LinearModel::max_row_violation(std::span<const double> x) const {
    double v = 0.0;
    for (const Row& row : rows_) v = std::max(v, row_violation(row, x));
    return v;
}

double LinearModel::max_scaled_row_violation(std::span<const double> x) const {
    double v = 0.0;
    for (const Row& row : rows_) {
        double scale = std::abs(row.rhs);
        for (const Term& t : row.terms) scale += std::abs(t.coef * x[t.col]);
        v = std::max(v, row_violation(row, x) / std::max(1.0, scale));
    }
    return v;
}

double LinearModel::max_bound_violation(std::span<const double> x) const {
    double v = 0.0;
    for (int j = 0; j < num_cols(); ++j) {
        v = std::max(v, cols_[j].lo - x[j]);
        v = std::max(v, x[j] - cols_[j].hi);
    }
    return v;
}

const char* to_string(LpStatus s) {
    switch (s) {
        case LpStatus::optimal: return "optimal";
        case LpStatus::infeasible: return "infeasible";
        case LpStatus::unbounded: return "unbounded";
        case LpStatus::iteration_limit: return "iteration_limit";
    }
    return "?";
}

void require_optimal(const LpSolution& s, std::string_view what) {
    std::string w(what);
    switch (s.status) {
        case LpStatus::optimal: return;
        case LpStatus::infeasible: throw Infeasible(w);
        case LpStatus::unbounded: throw UnboundedPolyhedron(w);
        case LpStatus::iteration_limit: throw IterationLimit(w);
    }
}

}  // namespace fracx
