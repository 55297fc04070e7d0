#pragma once

#include <span>
#include <utility>
#include <vector>

#include "fracx/lp.hpp"

namespace fracx {

/// One ratio (b0 + b'x) / (a0 + a'x).
struct Ratio {
    double a0 = 1.0;
    std::vector<double> a;
    double b0 = 0.0;
    std::vector<double> b;

    double numerator(std::span<const double> x) const;
    double denominator(std::span<const double> x) const;
};

struct VarKind {
    bool binary = true;
    double lo = 0.0;
    double hi = 1.0;

    static VarKind make_binary() { return {}; }
    static VarKind continuous(double lo, double hi) { return {false, lo, hi}; }
};

/// max/min  sum_i ratio_i(x) + c'x  subject to  Cx <= d  and per-variable kinds.
struct FractionalProgram {
    int n = 0;
    std::vector<Ratio> ratios;
    std::vector<double> c;
    std::vector<std::vector<double>> C;
    std::vector<double> d;
    std::vector<VarKind> kind;
    Sense sense = Sense::maximize;

    int m() const { return static_cast<int>(ratios.size()); }
    int num_constraints() const { return static_cast<int>(C.size()); }
    bool all_binary() const;
    double evaluate(std::span<const double> x) const;
    /// Cx <= d within slack.
    bool feasible(std::span<const double> x, double slack = 1e-9) const;

    /// Builds an n-variable program with zero linear term, no rows, all binary.
    static FractionalProgram binary(int n, std::vector<Ratio> ratios, Sense sense = Sense::maximize);
};

/// Throws DimensionMismatch if any vector disagrees with n.
void check_dimensions(const FractionalProgram& fp);

/// The continuous relaxation {Cx <= d, x in kind box} as an LP over x (objective zero).
LinearModel relaxation_polytope(const FractionalProgram& fp);

struct ValidationReport {
    std::vector<double> denom_min;
    std::vector<std::vector<double>> argmin;
};

inline constexpr double kPositivityMargin = 1e-7;

/// Certifies every denominator exceeds the margin over the continuous relaxation.
/// Throws DimensionMismatch, NonPositiveDenominator or InfeasibleRegion.
ValidationReport validate_program(const FractionalProgram& fp);

struct VariableBounds {
    std::vector<double> x_lo, x_hi;
    std::vector<double> rho_lo, rho_hi;
    std::vector<double> ratio_lo, ratio_hi;
    std::vector<double> denom_lo, denom_hi;
};

/// Bounds from LPs over the continuous relaxation. Throws UnboundedPolyhedron.
VariableBounds compute_bounds(const FractionalProgram& fp);

/// Quadratic-over-quadratic terms on a graph: q(x) = c0 + c'x + sum_e A_e x_u x_v,
/// p(x) = d0 + d'x + sum_e B_e x_u x_v.
struct SupportGraph {
    int nodes = 0;
    std::vector<std::pair<int, int>> edges;  // u < v, unique
    bool series_parallel = false;

    int edge_index(int u, int v) const;
    /// Throws InvalidArgument on self-loops, duplicates or out-of-range nodes.
    void validate() const;
};

struct BilinearFractional {
    SupportGraph graph;
    std::vector<double> A, B;  // per edge
    std::vector<double> c, d;  // per node
    double c0 = 1.0, d0 = 0.0;
    Sense sense = Sense::minimize;

    double denominator(std::span<const double> x) const;
    double numerator(std::span<const double> x) const;
};

}  // namespace fracx
