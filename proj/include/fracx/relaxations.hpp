#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fracx/lp.hpp"
#include "fracx/program.hpp"

namespace fracx {

/// Symbol of a lifted column. Canonical form orders W indices and sorts S;
/// W(j,j) of a binary j and wS with |S| = 1 both become y(j), wS with S empty
/// becomes rho, uS with |S| = 1 becomes x(j).
struct LiftedIndex {
    enum class Kind { x, rho, y, W, wS, uS };
    Kind kind = Kind::x;
    int ratio = 0;
    std::vector<int> idx;

    static LiftedIndex x(int j) { return {Kind::x, 0, {j}}; }
    static LiftedIndex rho(int i) { return {Kind::rho, i, {}}; }
    static LiftedIndex y(int i, int j) { return {Kind::y, i, {j}}; }
    static LiftedIndex W(int i, int j, int k) { return {Kind::W, i, {j, k}}; }
    static LiftedIndex w(int i, std::vector<int> S) { return {Kind::wS, i, std::move(S)}; }
    static LiftedIndex u(std::vector<int> S) { return {Kind::uS, 0, std::move(S)}; }

    /// binary_diag tells whether W(j,j) may alias y(j).
    LiftedIndex canonical(bool binary_diag = true) const;
    /// Registry name, e.g. rho_0, y_1_3, W_0_2_5, w_1_0_2_3, u_1_4.
    std::string name(bool binary_diag = true) const;
};

/// Registered columns of a built relaxation, for separators and tests.
struct LiftedModel {
    LinearModel model;
    int n = 0;
    int m = 0;
    std::vector<int> x;
    std::vector<int> rho;
    std::vector<std::vector<int>> y;  // [i][j]
    std::vector<char> binary;

    /// Column of W^i_{jk} (aliases y for binary diagonals), or -1 if absent.
    int W(int i, int j, int k) const;
};

LiftedModel build_lef(const FractionalProgram& fp, const VariableBounds& b);
LiftedModel build_1term(const FractionalProgram& fp, const VariableBounds& b);
LiftedModel build_rqp(const FractionalProgram& fp, const VariableBounds& b);

struct KTermOptions {
    long column_cap = 20000;
    int max_vars = 14;
};

/// k-th level of the hierarchy with shared u_S (|S| <= k) and per-ratio w^i_S (|S| <= k+1).
LiftedModel build_kterm(const FractionalProgram& fp, int k, const KTermOptions& opts = {});

enum class ConicFamily : unsigned { rho_denominator = 1, square_over_denominator = 2, both = 3 };

/// Tangent cuts for rho(a0 + a'x) >= 1 and y_j(a0 + a'x) >= x_j^2 violated by more than tol.
std::vector<Cut> conic_oa_cuts(const LiftedModel& lm, std::span<const double> point, const FractionalProgram& fp,
                               const VariableBounds& b, ConicFamily family, double tol = 1e-6);

/// Homogenized triangle inequalities violated by more than tol (4 per triple per ratio).
std::vector<Cut> triangle_cuts(const LiftedModel& lm, std::span<const double> point, double tol = 1e-6);

struct RelaxationWithCuts {
    LiftedModel lifted;
    std::vector<Separator> separators;
};

/// LEF plus both conic families as cuts.
RelaxationWithCuts build_cef(const FractionalProgram& fp, const VariableBounds& b);
/// 1-Term (with LEF rows) plus the rho * denominator >= 1 conic family.
RelaxationWithCuts build_1term_conic(const FractionalProgram& fp, const VariableBounds& b);
Separator triangle_separator(const LiftedModel& lm, double tol = 1e-6);

/// Odd-cycle inequality over cycle nodes v_0..v_{L-1} (edge t joins v_t and v_{t+1 mod L}).
struct OddCycleInequality {
    std::vector<int> nodes;
    std::vector<int> edges;
    std::vector<char> in_D;
    double violation = 0.0;
};

/// Exact separation through shortest odd closed walks in the two-layer graph.
/// y and w are indexed by graph node and edge. Throws NegativeWeight.
std::vector<OddCycleInequality> oddcycle_separate(double rho, std::span<const double> y, std::span<const double> w,
                                                  const SupportGraph& g, double tol = 1e-6);

/// sum_{S0} y - sum_{S1} y + sum_{C\D} w - sum_D w - (|D|-1)/2 rho, evaluated from the cycle description.
double oddcycle_excess(const OddCycleInequality& ineq, double rho, std::span<const double> y,
                       std::span<const double> w, const SupportGraph& g);
Row oddcycle_row(const OddCycleInequality& ineq, const SupportGraph& g, int rho_col, std::span<const int> y_cols,
                 std::span<const int> w_cols);

struct BilinearModel {
    LinearModel model;
    int rho = -1;
    std::vector<int> y;
    std::vector<int> w;
    std::vector<Separator> separators;
};

/// Odd-cycle relaxation of min/max p(x)/q(x) over {0,1}^V. Throws NonPositiveDenominator.
BilinearModel build_bilinear_frac(const BilinearFractional& q, double tol = 1e-6);

}  // namespace fracx
