#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fracx/lp.hpp"

namespace fracx {

struct EigenDecomposition {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // columns, unit length
    int sweeps = 0;
};

/// Cyclic Jacobi for symmetric matrices; off-diagonal tolerance 1e-12, at most 100 sweeps.
EigenDecomposition jacobi_eigen(const Eigen::MatrixXd& a);

/// alpha_i = 1 / prod_{j != i} (r_i - r_j). Throws DuplicatePoles.
std::vector<double> partial_fractions(std::span<const double> poles);

/// r_0 (numerator shift), r_1..r_n (poles), r_{n+1} (auxiliary node) and the support [a, b].
struct ShiftVector {
    std::vector<double> r;
    double a = 0.0, b = 1.0;

    int n() const { return static_cast<int>(r.size()) - 2; }
    /// Auxiliary node is b + 1 + max |r_i|. Throws DuplicatePoles or PoleInRange.
    static ShiftVector make(double r0, std::span<const double> poles, double a, double b);
    void validate() const;
};

/// f_0 = prod_{j>=1} (x - r_j), f_i = f_0 / (x - r_i), f_{n+1} = f_0 (x - r_0).
std::vector<double> f_curve(const ShiftVector& s, double x);
/// (1, 1/(x - r_1), ..., 1/(x - r_n), x - r_0).
std::vector<double> g_curve(const ShiftVector& s, double x);
/// (1, x, ..., x^d).
std::vector<double> moment_curve(double x, int d);

struct BasisMatrix {
    Eigen::MatrixXd T;
    Eigen::MatrixXd T_inv;
    double condition = 0.0;
};

/// Interpolation matrix mapping f_curve(x) to moment_curve(x, n + 1). Throws IllConditioned.
BasisMatrix basis_matrix_T(const ShiftVector& s);

/// A block sum_t weight_t * H(mu_{offset_t}, ...) of the given size.
struct HankelBlock {
    int size = 0;
    std::vector<std::pair<int, double>> parts;  // (offset, weight)

    Eigen::MatrixXd eval(std::span<const double> mu) const;
    /// Coefficients g with <v v', block(mu)> = g' mu.
    std::vector<double> gradient(const Eigen::VectorXd& v, int dim) const;
};

/// The two blocks whose joint semidefiniteness describes cone(M_d) on [a, b], d = mu.size() - 1.
std::vector<HankelBlock> hankel_blocks(int d, double a, double b);

struct MembershipResult {
    bool inside = false;
    double min_eig = 0.0;
    int block = -1;
    Eigen::VectorXd witness;
};

/// Membership in cone(M_d) (or conv(M_d) when normalized, which also needs mu_0 = 1).
MembershipResult moment_membership(std::span<const double> mu, double a, double b, bool normalized = false,
                                   double tol = 1e-9);

/// g' mu >= 0, valid for cone(M_d); violation is -g' mu at the input.
struct MomentCut {
    std::vector<double> coef;
    double violation = 0.0;
};

/// Throws InvalidArgument when the block is not violated along v.
MomentCut moment_cut(std::span<const double> mu, double a, double b, int block, const Eigen::VectorXd& v);

/// nu in conv(G_r): nu_0 = 1 and T nu in cone(M_{n+1}). Throws SignAssumptionViolated.
bool conv_G_membership(std::span<const double> nu, const ShiftVector& s, double tol = 1e-9);
/// nu in conv(G_{p,q}) on [a, b]: nu in cone(M_{p+q}) and nu_p = 1. Throws SignAssumptionViolated.
bool conv_Gpq_membership(std::span<const double> nu, int p, int q, double a, double b, double tol = 1e-9);

/// max -a x - b'y + c'z  s.t.  z_i = y_i / (x - r_i), x in [x_lo, x_hi], y in [y_lo, y_hi].
struct UnivariateInstance {
    double a = 0.0;
    std::vector<double> b, c, r;
    double x_lo = 0.0, x_hi = 1.0;
    std::vector<double> y_lo, y_hi;

    int m() const { return static_cast<int>(r.size()); }
    /// Throws DimensionMismatch or PoleInRange.
    void validate() const;
    double objective(double x, std::span<const double> y) const;
};

struct UnivariateModel {
    LinearModel model;
    int x = -1;
    std::vector<int> y, z, nu;
    std::vector<Separator> separators;
};

/// McCormick on z_i (x - r_i) = y_i with z bounds from the box corners.
UnivariateModel build_uni_mc(const UnivariateInstance& inst);
/// McCormick on z_i = y_i nu_i plus conv(G) through moment cuts. Throws UnsupportedBox.
UnivariateModel build_uni_mh(const UnivariateInstance& inst, double tol = 1e-7);

double solve_uni_mc(const UnivariateInstance& inst, const SolverOptions& opts = {});
/// Moment cuts are separated at opts.tol / 100; an automatic backend becomes
/// HiGHS with 1e-9 tolerances.
CuttingResult solve_uni_mh(const UnivariateInstance& inst, const CuttingOptions& opts = {});

}  // namespace fracx
