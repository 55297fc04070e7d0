#pragma once

#include <span>
#include <vector>

#include "fracx/lp.hpp"
#include "fracx/program.hpp"

namespace fracx {

/// A point (rho, x) of R++ x R^n.
struct ProjPoint {
    double rho = 1.0;
    std::vector<double> x;
};

struct LabeledPointSet {
    std::vector<ProjPoint> points;
    int dim = 0;

    /// Throws DomainError unless every rho > 0 and every x has size dim.
    void validate() const;
};

/// (rho, x) -> (1/rho, x/rho). Throws DomainError when rho <= 0.
ProjPoint phi(const ProjPoint& p);

struct HullVerdict {
    bool in_conv_S = false;
    bool in_conv_phi = false;
};

/// Decides q in conv(S) directly and through (1, x) in rho * conv(phi(S)).
HullVerdict hull_correspondence(const LabeledPointSet& S, const ProjPoint& q, double tol = 1e-7);

/// L-infinity distance from q to conv(points), computed by LP.
double hull_distance(std::span<const std::vector<double>> points, std::span<const double> q);

struct CharnesCooperModel {
    LinearModel model;
    int rho_col = -1;
    std::vector<int> y_cols;

    std::vector<double> recover_x(std::span<const double> primal) const;
};

/// Single-ratio LFP as an LP in (rho, y). Binary marks are relaxed to [0, 1].
/// Throws NotSingleRatio or NonPositiveDenominator.
CharnesCooperModel charnes_cooper(const FractionalProgram& fp, Sense sense);

/// Dense affine row  a'f (rel) beta  over the coordinates of f.
struct AffineRow {
    std::vector<double> a;
    Relation rel = Relation::less_equal;
    double beta = 0.0;
};

/// a'f <= beta  becomes  a'g - beta * rho <= 0  over the columns g_cols.
std::vector<Row> homogenize_rows(std::span<const AffineRow> rows, std::span<const int> g_cols, int rho_col);

/// The rows Cx <= d together with the finite variable bounds, as affine rows.
std::vector<AffineRow> closure_rows(const FractionalProgram& fp);

}  // namespace fracx
