#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "fracx/errors.hpp"
#include "fracx/moment.hpp"

namespace fracx {

void UnivariateInstance::validate() const {
    const auto m = r.size();
    if (b.size() != m || c.size() != m || y_lo.size() != m || y_hi.size() != m)
        throw DimensionMismatch("univariate instance vectors disagree in length");
    if (!(x_lo <= x_hi)) throw InvalidArgument("empty x range");
    for (size_t i = 0; i < m; ++i) {
        if (!(y_lo[i] <= y_hi[i])) throw InvalidArgument("empty y range");
        if (r[i] >= x_lo && r[i] <= x_hi) throw PoleInRange("r_" + std::to_string(i) + " lies in the x range");
    }
}

double UnivariateInstance::objective(double x, std::span<const double> y) const {
    double v = -a * x;
    for (int i = 0; i < m(); ++i) v += -b[i] * y[i] + c[i] * y[i] / (x - r[i]);
    return v;
}

namespace {

struct Affine {
    std::vector<Term> terms;
    double constant = 0.0;
};

// p = u * v relaxed over u in [ul, uh], v in [vl, vh].
void mccormick(LinearModel& md, const Affine& p, const Affine& u, double ul, double uh, const Affine& v, double vl,
               double vh) {
    auto row = [&](double cu, double cv, double k, Relation rel) {
        // p - cu u - cv v  (rel)  k
        std::vector<Term> t = p.terms;
        double rhs = k - p.constant;
        for (const Term& e : u.terms) t.push_back({e.col, -cu * e.coef});
        rhs += cu * u.constant;
        for (const Term& e : v.terms) t.push_back({e.col, -cv * e.coef});
        rhs += cv * v.constant;
        md.add_row(std::move(t), rel, rhs);
    };
    row(vl, ul, -ul * vl, Relation::greater_equal);
    row(vh, uh, -uh * vh, Relation::greater_equal);
    row(vl, uh, -uh * vl, Relation::less_equal);
    row(vh, ul, -ul * vh, Relation::less_equal);
}

UnivariateModel base_columns(const UnivariateInstance& inst) {
    UnivariateModel um;
    LinearModel& md = um.model;
    md.sense = Sense::maximize;
    um.x = md.add_column("x", inst.x_lo, inst.x_hi, -inst.a);
    for (int i = 0; i < inst.m(); ++i)
        um.y.push_back(md.add_column("y_" + std::to_string(i), inst.y_lo[i], inst.y_hi[i], -inst.b[i]));
    return um;
}

}  // namespace

UnivariateModel build_uni_mc(const UnivariateInstance& inst) {
    inst.validate();
    UnivariateModel um = base_columns(inst);
    LinearModel& md = um.model;
    for (int i = 0; i < inst.m(); ++i) {
        double tl = inst.x_lo - inst.r[i], th = inst.x_hi - inst.r[i];
        double zl = kInf, zh = -kInf;
        for (double t : {tl, th})
            for (double y : {inst.y_lo[i], inst.y_hi[i]}) {
                zl = std::min(zl, y / t);
                zh = std::max(zh, y / t);
            }
        int z = md.add_column("z_" + std::to_string(i), zl, zh, inst.c[i]);
        um.z.push_back(z);
        mccormick(md, {{{um.y[i], 1.0}}, 0.0}, {{{z, 1.0}}, 0.0}, zl, zh, {{{um.x, 1.0}}, -inst.r[i]}, tl, th);
    }
    return um;
}

UnivariateModel build_uni_mh(const UnivariateInstance& inst, double tol) {
    inst.validate();
    if (inst.x_lo != 0.0 || inst.x_hi != 1.0) throw UnsupportedBox("Uni-MH envelopes need x in [0, 1]");
    for (int i = 0; i < inst.m(); ++i)
        if (inst.y_lo[i] != 1.0 || inst.y_hi[i] != 2.0) throw UnsupportedBox("Uni-MH envelopes need y in [1, 2]");
    auto shifts = std::make_shared<ShiftVector>(ShiftVector::make(0.0, inst.r, 0.0, 1.0));
    if (!(f_curve(*shifts, 0.0)[0] > 0.0))
        throw SignAssumptionViolated("prod (x - r_i) is not positive on [0, 1]");
    auto T = std::make_shared<Eigen::MatrixXd>(basis_matrix_T(*shifts).T);

    UnivariateModel um = base_columns(inst);
    LinearModel& md = um.model;
    for (int i = 0; i < inst.m(); ++i) {
        double n1 = 1.0 / (1.0 - inst.r[i]), n2 = -1.0 / inst.r[i];
        double nl = std::min(n1, n2), nh = std::max(n1, n2);
        um.nu.push_back(md.add_column("nu_" + std::to_string(i), nl, nh));
        um.z.push_back(md.add_column("z_" + std::to_string(i), -kInf, kInf, inst.c[i]));
        mccormick(md, {{{um.z[i], 1.0}}, 0.0}, {{{um.y[i], 1.0}}, 0.0}, 1.0, 2.0, {{{um.nu[i], 1.0}}, 0.0}, nl, nh);
    }

    const int m = inst.m();
    std::vector<int> gcols = um.nu;
    gcols.push_back(um.x);  // nu_{m+1} = x - r_0 with r_0 = 0
    um.separators.push_back([shifts, T, gcols, m, tol](std::span<const double> pt) {
        Eigen::VectorXd g(m + 2);
        g(0) = 1.0;
        for (int j = 0; j <= m; ++j) g(j + 1) = pt[gcols[j]];
        Eigen::VectorXd mu = (*T) * g;
        std::span<const double> mus(mu.data(), mu.size());
        auto blocks = hankel_blocks(m + 1, shifts->a, shifts->b);
        std::vector<Cut> cuts;
        for (const HankelBlock& blk : blocks) {
            EigenDecomposition e = jacobi_eigen(blk.eval(mus));
            for (int k = 0; k < e.values.size() && e.values(k) < -tol; ++k) {
                std::vector<double> gk = blk.gradient(e.vectors.col(k), m + 2);
                // g' T nu >= 0 with nu_0 = 1
                Eigen::VectorXd h = T->transpose() * Eigen::Map<Eigen::VectorXd>(gk.data(), m + 2);
                double scale = h.tail(m + 1).cwiseAbs().maxCoeff();
                if (!(scale > 0.0)) continue;
                Row row;
                row.rel = Relation::greater_equal;
                row.rhs = -h(0) / scale;
                for (int j = 0; j <= m; ++j) row.terms.push_back({gcols[j], h(j + 1) / scale});
                cuts.push_back({std::move(row), 0});
            }
        }
        return cuts;
    });
    return um;
}

double solve_uni_mc(const UnivariateInstance& inst, const SolverOptions& opts) {
    UnivariateModel um = build_uni_mc(inst);
    LpSolution s = solve(um.model, opts);
    require_optimal(s, "Uni-MC");
    return s.objective;
}

CuttingResult solve_uni_mh(const UnivariateInstance& inst, const CuttingOptions& opts) {
    // At the generic 1e-6 the outer approximation can end a few 1e-6 above
    // Uni-MC, which makes the comparison meaningless.
    CuttingOptions o = opts;
    o.tol = opts.tol * 1e-2;
    if (o.lp.backend == Backend::automatic && highs_available()) {
        o.lp.backend = Backend::highs;
        o.lp.feas_tol = std::min(o.lp.feas_tol, 1e-9);
        o.lp.opt_tol = std::min(o.lp.opt_tol, 1e-9);
    }
    UnivariateModel um = build_uni_mh(inst, o.tol * 0.1);
    CuttingResult res = cutting_loop(um.model, um.separators, o);
    require_optimal(res.solution, "Uni-MH");
    return res;
}

}  // namespace fracx
