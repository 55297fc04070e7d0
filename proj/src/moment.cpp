#include <algorithm>
#include <cmath>
#include <string>

#include "fracx/errors.hpp"
#include "fracx/moment.hpp"

namespace fracx {

std::vector<double> partial_fractions(std::span<const double> poles) {
    const int n = static_cast<int>(poles.size());
    std::vector<double> alpha(n);
    for (int i = 0; i < n; ++i) {
        double p = 1.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            if (poles[i] == poles[j]) throw DuplicatePoles("pole " + std::to_string(poles[i]) + " repeats");
            p *= poles[i] - poles[j];
        }
        alpha[i] = 1.0 / p;
    }
    return alpha;
}

ShiftVector ShiftVector::make(double r0, std::span<const double> poles, double a, double b) {
    ShiftVector s;
    s.a = a;
    s.b = b;
    s.r.push_back(r0);
    double big = std::abs(r0);
    for (double p : poles) {
        s.r.push_back(p);
        big = std::max(big, std::abs(p));
    }
    s.r.push_back(b + 1.0 + big);
    s.validate();
    return s;
}

void ShiftVector::validate() const {
    if (r.size() < 2) throw InvalidArgument("shift vector needs r_0 and r_{n+1}");
    if (!(a < b)) throw InvalidArgument("support needs a < b");
    std::vector<double> sorted = r;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw DuplicatePoles("shifts must be pairwise distinct");
    for (int i = 1; i <= n(); ++i)
        if (r[i] >= a && r[i] <= b) throw PoleInRange("pole " + std::to_string(r[i]) + " inside the support");
}

std::vector<double> f_curve(const ShiftVector& s, double x) {
    const int n = s.n();
    std::vector<double> f(n + 2);
    double f0 = 1.0;
    for (int j = 1; j <= n; ++j) f0 *= x - s.r[j];
    f[0] = f0;
    for (int i = 1; i <= n; ++i) {
        double p = 1.0;
        for (int j = 1; j <= n; ++j)
            if (j != i) p *= x - s.r[j];
        f[i] = p;
    }
    f[n + 1] = f0 * (x - s.r[0]);
    return f;
}

std::vector<double> g_curve(const ShiftVector& s, double x) {
    const int n = s.n();
    std::vector<double> g(n + 2);
    g[0] = 1.0;
    for (int i = 1; i <= n; ++i) g[i] = 1.0 / (x - s.r[i]);
    g[n + 1] = x - s.r[0];
    return g;
}

std::vector<double> moment_curve(double x, int d) {
    std::vector<double> m(d + 1);
    double p = 1.0;
    for (int k = 0; k <= d; ++k, p *= x) m[k] = p;
    return m;
}

BasisMatrix basis_matrix_T(const ShiftVector& s) {
    s.validate();
    const int n = s.n(), N = n + 2;
    std::vector<std::vector<double>> fr(N);  // fr[j] = f_curve at r_j
    for (int j = 0; j < N; ++j) fr[j] = f_curve(s, s.r[j]);

    BasisMatrix out;
    Eigen::MatrixXd& T = out.T;
    T.setZero(N, N);
    for (int i = 0; i < N; ++i) {
        for (int j = 1; j <= n; ++j) T(i, j) = std::pow(s.r[j], i) / fr[j][j];
        double acc = std::pow(s.r[0], i);
        for (int k = 1; k <= n; ++k) acc -= T(i, k) * fr[0][k];
        T(i, 0) = acc / fr[0][0];
        acc = std::pow(s.r[n + 1], i);
        for (int k = 0; k <= n; ++k) acc -= T(i, k) * fr[n + 1][k];
        T(i, n + 1) = acc / fr[n + 1][n + 1];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(T);
    const auto& sv = svd.singularValues();
    out.condition = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : kInf;
    if (out.condition > 1e12) throw IllConditioned("condition estimate " + std::to_string(out.condition));
    out.T_inv = T.fullPivLu().inverse();
    return out;
}

Eigen::MatrixXd HankelBlock::eval(std::span<const double> mu) const {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(size, size);
    for (auto [off, w] : parts)
        for (int p = 0; p < size; ++p)
            for (int q = 0; q < size; ++q) h(p, q) += w * mu[off + p + q];
    return h;
}

std::vector<double> HankelBlock::gradient(const Eigen::VectorXd& v, int dim) const {
    std::vector<double> g(dim, 0.0);
    for (auto [off, w] : parts)
        for (int p = 0; p < size; ++p)
            for (int q = 0; q < size; ++q) g[off + p + q] += w * v(p) * v(q);
    return g;
}

std::vector<HankelBlock> hankel_blocks(int d, double a, double b) {
    if (d < 1) throw InvalidArgument("moment degree must be at least 1");
    if (!(a < b)) throw InvalidArgument("support needs a < b");
    std::vector<HankelBlock> out;
    if (d % 2 == 1) {
        int k = (d + 1) / 2;
        out.push_back({k, {{1, 1.0}, {0, -a}}});
        out.push_back({k, {{0, b}, {1, -1.0}}});
    } else {
        int k = d / 2;
        out.push_back({k + 1, {{0, 1.0}}});
        out.push_back({k, {{2, -1.0}, {1, a + b}, {0, -a * b}}});
    }
    return out;
}

MembershipResult moment_membership(std::span<const double> mu, double a, double b, bool normalized, double tol) {
    const int d = static_cast<int>(mu.size()) - 1;
    MembershipResult res;
    res.min_eig = kInf;
    auto blocks = hankel_blocks(d, a, b);
    for (int t = 0; t < static_cast<int>(blocks.size()); ++t) {
        EigenDecomposition e = jacobi_eigen(blocks[t].eval(mu));
        if (e.values(0) < res.min_eig) {
            res.min_eig = e.values(0);
            res.block = t;
            res.witness = e.vectors.col(0);
        }
    }
    res.inside = res.min_eig >= -tol;
    if (normalized && std::abs(mu[0] - 1.0) > tol) res.inside = false;
    return res;
}

MomentCut moment_cut(std::span<const double> mu, double a, double b, int block, const Eigen::VectorXd& v) {
    const int d = static_cast<int>(mu.size()) - 1;
    auto blocks = hankel_blocks(d, a, b);
    if (block < 0 || block >= static_cast<int>(blocks.size())) throw InvalidArgument("no such Hankel block");
    if (v.size() != blocks[block].size) throw DimensionMismatch("witness size does not match the block");
    MomentCut cut;
    cut.coef = blocks[block].gradient(v.normalized(), d + 1);
    double val = 0.0;
    for (int k = 0; k <= d; ++k) val += cut.coef[k] * mu[k];
    cut.violation = -val;
    if (!(cut.violation > 0.0)) throw InvalidArgument("block is not violated along the witness");
    return cut;
}

bool conv_G_membership(std::span<const double> nu, const ShiftVector& s, double tol) {
    s.validate();
    if (static_cast<int>(nu.size()) != s.n() + 2) throw DimensionMismatch("nu must have n + 2 entries");
    // poles lie outside [a, b], so the sign of f_0 is constant there
    if (!(f_curve(s, s.a)[0] > 0.0)) throw SignAssumptionViolated("prod (x - r_i) is not positive on the support");
    if (std::abs(nu[0] - 1.0) > tol) return false;
    BasisMatrix bm = basis_matrix_T(s);
    Eigen::VectorXd mu = bm.T * Eigen::Map<const Eigen::VectorXd>(nu.data(), static_cast<long>(nu.size()));
    return moment_membership(std::span<const double>(mu.data(), mu.size()), s.a, s.b, false, tol).inside;
}

bool conv_Gpq_membership(std::span<const double> nu, int p, int q, double a, double b, double tol) {
    if (p < 0 || q < 0 || p + q < 1) throw InvalidArgument("need p, q >= 0 and p + q >= 1");
    if (static_cast<int>(nu.size()) != p + q + 1) throw DimensionMismatch("nu must have p + q + 1 entries");
    bool positive = p == 0 || (p % 2 == 1 ? a > 0.0 : (a > 0.0 || b < 0.0));
    if (!positive) throw SignAssumptionViolated("x^p is not positive on the support");
    if (std::abs(nu[p] - 1.0) > tol) return false;
    return moment_membership(nu, a, b, false, tol).inside;
}

}  // namespace fracx
