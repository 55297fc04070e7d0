#include <doctest.h>

#include <cmath>
#include <memory>

#include "fracx/bench.hpp"
#include "fracx/errors.hpp"
#include "fracx/moment.hpp"
#include "fracx/oracle.hpp"

using namespace fracx;

namespace {

std::vector<double> mixture(const std::vector<std::pair<double, double>>& atoms, int d) {
    std::vector<double> mu(d + 1, 0.0);
    for (auto [wt, t] : atoms) {
        auto m = moment_curve(t, d);
        for (int k = 0; k <= d; ++k) mu[k] += wt * m[k];
    }
    return mu;
}

ShiftVector random_shifts(SplitMix64& rng, int n) {
    std::vector<double> poles;
    for (int i = 0; i < n; ++i) poles.push_back(i % 2 ? rng.uniform(1.2, 3.0) + i : rng.uniform(-3.0, -0.2) - i);
    return ShiftVector::make(rng.uniform(-0.5, 0.5), poles, 0.0, 1.0);
}

}  // namespace

TEST_SUITE("moment") {
    TEST_CASE("jacobi on a known matrix") {
        Eigen::MatrixXd a(2, 2);
        a << 1, 2, 2, 3;
        EigenDecomposition e = jacobi_eigen(a);
        CHECK(e.values(0) == doctest::Approx(2.0 - std::sqrt(5.0)));
        CHECK(e.values(1) == doctest::Approx(2.0 + std::sqrt(5.0)));
        Eigen::VectorXd v = e.vectors.col(0);
        CHECK((a * v - e.values(0) * v).norm() < 1e-12);
    }

    TEST_CASE("jacobi agrees with Eigen on random symmetric matrices") {
        SplitMix64 rng(51);
        for (int t = 0; t < 20; ++t) {
            int n = 2 + t % 14;
            Eigen::MatrixXd a(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = rng.uniform(-1, 1);
            EigenDecomposition e = jacobi_eigen(a);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(a);
            CHECK((e.values - ref.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
        }
    }

    TEST_CASE("partial fractions") {
        std::vector<double> a = partial_fractions(std::vector<double>{0.0, 1.0});
        CHECK(a[0] == doctest::Approx(-1.0));
        CHECK(a[1] == doctest::Approx(1.0));
        CHECK(partial_fractions(std::vector<double>{3.0})[0] == 1.0);
        CHECK_THROWS_AS(partial_fractions(std::vector<double>{1.0, 1.0}), DuplicatePoles);

        std::vector<double> r{-0.5, 1.5, 2.0};
        std::vector<double> al = partial_fractions(r);
        for (int k = 1; k <= 9; ++k) {
            double x = 0.1 * k, f0 = (x - r[0]) * (x - r[1]) * (x - r[2]), s = 0.0;
            for (int i = 0; i < 3; ++i) s += al[i] * f0 / (x - r[i]);
            CHECK(s == doctest::Approx(1.0).epsilon(1e-9));
        }
    }

    TEST_CASE("shift vector validation") {
        CHECK_THROWS_AS(ShiftVector::make(0.0, std::vector<double>{0.5}, 0.0, 1.0), PoleInRange);
        CHECK_THROWS_AS(ShiftVector::make(0.0, std::vector<double>{-1.0, -1.0}, 0.0, 1.0), DuplicatePoles);
        ShiftVector s = ShiftVector::make(0.0, std::vector<double>{-1.0, 2.0}, 0.0, 1.0);
        CHECK(s.r.back() == doctest::Approx(4.0));  // b + 1 + max |r|
    }

    TEST_CASE("basis matrix for one pole") {
        ShiftVector s = ShiftVector::make(-1.0, std::vector<double>{2.0}, 0.0, 1.0);
        BasisMatrix B = basis_matrix_T(s);
        Eigen::VectorXd f = Eigen::Map<Eigen::VectorXd>(f_curve(s, 0.5).data(), 3);
        Eigen::VectorXd m = B.T * f;
        CHECK(m(0) == doctest::Approx(1.0));
        CHECK(m(1) == doctest::Approx(0.5));
        CHECK(m(2) == doctest::Approx(0.25));
        CHECK(std::abs(B.T(0, 0)) < 1e-12);
        CHECK(std::abs(B.T(0, 2)) < 1e-12);
        CHECK((B.T * B.T_inv - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-8);
    }

    TEST_CASE("basis identity and row zero on random shifts") {
        SplitMix64 rng(52);
        for (int t = 0; t < 10; ++t) {
            int n = 1 + t % 5;
            ShiftVector s = random_shifts(rng, n);
            BasisMatrix B = basis_matrix_T(s);
            std::vector<double> poles(s.r.begin() + 1, s.r.end() - 1);
            std::vector<double> al = partial_fractions(poles);
            for (int i = 1; i <= n; ++i) CHECK(B.T(0, i) == doctest::Approx(al[i - 1]).epsilon(1e-9));
            for (int k = 0; k <= 10; ++k) {
                double x = 0.1 * k;
                Eigen::VectorXd m = B.T * Eigen::Map<Eigen::VectorXd>(f_curve(s, x).data(), n + 2);
                auto ref = moment_curve(x, n + 1);
                for (int p = 0; p <= n + 1; ++p) CHECK(std::abs(m(p) - ref[p]) <= 1e-8 * std::max(1.0, std::abs(ref[p])));
            }
        }
    }

    TEST_CASE("moment membership verdicts") {
        for (int d = 1; d <= 7; ++d) {
            CHECK(moment_membership(moment_curve(0.3, d), 0.0, 1.0, true).inside);
            CHECK(moment_membership(mixture({{0.5, 0.0}, {0.5, 1.0}}, d), 0.0, 1.0, true).inside);
            CHECK(moment_membership(mixture({{0.2, 0.1}, {0.3, 0.6}, {0.5, 0.9}}, d), 0.0, 1.0, true).inside);
            CHECK_FALSE(moment_membership(moment_curve(1.5, d), 0.0, 1.0, true).inside);
        }
        std::vector<double> neg{1.0, 2.0, 3.0};
        MembershipResult r = moment_membership(neg, 0.0, 1.0);
        CHECK_FALSE(r.inside);
        CHECK(r.min_eig < 0.0);
        std::vector<double> unnorm{2.0, 1.0, 0.6};
        CHECK(moment_membership(unnorm, 0.0, 1.0).inside);
        CHECK_FALSE(moment_membership(unnorm, 0.0, 1.0, true).inside);
    }

    TEST_CASE("endpoint mixture makes the localizing block singular") {
        std::vector<double> mu = mixture({{0.5, 0.0}, {0.5, 1.0}}, 2);
        auto blocks = hankel_blocks(2, 0.0, 1.0);
        REQUIRE(blocks.size() == 2);
        Eigen::MatrixXd loc = blocks[1].eval(mu);
        CHECK(std::abs(loc.determinant()) < 1e-12);
        CHECK(jacobi_eigen(blocks[0].eval(mu)).values.minCoeff() > 0.0);
    }

    TEST_CASE("cut for the negative-variance vector") {
        std::vector<double> mu{1.0, 2.0, 3.0};
        MembershipResult r = moment_membership(mu, 0.0, 10.0);
        REQUIRE_FALSE(r.inside);
        MomentCut c = moment_cut(mu, 0.0, 10.0, r.block, r.witness);
        CHECK(c.violation == doctest::Approx(std::sqrt(5.0) - 2.0).epsilon(1e-9));
        double g = 0.0;
        for (int k = 0; k < 3; ++k) g += c.coef[k] * mu[k];
        CHECK(-g == doctest::Approx(c.violation));
        CHECK_THROWS_AS(moment_cut(moment_curve(0.5, 2), 0.0, 1.0, 0, r.witness), InvalidArgument);
    }

    TEST_CASE("cutting converges and every cut is valid on the curve") {
        SplitMix64 rng(53);
        for (int d = 2; d <= 6; ++d) {
            LinearModel md;
            md.add_column("mu_0", 1.0, 1.0);
            for (int k = 1; k <= d; ++k) md.add_column("mu_" + std::to_string(k), -1.0, 1.0, rng.uniform(-1, 1));
            auto cuts = std::make_shared<std::vector<std::vector<double>>>();
            Separator sep = [d, cuts](std::span<const double> mu) {
                std::vector<Cut> out;
                MembershipResult r = moment_membership(mu.first(d + 1), 0.0, 1.0, false, 1e-7);
                if (r.inside) return out;
                MomentCut c = moment_cut(mu.first(d + 1), 0.0, 1.0, r.block, r.witness);
                cuts->push_back(c.coef);
                Cut cut;
                cut.row.rel = Relation::greater_equal;
                for (int k = 0; k <= d; ++k) cut.row.terms.push_back({k, c.coef[k]});
                out.push_back(cut);
                return out;
            };
            CuttingOptions o;
            o.max_rounds = 50;
            o.tol = 1e-9;
            CuttingResult res = cutting_loop(md, std::span<const Separator>(&sep, 1), o);
            REQUIRE(res.solution.optimal());
            CHECK(moment_membership(res.solution.primal, 0.0, 1.0).min_eig >= -1e-6);
            CHECK(!cuts->empty());
            for (const auto& coef : *cuts)
                for (int k = 0; k < 100; ++k) {
                    auto m = moment_curve(k / 99.0, d);
                    double v = 0.0, scale = 0.0;
                    for (int p = 0; p <= d; ++p) {
                        v += coef[p] * m[p];
                        scale += std::abs(coef[p] * m[p]);
                    }
                    CHECK(v >= -1e-9 * std::max(1.0, scale));
                }
        }
    }

    TEST_CASE("conv(G) membership") {
        ShiftVector s = ShiftVector::make(0.0, std::vector<double>{-0.5, 1.5, 2.5}, 0.0, 1.0);
        std::vector<double> nu = g_curve(s, 0.5);
        CHECK(conv_G_membership(nu, s));
        std::vector<double> nu2 = g_curve(s, 0.9), mid(nu.size());
        for (size_t k = 0; k < nu.size(); ++k) mid[k] = 0.5 * (nu[k] + nu2[k]);
        CHECK(conv_G_membership(mid, s));
        // push nu_1 up until the verdict flips
        double flip = -1.0;
        for (int k = 1; k <= 500; ++k) {
            std::vector<double> p = nu;
            p[1] += 0.001 * k;
            if (!conv_G_membership(p, s)) {
                flip = 0.001 * k;
                break;
            }
        }
        CHECK(flip > 0.0);
        CHECK(flip <= 0.5);
        std::vector<double> p = nu;
        p[1] += 0.5;
        CHECK_FALSE(conv_G_membership(p, s));

        ShiftVector odd = ShiftVector::make(0.0, std::vector<double>{1.5}, 0.0, 1.0);
        CHECK_THROWS_AS(conv_G_membership(g_curve(odd, 0.5), odd), SignAssumptionViolated);
    }

    TEST_CASE("G_pq curve samples are inside") {
        for (int p = 1; p <= 2; ++p)
            for (int q = 1; q <= 3; ++q)
                for (int k = 0; k < 50; ++k) {
                    double x = 0.5 + k / 49.0;
                    std::vector<double> nu;
                    for (int e = -p; e <= q; ++e) nu.push_back(std::pow(x, e));
                    CHECK(conv_Gpq_membership(nu, p, q, 0.5, 1.5));
                }
    }

    TEST_CASE("univariate validation") {
        UnivariateInstance u = gen_univariate(5, 1);
        CHECK_NOTHROW(u.validate());
        for (double r : u.r) CHECK((r < 0.0 || r > 1.0));
        u.r[0] = 0.5;
        CHECK_THROWS_AS(u.validate(), PoleInRange);
        UnivariateInstance v = gen_univariate(5, 1);
        v.y_hi[0] = 3.0;
        CHECK_THROWS_AS(build_uni_mh(v), UnsupportedBox);
    }

    TEST_CASE("Uni-MC with c = 0 is the box optimum") {
        UnivariateInstance u = gen_univariate(5, 2);
        std::fill(u.c.begin(), u.c.end(), 0.0);
        double best = std::max(-u.a * u.x_lo, -u.a * u.x_hi);
        for (int i = 0; i < 5; ++i) best += std::max(-u.b[i] * u.y_lo[i], -u.b[i] * u.y_hi[i]);
        CHECK(solve_uni_mc(u) == doctest::Approx(best));
    }

    TEST_CASE("Uni-MC z bounds for one pole") {
        UnivariateInstance u;
        u.a = 0.0;
        u.b = {0.0};
        u.c = {1.0};
        u.r = {-1.0};
        u.y_lo = {1.0};
        u.y_hi = {2.0};
        UnivariateModel um = build_uni_mc(u);
        CHECK(um.model.column(um.z[0]).lo == doctest::Approx(0.5));
        CHECK(um.model.column(um.z[0]).hi == doctest::Approx(2.0));
        CHECK(solve_uni_mc(u) == doctest::Approx(2.0));
        CHECK(univariate_exact(u).value == doctest::Approx(2.0));
    }

    TEST_CASE("exact points of Uni-MH raise no cuts") {
        UnivariateInstance u = gen_univariate(5, 3);
        UnivariateModel um = build_uni_mh(u);
        for (double x : {0.0, 0.2, 0.5, 0.77, 1.0}) {
            std::vector<double> pt(um.model.num_cols(), 0.0);
            pt[um.x] = x;
            for (int i = 0; i < 5; ++i) {
                double y = 1.0 + 0.2 * i;
                pt[um.y[i]] = y;
                pt[um.nu[i]] = 1.0 / (x - u.r[i]);
                pt[um.z[i]] = y / (x - u.r[i]);
            }
            CHECK(um.model.max_scaled_row_violation(pt) <= 1e-9);
            for (const Separator& sep : um.separators) CHECK(sep(pt).empty());
        }
    }

    TEST_CASE("Uni-MH sits between the exact value and Uni-MC") {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            UnivariateInstance u = gen_univariate(5, seed);
            CuttingResult mh = solve_uni_mh(u);
            REQUIRE(mh.converged);
            double mc = solve_uni_mc(u), ex = univariate_exact(u).value;
            CHECK(mh.solution.objective <= mc + 1e-6);
            CHECK(ex <= mh.solution.objective + 1e-6);

            // Hankel blocks at the final point are PSD up to 1e-6 in g coordinates; mapping to moments
            // through T amplifies the LP residual by up to max |T_ij|
            UnivariateModel um = build_uni_mh(u);
            ShiftVector s = ShiftVector::make(0.0, u.r, 0.0, 1.0);
            BasisMatrix B = basis_matrix_T(s);
            Eigen::VectorXd g(7);
            g(0) = 1.0;
            for (int i = 0; i < 5; ++i) g(i + 1) = mh.solution.primal[um.nu[i]];
            g(6) = mh.solution.primal[um.x];
            Eigen::VectorXd mu = B.T * g;
            MembershipResult r = moment_membership(std::span<const double>(mu.data(), mu.size()), 0.0, 1.0);
            CHECK(r.min_eig >= -1e-6 * std::max(1.0, B.T.cwiseAbs().maxCoeff()));
        }
    }
}
