#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracx/moment.hpp"
#include "fracx/program.hpp"

namespace fracx {

/// SplitMix64 (Steele, Lea, Flood 2014), version 1 of the fracx stream.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    /// Uniform on [lo, hi) from the top 53 bits.
    double uniform(double lo, double hi);

private:
    std::uint64_t state_;
};

/// Draw order per ratio: a0, a_1..a_n, b0, b_1..b_n.
FractionalProgram gen_uniform(int n, int m, std::uint64_t seed);
/// Assortment instance with the cardinality row sum x <= floor(0.2 n).
FractionalProgram gen_assortment(int n, int m, std::uint64_t seed);
/// (PD) instance on x in [0, 1], y in [1, 2]^m; m must be odd.
UnivariateInstance gen_univariate(int m, std::uint64_t seed);
/// Random series-parallel graph on `nodes` nodes built by series and parallel extensions.
SupportGraph gen_series_parallel(int nodes, std::uint64_t seed);
/// A, c in U[0,1], c0 in U[0.5,1.5], B, d, d0 in U[-1,1].
BilinearFractional gen_bilinear(const SupportGraph& g, std::uint64_t seed, Sense sense = Sense::minimize);

nlohmann::json to_json(const FractionalProgram& fp);
FractionalProgram program_from_json(const nlohmann::json& j);
nlohmann::json to_json(const UnivariateInstance& u);
UnivariateInstance univariate_from_json(const nlohmann::json& j);

/// 100 (v_lef - v_model) / (v_lef - v_hat). Throws DegenerateGap.
double closed_lef_gap(double v_lef, double v_model, double v_hat);
/// 100 (v_mh - v_exact) / (v_mc - v_exact). Throws DegenerateGap.
double relative_remaining_gap(double v_mh, double v_mc, double v_exact);

struct Summary {
    double avg = 0.0, min = 0.0, max = 0.0, std = 0.0;
    int count = 0;
};
/// Population standard deviation.
Summary summarize(const std::vector<double>& v);

struct SuiteConfig {
    std::string experiment = "uniform-gap";  // uniform-gap | assortment | univariate
    std::vector<std::pair<int, int>> sizes;  // (n, m); n ignored for univariate
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> relaxations;  // LEF CEF RQP 1TERM 1TERM-CONIC KTERM(k) | UNI-MC UNI-MH
    bool with_oracle = true;
    double tol = 1e-6;
    int max_rounds = 200;
};

struct SuiteRow {
    std::string experiment;
    int n = 0, m = 0;
    std::uint64_t seed = 0;
    std::string relaxation;
    double value = 0.0;
    std::optional<double> oracle_value;
    std::string oracle_method;
    std::optional<double> closed_lef_gap_pct;
    std::optional<double> relative_remaining_gap_pct;
    std::string status = "ok";
    long long time_us = 0;
};

struct SuiteReport {
    std::vector<SuiteRow> rows;
    bool any_failed = false;
};

/// Evaluates one named relaxation of a binary program (max sense value).
double solve_relaxation(const FractionalProgram& fp, const VariableBounds& b, const std::string& name,
                        const CuttingOptions& opts = {});

SuiteReport run_suite(const SuiteConfig& cfg);
void write_csv(std::ostream& os, const SuiteReport& r);
/// Per (experiment, n, m, relaxation): avg/min/max/std of the gap column that applies.
void write_summary(std::ostream& os, const SuiteReport& r);

}  // namespace fracx
