#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <ostream>
#include <thread>

#include "fracx/bench.hpp"
#include "fracx/errors.hpp"
#include "fracx/oracle.hpp"
#include "fracx/relaxations.hpp"

namespace fracx {

namespace {

using Clock = std::chrono::steady_clock;

long long micros_since(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0).count();
}

double cut_value(const LiftedModel& lm, std::span<const Separator> seps, const CuttingOptions& opts) {
    CuttingResult r = cutting_loop(lm.model, seps, opts);
    require_optimal(r.solution, "cutting loop");
    return r.solution.objective;
}

int kterm_level(const std::string& name) {
    if (name.rfind("KTERM(", 0) != 0 || name.back() != ')') return -1;
    return std::stoi(name.substr(6, name.size() - 7));
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

int worker_count() {
    if (const char* env = std::getenv("FRACX_THREADS")) {
        int t = std::atoi(env);
        if (t > 0) return t;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<SuiteRow> binary_instance(const SuiteConfig& cfg, int n, int m, std::uint64_t seed, int oracle_threads) {
    FractionalProgram fp = cfg.experiment == "assortment" ? gen_assortment(n, m, seed) : gen_uniform(n, m, seed);
    CuttingOptions opts;
    opts.tol = cfg.tol;
    opts.max_rounds = cfg.max_rounds;

    std::optional<OracleResult> oracle;
    std::string oracle_error;
    if (cfg.with_oracle) {
        try {
            oracle = fp.n <= 32 && fp.n > 22 ? split_enumeration(fp, oracle_threads) : best_known(fp);
        } catch (const Error& e) {
            oracle_error = e.what();
        }
    }

    std::vector<SuiteRow> rows;
    VariableBounds b;
    std::optional<double> v_lef;
    std::string setup_error;
    try {
        b = compute_bounds(fp);
        v_lef = solve_relaxation(fp, b, "LEF", opts);
    } catch (const Error& e) {
        setup_error = e.what();
    }
    for (const std::string& name : cfg.relaxations) {
        SuiteRow row;
        row.experiment = cfg.experiment;
        row.n = n;
        row.m = m;
        row.seed = seed;
        row.relaxation = name;
        if (oracle) {
            row.oracle_value = oracle->value;
            row.oracle_method = oracle->method;
        }
        auto t0 = Clock::now();
        try {
            if (!setup_error.empty()) throw InvalidArgument(setup_error);
            row.value = name == "LEF" ? *v_lef : solve_relaxation(fp, b, name, opts);
            // every relaxation lies between LEF and the optimum, so an exact LEF leaves nothing to close
            if (oracle)
                row.closed_lef_gap_pct = std::abs(*v_lef - oracle->value) < 1e-9
                                             ? 0.0
                                             : closed_lef_gap(*v_lef, row.value, oracle->value);
            if (!oracle_error.empty()) row.status = "oracle: " + oracle_error;
        } catch (const Error& e) {
            row.value = std::nan("");
            row.status = e.what();
        }
        row.time_us = micros_since(t0);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<SuiteRow> univariate_instance(const SuiteConfig& cfg, int m, std::uint64_t seed) {
    UnivariateInstance u = gen_univariate(m, seed);
    CuttingOptions opts;
    opts.tol = cfg.tol;
    opts.max_rounds = cfg.max_rounds;
    std::optional<OracleResult> oracle;
    std::optional<double> v_mc;
    std::string setup_error;
    try {
        if (cfg.with_oracle) oracle = univariate_exact(u);
        v_mc = solve_uni_mc(u);
    } catch (const Error& e) {
        setup_error = e.what();
    }
    std::vector<SuiteRow> rows;
    for (const std::string& name : cfg.relaxations) {
        SuiteRow row;
        row.experiment = cfg.experiment;
        row.m = m;
        row.seed = seed;
        row.relaxation = name;
        if (oracle) {
            row.oracle_value = oracle->value;
            row.oracle_method = oracle->method;
        }
        auto t0 = Clock::now();
        try {
            if (!setup_error.empty()) throw InvalidArgument(setup_error);
            if (name == "UNI-MC") {
                row.value = *v_mc;
            } else if (name == "UNI-MH") {
                CuttingResult r = solve_uni_mh(u, opts);
                row.value = r.solution.objective;
                if (!r.converged) row.status = "not converged";
            } else {
                throw InvalidArgument("relaxation " + name + " does not apply to univariate instances");
            }
            // Uni-MH is squeezed between the exact value and Uni-MC, so an exact Uni-MC leaves no gap
            if (oracle)
                row.relative_remaining_gap_pct = std::abs(*v_mc - oracle->value) < 1e-9
                                                     ? 0.0
                                                     : relative_remaining_gap(row.value, *v_mc, oracle->value);
        } catch (const Error& e) {
            row.value = std::nan("");
            row.status = e.what();
        }
        row.time_us = micros_since(t0);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

double solve_relaxation(const FractionalProgram& fp, const VariableBounds& b, const std::string& name,
                        const CuttingOptions& opts) {
    auto plain = [&](const LiftedModel& lm) {
        LpSolution s = solve(lm.model, opts.lp);
        require_optimal(s, name);
        return s.objective;
    };
    if (name == "LEF") return plain(build_lef(fp, b));
    if (name == "1TERM") return plain(build_1term(fp, b));
    if (name == "RQP") return plain(build_rqp(fp, b));
    if (name == "CEF") {
        RelaxationWithCuts r = build_cef(fp, b);
        return cut_value(r.lifted, r.separators, opts);
    }
    if (name == "1TERM-CONIC") {
        RelaxationWithCuts r = build_1term_conic(fp, b);
        return cut_value(r.lifted, r.separators, opts);
    }
    if (int k = kterm_level(name); k > 0) return plain(build_kterm(fp, k));
    throw InvalidArgument("unknown relaxation " + name);
}

SuiteReport run_suite(const SuiteConfig& cfg) {
    if (cfg.experiment != "uniform-gap" && cfg.experiment != "assortment" && cfg.experiment != "univariate")
        throw InvalidArgument("unknown experiment " + cfg.experiment);
    struct Job {
        int n, m;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (auto [n, m] : cfg.sizes)
        for (std::uint64_t s : cfg.seeds) jobs.push_back({n, m, s});

    const int workers = std::max(1, std::min<int>(worker_count(), static_cast<int>(jobs.size())));
    std::vector<std::vector<SuiteRow>> out(jobs.size());
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (std::size_t k; (k = next++) < jobs.size();) {
            const Job& j = jobs[k];
            out[k] = cfg.experiment == "univariate" ? univariate_instance(cfg, j.m, j.seed)
                                                    : binary_instance(cfg, j.n, j.m, j.seed, workers == 1 ? 0 : 1);
        }
    };
    if (workers == 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(run);
        for (auto& t : pool) t.join();
    }

    SuiteReport rep;
    for (auto& rows : out)
        for (SuiteRow& r : rows) {
            if (r.status != "ok" && r.status.rfind("oracle:", 0) != 0) rep.any_failed = true;
            rep.rows.push_back(std::move(r));
        }
    return rep;
}

void write_csv(std::ostream& os, const SuiteReport& r) {
    os << "experiment,n,m,seed,relaxation,value,oracle_value,oracle_method,closed_lef_gap_pct,"
          "relative_remaining_gap_pct,status,time_us\r\n";
    for (const SuiteRow& x : r.rows)
        os << csv_field(x.experiment) << ',' << x.n << ',' << x.m << ',' << x.seed << ',' << csv_field(x.relaxation)
           << ',' << fmt(x.value) << ',' << fmt(x.oracle_value) << ',' << csv_field(x.oracle_method) << ','
           << fmt(x.closed_lef_gap_pct) << ',' << fmt(x.relative_remaining_gap_pct) << ',' << csv_field(x.status)
           << ',' << x.time_us << "\r\n";
}

void write_summary(std::ostream& os, const SuiteReport& r) {
    using Key = std::tuple<std::string, int, int, std::string>;
    std::map<Key, std::vector<double>> groups;
    std::vector<Key> order;
    for (const SuiteRow& x : r.rows) {
        Key k{x.experiment, x.n, x.m, x.relaxation};
        if (!groups.count(k)) order.push_back(k);
        auto& g = groups[k];
        if (x.closed_lef_gap_pct) g.push_back(*x.closed_lef_gap_pct);
        else if (x.relative_remaining_gap_pct) g.push_back(*x.relative_remaining_gap_pct);
    }
    os << "experiment,n,m,relaxation,metric,count,avg,min,max,std\r\n";
    for (const Key& k : order) {
        const auto& [e, n, m, rel] = k;
        Summary s = summarize(groups[k]);
        const char* metric = e == "univariate" ? "relative_remaining_gap_pct" : "closed_lef_gap_pct";
        os << csv_field(e) << ',' << n << ',' << m << ',' << csv_field(rel) << ',' << metric << ',' << s.count << ','
           << fmt(s.avg) << ',' << fmt(s.min) << ',' << fmt(s.max) << ',' << fmt(s.std) << "\r\n";
    }
}

}  // namespace fracx
