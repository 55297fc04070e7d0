// Command-line front end: instance generation, relaxation solves, suites, LP export and membership checks.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fracx/bench.hpp"
#include "fracx/errors.hpp"
#include "fracx/oracle.hpp"
#include "fracx/relaxations.hpp"

using namespace fracx;
using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& s, char sep = ',') {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string part; std::getline(ss, part, sep);)
        if (!part.empty()) out.push_back(part);
    return out;
}

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> v;
    for (const std::string& p : split(s)) v.push_back(std::stod(p));
    return v;
}

// "1-30" or "1,4,9"
std::vector<std::uint64_t> parse_seeds(const std::string& s) {
    std::vector<std::uint64_t> out;
    for (const std::string& p : split(s)) {
        auto dash = p.find('-');
        if (dash == std::string::npos) {
            out.push_back(std::stoull(p));
        } else {
            std::uint64_t lo = std::stoull(p.substr(0, dash)), hi = std::stoull(p.substr(dash + 1));
            for (std::uint64_t k = lo; k <= hi; ++k) out.push_back(k);
        }
    }
    return out;
}

std::vector<std::string> relaxation_list(const std::string& s, int k) {
    std::vector<std::string> out;
    for (std::string r : split(s)) {
        for (char& c : r) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        if (r == "KTERM") r = "KTERM(" + std::to_string(k) + ")";
        out.push_back(r);
    }
    return out;
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path);
    return json::parse(in);
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write " + path);
    out << text;
}

LinearModel relaxation_model(const FractionalProgram& fp, const std::string& name) {
    if (name.rfind("KTERM(", 0) == 0) return build_kterm(fp, std::stoi(name.substr(6))).model;
    VariableBounds b = compute_bounds(fp);
    if (name == "LEF") return build_lef(fp, b).model;
    if (name == "1TERM") return build_1term(fp, b).model;
    if (name == "RQP") return build_rqp(fp, b).model;
    if (name == "CEF") return build_cef(fp, b).lifted.model;
    if (name == "1TERM-CONIC") return build_1term_conic(fp, b).lifted.model;
    throw InvalidArgument("unknown relaxation " + name);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fracx: relaxations for sums of ratios"};
    app.require_subcommand(1);

    std::string experiment = "uniform-gap", out, relaxations = "LEF,CEF,1TERM-CONIC", seeds = "1", ns = "30", ms = "3";
    std::string file, summary;
    int k = 1, max_rounds = 200;
    double tol = 1e-6;
    bool no_oracle = false;

    auto* gen = app.add_subcommand("gen", "write a generated instance as JSON");
    gen->add_option("--experiment", experiment, "uniform-gap | assortment | univariate");
    gen->add_option("--n", ns, "number of variables");
    gen->add_option("--m", ms, "number of ratios");
    gen->add_option("--seeds", seeds, "seed");
    gen->add_option("--out", out, "output path (stdout if absent)");

    auto* solve_cmd = app.add_subcommand("solve", "solve relaxations of an instance file");
    solve_cmd->add_option("file", file, "instance JSON")->required();
    solve_cmd->add_option("--relaxations", relaxations, "comma-separated list");
    solve_cmd->add_option("--k", k, "level for KTERM");
    solve_cmd->add_option("--tol", tol, "cut violation tolerance");
    solve_cmd->add_option("--max-rounds", max_rounds, "cutting rounds");

    auto* suite = app.add_subcommand("suite", "run a seeded experiment and write CSV");
    suite->add_option("--experiment", experiment, "uniform-gap | assortment | univariate");
    suite->add_option("--n", ns, "comma-separated n values");
    suite->add_option("--m", ms, "comma-separated m values, paired with --n");
    suite->add_option("--seeds", seeds, "e.g. 1-30 or 1,2,3");
    suite->add_option("--relaxations", relaxations, "comma-separated list");
    suite->add_option("--k", k, "level for KTERM");
    suite->add_option("--out", out, "CSV path (stdout if absent)");
    suite->add_option("--summary", summary, "summary CSV path (stderr if absent)");
    suite->add_option("--tol", tol, "cut violation tolerance");
    suite->add_option("--max-rounds", max_rounds, "cutting rounds");
    suite->add_flag("--no-oracle", no_oracle, "skip the exact oracle");

    auto* exp = app.add_subcommand("export-lp", "write one relaxation of an instance in LP format");
    exp->add_option("file", file, "instance JSON")->required();
    exp->add_option("--relaxations", relaxations, "a single relaxation name");
    exp->add_option("--k", k, "level for KTERM");
    exp->add_option("--out", out, "output path (stdout if absent)");

    std::string mu, poles, nu;
    double a = 0.0, b = 1.0;
    auto* mem = app.add_subcommand("membership", "moment hull or conv(G) membership of a point");
    mem->add_option("--mu", mu, "moment coordinates mu_0..mu_d");
    mem->add_option("--nu", nu, "conv(G) coordinates (1, nu_1..nu_n, x - r_0)");
    mem->add_option("--poles", poles, "poles r_1..r_n (with --nu)");
    mem->add_option("--a", a, "support lower end");
    mem->add_option("--b", b, "support upper end");

    CLI11_PARSE(app, argc, argv);

    try {
        auto nv = split(ns), mv = split(ms);
        if (*gen) {
            std::uint64_t seed = parse_seeds(seeds).at(0);
            json j;
            if (experiment == "univariate") j = to_json(gen_univariate(std::stoi(mv.at(0)), seed));
            else if (experiment == "assortment") j = to_json(gen_assortment(std::stoi(nv.at(0)), std::stoi(mv.at(0)), seed));
            else j = to_json(gen_uniform(std::stoi(nv.at(0)), std::stoi(mv.at(0)), seed));
            emit(out, j.dump(2) + "\n");
            return 0;
        }
        if (*solve_cmd) {
            json j = read_json(file);
            CuttingOptions opts;
            opts.tol = tol;
            opts.max_rounds = max_rounds;
            if (j.value("type", "") == "univariate") {
                UnivariateInstance u = univariate_from_json(j);
                std::printf("UNI-MC %.10g\n", solve_uni_mc(u));
                CuttingResult r = solve_uni_mh(u, opts);
                std::printf("UNI-MH %.10g (%d rounds%s)\n", r.solution.objective, r.rounds,
                            r.converged ? "" : ", not converged");
                std::printf("exact %.10g\n", univariate_exact(u).value);
                return 0;
            }
            FractionalProgram fp = program_from_json(j);
            VariableBounds bd = compute_bounds(fp);
            for (const std::string& r : relaxation_list(relaxations, k))
                std::printf("%s %.10g\n", r.c_str(), solve_relaxation(fp, bd, r, opts));
            if (fp.all_binary() && fp.n <= 32) {
                OracleResult o = best_known(fp);
                std::printf("oracle %.10g (%s)\n", o.value, o.method.c_str());
            }
            return 0;
        }
        if (*suite) {
            SuiteConfig cfg;
            cfg.experiment = experiment;
            if (experiment == "univariate") {
                for (const std::string& m : mv) cfg.sizes.push_back({0, std::stoi(m)});
                if (!suite->count("--relaxations")) relaxations = "UNI-MC,UNI-MH";
            } else {
                if (nv.size() != mv.size()) throw InvalidArgument("--n and --m need the same number of entries");
                for (size_t t = 0; t < nv.size(); ++t) cfg.sizes.push_back({std::stoi(nv[t]), std::stoi(mv[t])});
            }
            cfg.seeds = parse_seeds(seeds);
            cfg.relaxations = relaxation_list(relaxations, k);
            cfg.with_oracle = !no_oracle;
            cfg.tol = tol;
            cfg.max_rounds = max_rounds;
            SuiteReport rep = run_suite(cfg);
            std::ostringstream csv, sum;
            write_csv(csv, rep);
            write_summary(sum, rep);
            emit(out, csv.str());
            if (summary.empty()) std::cerr << sum.str();
            else emit(summary, sum.str());
            return rep.any_failed ? 1 : 0;
        }
        if (*exp) {
            auto names = relaxation_list(relaxations, k);
            if (names.size() != 1) throw InvalidArgument("export-lp takes exactly one relaxation");
            emit(out, export_lp(relaxation_model(program_from_json(read_json(file)), names[0])));
            return 0;
        }
        if (*mem) {
            if (!nu.empty()) {
                std::vector<double> p = parse_doubles(poles), v = parse_doubles(nu);
                ShiftVector s = ShiftVector::make(0.0, p, a, b);
                std::printf("%s\n", conv_G_membership(v, s) ? "inside" : "outside");
            } else {
                std::vector<double> v = parse_doubles(mu);
                MembershipResult r = moment_membership(v, a, b, true);
                std::printf("%s min_eig=%.6g\n", r.inside ? "inside" : "outside", r.min_eig);
            }
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
