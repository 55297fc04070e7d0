#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fracx/moment.hpp"
#include "fracx/program.hpp"

namespace fracx {

struct OracleResult {
    double value = 0.0;
    std::vector<double> argmax;
    std::uint64_t enumerated = 0;
    /// "enumeration", "split-enumeration", "local-search", "vertex-enumeration" or "univariate-grid".
    std::string method;
};

/// Exact optimum over feasible binary points in lexicographic order (n <= 22).
/// Throws TooLarge or Infeasible.
OracleResult brute_force_binary(const FractionalProgram& fp);

/// Exact optimum for n <= 32 by pairing precomputed half tables; same tie-break as brute_force_binary.
/// Uses up to `threads` workers (0 reads FRACX_THREADS, else the hardware count).
OracleResult split_enumeration(const FractionalProgram& fp, int threads = 0);

/// Best point of a deterministic multi-start 1-flip/2-flip local search. Only a bound.
OracleResult local_search(const FractionalProgram& fp, int starts = 64, std::uint64_t seed = 1);

/// brute_force_binary, split_enumeration or local_search by size.
OracleResult best_known(const FractionalProgram& fp);

/// Exact optimum of p(x)/q(x) over {0,1}^V in the instance's sense (V <= 24).
OracleResult brute_force_bilinear(const BilinearFractional& q);

/// All vertices of {Cx <= d, lo <= x <= hi} (n <= 6, at most 12 rows in C), deduplicated at 1e-8.
std::vector<std::vector<double>> enumerate_vertices(const std::vector<std::vector<double>>& C,
                                                    std::span<const double> d, std::span<const double> lo,
                                                    std::span<const double> hi);

/// Maximum over x of -a x + sum_i max_{y_i} (c_i / (x - r_i) - b_i) y_i by grid scan plus golden section.
OracleResult univariate_exact(const UnivariateInstance& inst, int grid = 2000);

}  // namespace fracx
