#include <cmath>

#include "fracx/bench.hpp"
#include "fracx/errors.hpp"

namespace fracx {

double closed_lef_gap(double v_lef, double v_model, double v_hat) {
    if (std::abs(v_lef - v_hat) < 1e-9) throw DegenerateGap("LEF value equals the best integer value");
    return 100.0 * (v_lef - v_model) / (v_lef - v_hat);
}

double relative_remaining_gap(double v_mh, double v_mc, double v_exact) {
    if (std::abs(v_mc - v_exact) < 1e-9) throw DegenerateGap("Uni-MC value equals the exact optimum");
    return 100.0 * (v_mh - v_exact) / (v_mc - v_exact);
}

Summary summarize(const std::vector<double>& v) {
    Summary s;
    s.count = static_cast<int>(v.size());
    if (v.empty()) return s;
    s.min = s.max = v[0];
    double sum = 0.0;
    for (double x : v) {
        sum += x;
        s.min = std::min(s.min, x);
        s.max = std::max(s.max, x);
    }
    s.avg = sum / s.count;
    double ss = 0.0;
    for (double x : v) ss += (x - s.avg) * (x - s.avg);
    s.std = std::sqrt(ss / s.count);
    return s;
}

}  // namespace fracx
