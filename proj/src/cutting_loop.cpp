#include <algorithm>
#include <map>

#include "fracx/errors.hpp"
#include "fracx/lp.hpp"

namespace fracx {

CuttingResult cutting_loop(const LinearModel& model, std::span<const Separator> separators,
                           const CuttingOptions& opts) {
    LpSession session(model, opts.lp);
    const int base_rows = model.num_rows();
    std::vector<int> pool_group;  // group of each appended cut row, in row order
    CuttingResult res;
    for (;;) {
        res.solution = session.solve();
        if (!res.solution.optimal()) return res;
        res.trace.push_back(res.solution.objective);
        const std::vector<double>& x = res.solution.primal;

        std::vector<Cut> fresh;
        for (const Separator& sep : separators) {
            for (Cut& c : sep(x))
                if (row_violation(c.row, x) >= opts.tol) fresh.push_back(std::move(c));
        }
        if (fresh.empty()) {
            res.converged = true;
            return res;
        }
        if (res.rounds >= opts.max_rounds) return res;
        ++res.rounds;

        std::map<int, int> count;
        for (int g : pool_group) ++count[g];
        for (const Cut& c : fresh) ++count[c.group];
        std::vector<int> evict;
        for (auto [g, cnt] : count) {
            int excess = cnt - opts.max_cuts_per_group;
            if (excess <= 0) continue;
            // drop the slackest existing cuts of this group; binding ones stay
            std::vector<std::pair<double, int>> slack;
            for (size_t k = 0; k < pool_group.size(); ++k) {
                if (pool_group[k] != g) continue;
                int r = base_rows + static_cast<int>(k);
                const Row& row = session.model().row(r);
                double a = row_activity(row, x);
                double s = row.rel == Relation::less_equal ? row.rhs - a : a - row.rhs;
                if (s > opts.tol) slack.emplace_back(-s, r);
            }
            std::sort(slack.begin(), slack.end());
            for (int k = 0; k < excess && k < static_cast<int>(slack.size()); ++k) evict.push_back(slack[k].second);
        }
        if (!evict.empty()) {
            std::sort(evict.begin(), evict.end());
            session.remove_rows(evict);
            std::vector<int> kept;
            size_t p = 0;
            for (size_t k = 0; k < pool_group.size(); ++k) {
                if (p < evict.size() && evict[p] == base_rows + static_cast<int>(k)) {
                    ++p;
                    continue;
                }
                kept.push_back(pool_group[k]);
            }
            pool_group = std::move(kept);
        }
        std::vector<Row> rows;
        rows.reserve(fresh.size());
        for (Cut& c : fresh) {
            pool_group.push_back(c.group);
            rows.push_back(std::move(c.row));
        }
        session.add_rows(rows);
        res.cuts_added += static_cast<int>(rows.size());
    }
}

}  // namespace fracx
