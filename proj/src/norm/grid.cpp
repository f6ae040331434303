#include "grid.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace heightforge::detail {

namespace {

std::size_t active_count(const GridCell& c) {
    return static_cast<std::size_t>(std::count(c.active.begin(), c.active.end(), 1));
}

struct ByLower {
    bool operator()(const GridCell& a, const GridCell& b) const { return a.lower > b.lower; }
};

} // namespace

GridOutcome grid_minimize(GridObjective& f, std::vector<GridCell> cells, double abs_tol, double ratio,
                          std::size_t max_cells) {
    const std::size_t r = f.rank();
    const double lip = f.lipschitz();
    GridOutcome out;
    double pruned = std::numeric_limits<double>::infinity();

    auto done = [&](double lower) {
        if (ratio > 0)
            return lower > 0 && lower >= ratio * out.upper;
        return out.upper - lower <= abs_tol;
    };

    std::priority_queue<GridCell, std::vector<GridCell>, ByLower> heap;
    auto process = [&](std::vector<GridCell>& batch) {
        std::vector<double> points;
        for (const auto& c : batch)
            points.insert(points.end(), c.center.begin(), c.center.end());
        std::vector<double> value, slack;
        f.evaluate(points, batch.size(), value, slack);
        for (std::size_t k = 0; k < batch.size(); ++k) {
            GridCell& c = batch[k];
            f.observe(c.center.data());
            c.value = value[k];
            if (value[k] + slack[k] < out.upper) {
                out.upper = value[k] + slack[k];
                out.argmin = c.center;
            }
        }
        for (auto& c : batch) {
            const double lip_bound =
                c.value - slack[&c - batch.data()] - lip * static_cast<double>(active_count(c)) * c.half_width;
            c.lower = std::max(lip_bound, f.box_lower_bound(c.center.data(), c.half_width, c.active.data()));
            if (active_count(c) == 0 || (ratio <= 0 && c.lower >= out.upper - abs_tol))
                pruned = std::min(pruned, c.lower);
            else
                heap.push(std::move(c));
        }
        out.cells += batch.size();
    };
    process(cells);

    auto current_lower = [&] { return std::min(heap.empty() ? pruned : heap.top().lower, pruned); };
    while (!heap.empty() && !done(current_lower()) && out.cells < max_cells) {
        GridCell c = heap.top();
        heap.pop();
        // Bounds from cuts found after this cell was queued.
        const double fresh = f.box_lower_bound(c.center.data(), c.half_width, c.active.data());
        if (fresh > c.lower + 1e-15 * (1 + std::fabs(c.lower))) {
            c.lower = fresh;
            if (ratio <= 0 && c.lower >= out.upper - abs_tol)
                pruned = std::min(pruned, c.lower);
            else
                heap.push(std::move(c));
            continue;
        }
        const double h = c.half_width / 2;
        if (!f.can_split(h)) {
            pruned = std::min(pruned, c.lower);
            continue;
        }
        std::vector<std::size_t> dims;
        for (std::size_t i = 0; i < r; ++i)
            if (c.active[i])
                dims.push_back(i);
        std::vector<GridCell> children;
        for (std::size_t mask = 0; mask < (std::size_t{1} << dims.size()); ++mask) {
            GridCell child;
            child.center = c.center;
            child.active = c.active;
            child.half_width = h;
            for (std::size_t k = 0; k < dims.size(); ++k)
                child.center[dims[k]] += (mask >> k & 1) ? h : -h;
            children.push_back(std::move(child));
        }
        process(children);
    }
    out.lower = current_lower();
    out.converged = done(out.lower);
    return out;
}

} // namespace heightforge::detail
