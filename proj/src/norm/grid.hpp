#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace heightforge::detail {

/// Convex objective over R^rank for the branch-and-bound search. Values come
/// with rigorous error bounds.
class GridObjective {
public:
    virtual ~GridObjective() = default;
    virtual std::size_t rank() const = 0;
    /// Lipschitz constant with respect to the L1 norm.
    virtual double lipschitz() const = 0;
    virtual void evaluate(const std::vector<double>& points, std::size_t count, std::vector<double>& value,
                          std::vector<double>& slack) = 0;
    /// Any further valid lower bound over the box; -inf when there is none.
    virtual double box_lower_bound(const double* /*center*/, double /*half_width*/, const char* /*active*/) {
        return -std::numeric_limits<double>::infinity();
    }
    virtual void observe(const double* /*point*/) {}
    virtual bool can_split(double /*half_width*/) const { return true; }
};

struct GridCell {
    std::vector<double> center;
    std::vector<char> active;
    double half_width = 0;
    double value = 0;
    double lower = 0;
};

struct GridOutcome {
    double lower = 0;
    double upper = std::numeric_limits<double>::infinity();
    std::vector<double> argmin;
    std::size_t cells = 0;
    bool converged = false;
};

/// Minimizes over the union of the initial boxes. Stops once
/// upper - lower <= abs_tol, or, when ratio > 0, once lower >= ratio * upper > 0.
GridOutcome grid_minimize(GridObjective& f, std::vector<GridCell> cells, double abs_tol, double ratio,
                          std::size_t max_cells);

} // namespace heightforge::detail
