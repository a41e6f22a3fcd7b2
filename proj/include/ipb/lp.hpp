#ifndef IPB_LP_HPP
#define IPB_LP_HPP

#include <cstddef>
#include <vector>

#include "ipb/errors.hpp"

namespace ipb {

/// Feasibility tolerance: constraints are considered satisfied within this.
inline constexpr double lp_feasibility_tol = 1e-9;
/// Entries below this are treated as zero during pivoting.
inline constexpr double lp_pivot_tol = 1e-11;
/// Vertex enumeration refuses dimensions above this.
inline constexpr std::size_t vertex_dimension_budget = 12;

struct ConstraintRow {
    std::vector<double> coeffs;
    double rhs = 0.0;
};

/// minimize objective . x
/// subject to  row . x >= rhs  for each ge constraint,
///             row . x  = rhs  for each eq constraint,
/// and, when simplex_constraint is set, sum(x) = 1 and x >= 0.
/// Without the flag all variables are free.
struct LinearProgram {
    std::vector<double> objective;
    std::vector<ConstraintRow> ge_constraints;
    std::vector<ConstraintRow> eq_constraints;
    bool simplex_constraint = false;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    double value = 0.0;
    std::vector<double> solution;
};

/// Dense two-phase simplex with Bland's anti-cycling rule.
LpResult solve(const LinearProgram& lp);

/// All extreme points of { x : ge/eq constraints, simplex if set },
/// deduplicated within L-inf 1e-9, by enumeration of active-constraint
/// bases. Empty result iff the polytope is empty.
/// Throws unbounded_region when the region has recession directions
/// (possible only without the simplex constraint) and
/// vertex_budget_exceeded when dim > vertex_dimension_budget or the
/// combination count is unreasonable.
std::vector<std::vector<double>> enumerate_vertices(std::size_t dim,
                                                    const std::vector<ConstraintRow>& ge_constraints,
                                                    const std::vector<ConstraintRow>& eq_constraints,
                                                    bool simplex_constraint);

} // namespace ipb

#endif
