#include "ipb/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ipb {

namespace {

void validate(const LinearProgram& lp) {
    const std::size_t n = lp.objective.size();
    if (n == 0) {
        raise(Errc::malformed_program, "objective is empty");
    }
    for (double c : lp.objective) {
        if (!std::isfinite(c)) raise(Errc::malformed_program, "objective has a non-finite entry");
    }
    auto check_rows = [n](const std::vector<ConstraintRow>& rows) {
        for (const auto& r : rows) {
            if (r.coeffs.size() != n) {
                raise(Errc::malformed_program, "constraint row width differs from objective");
            }
            for (double c : r.coeffs) {
                if (!std::isfinite(c)) raise(Errc::malformed_program, "non-finite coefficient");
            }
            if (!std::isfinite(r.rhs)) raise(Errc::malformed_program, "non-finite rhs");
        }
    };
    check_rows(lp.ge_constraints);
    check_rows(lp.eq_constraints);
}

/// Dense simplex tableau. Rows hold the constraint system in equality form
/// with the rhs as the last column; `cost` is the reduced-cost row with the
/// negated objective value in its rhs cell.
struct Tableau {
    std::vector<std::vector<double>> rows;
    std::vector<double> cost;
    std::vector<std::size_t> basis;
    std::size_t ncols = 0; // excluding rhs

    void pivot(std::size_t r, std::size_t c) {
        const double p = rows[r][c];
        for (double& v : rows[r]) v /= p;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r) continue;
            const double f = rows[i][c];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= ncols; ++j) rows[i][j] -= f * rows[r][j];
            rows[i][c] = 0.0;
        }
        const double f = cost[c];
        if (f != 0.0) {
            for (std::size_t j = 0; j <= ncols; ++j) cost[j] -= f * rows[r][j];
            cost[c] = 0.0;
        }
        basis[r] = c;
    }

    enum class Outcome { Optimal, Unbounded };

    /// Bland's rule: entering = smallest improving column index, leaving =
    /// ratio-test winner with the smallest basic variable index.
    Outcome iterate(std::size_t allowed_cols) {
        const std::size_t pivot_limit = 20000 + 200 * (ncols + rows.size());
        for (std::size_t pivots = 0;; ++pivots) {
            if (pivots > pivot_limit) {
                raise(Errc::malformed_program, "pivot limit exceeded: numerical breakdown");
            }
            std::size_t enter = allowed_cols;
            for (std::size_t j = 0; j < allowed_cols; ++j) {
                if (cost[j] < -lp_pivot_tol) {
                    enter = j;
                    break;
                }
            }
            if (enter == allowed_cols) return Outcome::Optimal;

            std::size_t leave = rows.size();
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const double a = rows[i][enter];
                if (a <= lp_pivot_tol) continue;
                const double ratio = rows[i][ncols] / a;
                if (leave == rows.size() || ratio < best_ratio - lp_pivot_tol) {
                    best_ratio = ratio;
                    leave = i;
                } else if (ratio <= best_ratio + lp_pivot_tol && basis[i] < basis[leave]) {
                    best_ratio = std::min(best_ratio, ratio);
                    leave = i;
                }
            }
            if (leave == rows.size()) return Outcome::Unbounded;
            pivot(leave, enter);
        }
    }
};

} // namespace

LpResult solve(const LinearProgram& lp) {
    validate(lp);
    const std::size_t n = lp.objective.size();

    // Structural variables: p >= 0 directly under the simplex constraint,
    // otherwise each free variable is split as u - v with u, v >= 0.
    const bool split = !lp.simplex_constraint;
    const std::size_t nstruct = split ? 2 * n : n;
    const std::size_t nge = lp.ge_constraints.size();
    const std::size_t neq = lp.eq_constraints.size() + (lp.simplex_constraint ? 1 : 0);
    const std::size_t m = nge + neq;

    Tableau t;
    t.ncols = nstruct + nge + m; // structurals, surplus slacks, artificials
    const std::size_t slack0 = nstruct;
    const std::size_t art0 = nstruct + nge;
    t.rows.assign(m, std::vector<double>(t.ncols + 1, 0.0));
    t.basis.assign(m, 0);

    auto fill_struct = [&](std::vector<double>& row, const std::vector<double>& coeffs) {
        for (std::size_t j = 0; j < n; ++j) {
            if (split) {
                row[2 * j] = coeffs[j];
                row[2 * j + 1] = -coeffs[j];
            } else {
                row[j] = coeffs[j];
            }
        }
    };

    std::size_t r = 0;
    for (std::size_t k = 0; k < nge; ++k, ++r) {
        fill_struct(t.rows[r], lp.ge_constraints[k].coeffs);
        t.rows[r][slack0 + k] = -1.0; // row . x - s = rhs
        t.rows[r][t.ncols] = lp.ge_constraints[k].rhs;
    }
    for (const auto& row : lp.eq_constraints) {
        fill_struct(t.rows[r], row.coeffs);
        t.rows[r][t.ncols] = row.rhs;
        ++r;
    }
    if (lp.simplex_constraint) {
        for (std::size_t j = 0; j < n; ++j) t.rows[r][j] = 1.0;
        t.rows[r][t.ncols] = 1.0;
        ++r;
    }

    for (std::size_t i = 0; i < m; ++i) {
        if (t.rows[i][t.ncols] < 0.0) {
            for (double& v : t.rows[i]) v = -v;
        }
        t.rows[i][art0 + i] = 1.0;
        t.basis[i] = art0 + i;
    }

    // Phase 1: minimize the artificial sum. Price out the artificial basis.
    t.cost.assign(t.ncols + 1, 0.0);
    for (std::size_t j = art0; j < t.ncols; ++j) t.cost[j] = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j <= t.ncols; ++j) t.cost[j] -= t.rows[i][j];
    }
    if (t.iterate(art0) == Tableau::Outcome::Unbounded) {
        // The artificial sum is bounded below by zero.
        raise(Errc::malformed_program, "phase-1 unbounded: numerical breakdown");
    }
    if (-t.cost[t.ncols] > lp_feasibility_tol) {
        return LpResult{LpStatus::Infeasible, 0.0, {}};
    }

    // Drive remaining artificials out of the basis; rows that cannot be
    // pivoted are redundant and dropped.
    for (std::size_t i = 0; i < t.rows.size();) {
        if (t.basis[i] < art0) {
            ++i;
            continue;
        }
        std::size_t col = art0;
        for (std::size_t j = 0; j < art0; ++j) {
            if (std::abs(t.rows[i][j]) > lp_pivot_tol) {
                col = j;
                break;
            }
        }
        if (col < art0) {
            t.pivot(i, col);
            ++i;
        } else {
            t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
            t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
        }
    }

    // Phase 2: original objective priced out over the current basis.
    std::vector<double> c(t.ncols + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        if (split) {
            c[2 * j] = lp.objective[j];
            c[2 * j + 1] = -lp.objective[j];
        } else {
            c[j] = lp.objective[j];
        }
    }
    t.cost = c;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const double cb = c[t.basis[i]];
        if (cb == 0.0) continue;
        for (std::size_t j = 0; j <= t.ncols; ++j) t.cost[j] -= cb * t.rows[i][j];
    }
    if (t.iterate(art0) == Tableau::Outcome::Unbounded) {
        return LpResult{LpStatus::Unbounded, 0.0, {}};
    }

    std::vector<double> full(t.ncols, 0.0);
    for (std::size_t i = 0; i < t.rows.size(); ++i) full[t.basis[i]] = t.rows[i][t.ncols];
    std::vector<double> x(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        x[j] = (split ? full[2 * j] - full[2 * j + 1] : full[j]) + 0.0; // +0 clears -0
    }
    double value = 0.0;
    for (std::size_t j = 0; j < n; ++j) value += lp.objective[j] * x[j];
    return LpResult{LpStatus::Optimal, value, std::move(x)};
}

namespace {

/// Gaussian elimination with partial pivoting on the augmented system
/// [M | b]; returns the rank of M. When `solution` is non-null and the rank
/// equals `dim` and the system is consistent, the unique solution is stored;
/// inconsistency is signalled by returning dim + 1.
std::size_t eliminate(std::vector<std::vector<double>> m, std::size_t dim, double tol,
                      std::vector<double>* solution) {
    const std::size_t nrows = m.size();
    std::vector<std::size_t> pivot_col_of_row;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < dim && rank < nrows; ++col) {
        std::size_t best = rank;
        for (std::size_t i = rank + 1; i < nrows; ++i) {
            if (std::abs(m[i][col]) > std::abs(m[best][col])) best = i;
        }
        if (std::abs(m[best][col]) <= tol) continue;
        std::swap(m[rank], m[best]);
        for (std::size_t i = 0; i < nrows; ++i) {
            if (i == rank) continue;
            const double f = m[i][col] / m[rank][col];
            if (f == 0.0) continue;
            for (std::size_t j = col; j <= dim; ++j) m[i][j] -= f * m[rank][j];
            m[i][col] = 0.0;
        }
        pivot_col_of_row.push_back(col);
        ++rank;
    }
    // Zero rows with non-zero rhs mean the stacked system is inconsistent.
    for (std::size_t i = rank; i < nrows; ++i) {
        if (std::abs(m[i][dim]) > 1e-7) return dim + 1;
    }
    if (solution != nullptr && rank == dim) {
        solution->assign(dim, 0.0);
        for (std::size_t i = 0; i < rank; ++i) {
            (*solution)[pivot_col_of_row[i]] = m[i][dim] / m[i][pivot_col_of_row[i]];
        }
    }
    return rank;
}

bool satisfies(const std::vector<double>& x, const std::vector<ConstraintRow>& ge,
               const std::vector<ConstraintRow>& eq, double tol) {
    auto dot = [&](const std::vector<double>& c) {
        double s = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) s += c[j] * x[j];
        return s;
    };
    for (const auto& r : ge) {
        if (dot(r.coeffs) < r.rhs - tol) return false;
    }
    for (const auto& r : eq) {
        if (std::abs(dot(r.coeffs) - r.rhs) > tol) return false;
    }
    return true;
}

} // namespace

std::vector<std::vector<double>> enumerate_vertices(std::size_t dim,
                                                    const std::vector<ConstraintRow>& ge_constraints,
                                                    const std::vector<ConstraintRow>& eq_constraints,
                                                    bool simplex_constraint) {
    if (dim == 0) {
        raise(Errc::malformed_program, "zero-dimensional region");
    }
    if (dim > vertex_dimension_budget) {
        raise(Errc::vertex_budget_exceeded,
              "dimension " + std::to_string(dim) + " exceeds the enumeration budget");
    }
    std::vector<ConstraintRow> ge = ge_constraints;
    std::vector<ConstraintRow> eq = eq_constraints;
    for (const auto& r : ge) {
        if (r.coeffs.size() != dim) raise(Errc::malformed_program, "row width mismatch");
    }
    for (const auto& r : eq) {
        if (r.coeffs.size() != dim) raise(Errc::malformed_program, "row width mismatch");
    }
    if (simplex_constraint) {
        for (std::size_t j = 0; j < dim; ++j) {
            ConstraintRow coord;
            coord.coeffs.assign(dim, 0.0);
            coord.coeffs[j] = 1.0;
            coord.rhs = 0.0;
            ge.push_back(std::move(coord));
        }
        ConstraintRow sum;
        sum.coeffs.assign(dim, 1.0);
        sum.rhs = 1.0;
        eq.push_back(std::move(sum));
    }

    LinearProgram probe;
    probe.objective.assign(dim, 0.0);
    probe.ge_constraints = ge;
    probe.eq_constraints = eq;
    if (solve(probe).status == LpStatus::Infeasible) {
        return {};
    }
    if (!simplex_constraint) {
        for (std::size_t j = 0; j < dim; ++j) {
            for (double sign : {1.0, -1.0}) {
                probe.objective.assign(dim, 0.0);
                probe.objective[j] = sign;
                if (solve(probe).status == LpStatus::Unbounded) {
                    raise(Errc::unbounded_region, "region has a recession direction");
                }
            }
        }
    }

    const double rank_tol = 1e-10;
    std::vector<std::vector<double>> eqm;
    for (const auto& r : eq) {
        eqm.push_back(r.coeffs);
        eqm.back().push_back(r.rhs);
    }
    const std::size_t eq_rank = eqm.empty() ? 0 : eliminate(eqm, dim, rank_tol, nullptr);
    if (eq_rank == dim + 1) {
        return {}; // equality system inconsistent
    }
    const std::size_t need = dim - eq_rank;

    std::vector<std::vector<double>> vertices;
    auto try_candidate = [&](const std::vector<std::vector<double>>& system) {
        std::vector<double> x;
        const std::size_t rank = eliminate(system, dim, rank_tol, &x);
        if (rank != dim) return; // degenerate or inconsistent basis: skip
        for (double& v : x) v += 0.0; // normalize negative zeros
        if (!satisfies(x, ge, eq, lp_feasibility_tol)) return;
        for (const auto& v : vertices) {
            double maxdiff = 0.0;
            for (std::size_t j = 0; j < dim; ++j) {
                maxdiff = std::max(maxdiff, std::abs(v[j] - x[j]));
            }
            if (maxdiff <= 1e-9) return;
        }
        vertices.push_back(std::move(x));
    };

    if (need == 0) {
        // Equalities already pin the point; check it against everything.
        std::vector<std::vector<double>> sys;
        for (const auto& r : eq) {
            sys.push_back(r.coeffs);
            sys.back().push_back(r.rhs);
        }
        try_candidate(sys);
        return vertices;
    }

    if (ge.size() < need) {
        return vertices; // not enough facets to pin a vertex
    }
    double combos = 1.0;
    for (std::size_t i = 0; i < need; ++i) {
        combos *= static_cast<double>(ge.size() - i) / static_cast<double>(i + 1);
    }
    if (combos > 5e6) {
        raise(Errc::vertex_budget_exceeded, "too many candidate bases");
    }

    std::vector<std::size_t> pick(need);
    for (std::size_t i = 0; i < need; ++i) pick[i] = i;
    for (;;) {
        std::vector<std::vector<double>> sys;
        sys.reserve(eq.size() + need);
        for (const auto& r : eq) {
            sys.push_back(r.coeffs);
            sys.back().push_back(r.rhs);
        }
        for (std::size_t i : pick) {
            sys.push_back(ge[i].coeffs);
            sys.back().push_back(ge[i].rhs);
        }
        try_candidate(sys);

        // next combination
        std::size_t k = need;
        while (k > 0) {
            --k;
            if (pick[k] + (need - k) < ge.size()) {
                ++pick[k];
                for (std::size_t j = k + 1; j < need; ++j) pick[j] = pick[j - 1] + 1;
                break;
            }
            if (k == 0) return vertices;
        }
    }
}

} // namespace ipb
