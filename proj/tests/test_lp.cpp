#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ipb/lp.hpp"
#include "test_support.hpp"

using namespace ipb;
using ipb::testing::code_of;
using ipb::testing::Rng;

namespace {

ConstraintRow row(std::vector<double> coeffs, double rhs) {
    return ConstraintRow{std::move(coeffs), rhs};
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool contains_vertex(const std::vector<std::vector<double>>& vs, const std::vector<double>& v,
                     double tol = 1e-9) {
    return std::any_of(vs.begin(), vs.end(), [&](const auto& w) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (std::abs(w[i] - v[i]) > tol) return false;
        }
        return true;
    });
}

} // namespace

TEST_SUITE_BEGIN("lp");

TEST_CASE("worked three-atom program") {
    // minimize p1 + p2 + 4 p3 over the simplex subject to -p1 + p2 + 2 p3 >= 0.75
    LinearProgram lp;
    lp.objective = {1, 1, 4};
    lp.ge_constraints = {row({-1, 1, 2}, 0.75)};
    lp.simplex_constraint = true;

    const LpResult r = solve(lp);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dot({-1, 1, 2}, r.solution) >= 0.75 - lp_feasibility_tol);
}

TEST_CASE("zero objective on the simplex") {
    LinearProgram lp;
    lp.objective = {0, 0, 0};
    lp.simplex_constraint = true;
    const LpResult r = solve(lp);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == 0.0);
}

TEST_CASE("infeasible simplex program") {
    LinearProgram lp;
    lp.objective = {0, 0, 0};
    lp.ge_constraints = {row({1, 1, 1}, 2.0)};
    lp.simplex_constraint = true;
    CHECK(solve(lp).status == LpStatus::Infeasible);
}

TEST_CASE("unbounded free program") {
    LinearProgram lp;
    lp.objective = {1.0};
    lp.ge_constraints = {row({-1.0}, 0.0)}; // -x >= 0, minimize x
    CHECK(solve(lp).status == LpStatus::Unbounded);
}

TEST_CASE("free-variable equality program") {
    // minimize x + y s.t. x + 2y = 4, x - y >= -5
    LinearProgram lp;
    lp.objective = {1, 1};
    lp.eq_constraints = {row({1, 2}, 4.0)};
    lp.ge_constraints = {row({1, -1}, -5.0)};
    const LpResult r = solve(lp);
    REQUIRE(r.status == LpStatus::Optimal);
    // optimum at the corner x - y = -5, x + 2y = 4: x = -2, y = 3
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.solution[0] == doctest::Approx(-2.0));
    CHECK(r.solution[1] == doctest::Approx(3.0));
}

TEST_CASE("malformed programs are rejected") {
    LinearProgram lp;
    lp.objective = {1, 2};
    lp.ge_constraints = {row({1}, 0.0)};
    CHECK(code_of([&] { solve(lp); }) == Errc::malformed_program);
    CHECK(code_of([] { solve(LinearProgram{}); }) == Errc::malformed_program);
}

TEST_CASE("simplex vertices") {
    const auto vs = enumerate_vertices(3, {}, {}, true);
    REQUIRE(vs.size() == 3);
    CHECK(contains_vertex(vs, {1, 0, 0}));
    CHECK(contains_vertex(vs, {0, 1, 0}));
    CHECK(contains_vertex(vs, {0, 0, 1}));
}

TEST_CASE("worked example credal vertices") {
    const auto vs = enumerate_vertices(3, {row({-1, 1, 2}, 0.75)}, {}, true);
    REQUIRE(vs.size() == 4);
    CHECK(contains_vertex(vs, {0, 1, 0}));
    CHECK(contains_vertex(vs, {0, 0, 1}));
    CHECK(contains_vertex(vs, {0.125, 0.875, 0}));
    CHECK(contains_vertex(vs, {5.0 / 12.0, 0, 7.0 / 12.0}));
}

TEST_CASE("infeasible system has no vertices") {
    CHECK(enumerate_vertices(3, {row({1, 1, 1}, 2.0)}, {}, true).empty());
}

TEST_CASE("unbounded region detected") {
    CHECK(code_of([] { enumerate_vertices(2, {row({1, 0}, 0.0), row({0, 1}, 0.0)}, {}, false); }) ==
          Errc::unbounded_region);
}

TEST_CASE("bounded free region enumerates corners") {
    // unit square: x >= 0, y >= 0, -x >= -1, -y >= -1
    const auto vs = enumerate_vertices(
        2, {row({1, 0}, 0), row({0, 1}, 0), row({-1, 0}, -1), row({0, -1}, -1)}, {}, false);
    REQUIRE(vs.size() == 4);
    CHECK(contains_vertex(vs, {0, 0}));
    CHECK(contains_vertex(vs, {1, 1}));
}

TEST_CASE("dimension budget is enforced") {
    CHECK(code_of([] { enumerate_vertices(13, {}, {}, true); }) == Errc::vertex_budget_exceeded);
}

TEST_CASE("zero rows and duplicates are handled") {
    LinearProgram lp;
    lp.objective = {1, 2, 3};
    lp.simplex_constraint = true;
    lp.ge_constraints = {row({0, 0, 0}, -1.0)}; // trivially satisfied
    CHECK(solve(lp).status == LpStatus::Optimal);

    lp.ge_constraints = {row({0, 0, 0}, 0.5)}; // unsatisfiable
    CHECK(solve(lp).status == LpStatus::Infeasible);

    lp.ge_constraints = {row({1, -1, 0}, 0.2), row({1, -1, 0}, 0.2), row({1, -1, 0}, 0.2)};
    const LpResult r = solve(lp);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.solution[0] - r.solution[1] >= 0.2 - lp_feasibility_tol);

    // duplicated equalities stay solvable and do not break vertex counting
    const auto vs = enumerate_vertices(
        3, {row({-1, 1, 2}, 0.75)},
        {row({1, 1, 1}, 1.0) /* redundant with the simplex row */}, true);
    CHECK(vs.size() == 4);
}

TEST_CASE("badly scaled but consistent programs still solve") {
    LinearProgram lp;
    lp.objective = {1e6, -1e-6, 2.0};
    lp.simplex_constraint = true;
    lp.ge_constraints = {row({1e5, -1e5, 0}, -2e4)};
    const LpResult r = solve(lp);
    REQUIRE(r.status == LpStatus::Optimal);
    double dot = 0;
    for (std::size_t i = 0; i < 3; ++i) dot += lp.ge_constraints[0].coeffs[i] * r.solution[i];
    CHECK(dot >= -2e4 - 1e-4);
    // constraint caps p2 at 0.2 when p1 = 0: optimum 2*0.8 - 1e-6*0.2
    CHECK(r.value == doctest::Approx(1.6 - 2e-7).epsilon(1e-10));
}

TEST_CASE("optimal solutions satisfy constraints and match the reported value") {
    Rng rng(99);
    for (int iter = 0; iter < 300; ++iter) {
        const std::size_t n = static_cast<std::size_t>(rng.uniform_int(2, 6));
        LinearProgram lp;
        lp.objective = rng.values(n, -3, 3);
        lp.simplex_constraint = true;
        const int rows = rng.uniform_int(0, 3);
        for (int k = 0; k < rows; ++k) {
            lp.ge_constraints.push_back(row(rng.values(n, -2, 2), rng.uniform(-1.5, 0.8)));
        }
        const LpResult r = solve(lp);
        if (r.status != LpStatus::Optimal) continue;
        double sum = 0.0;
        for (double p : r.solution) {
            CHECK(p >= -lp_feasibility_tol);
            sum += p;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
        for (const auto& c : lp.ge_constraints) {
            CHECK(dot(c.coeffs, r.solution) >= c.rhs - lp_feasibility_tol);
        }
        CHECK(std::abs(dot(lp.objective, r.solution) - r.value) <= 1e-9);
    }
}

TEST_CASE("lp optimum equals the best vertex value") {
    Rng rng(123);
    for (int iter = 0; iter < 150; ++iter) {
        const std::size_t n = static_cast<std::size_t>(rng.uniform_int(2, 6));
        std::vector<ConstraintRow> ge;
        const int rows = rng.uniform_int(0, 3);
        for (int k = 0; k < rows; ++k) {
            ge.push_back(row(rng.values(n, -2, 2), rng.uniform(-1.5, 0.5)));
        }
        LinearProgram lp;
        lp.objective = rng.values(n, -3, 3);
        lp.ge_constraints = ge;
        lp.simplex_constraint = true;

        const LpResult r = solve(lp);
        const auto vs = enumerate_vertices(n, ge, {}, true);
        if (r.status == LpStatus::Infeasible) {
            CHECK(vs.empty());
            continue;
        }
        REQUIRE_FALSE(vs.empty());
        double best = std::numeric_limits<double>::infinity();
        for (const auto& v : vs) best = std::min(best, dot(lp.objective, v));
        CHECK(r.value == doctest::Approx(best).epsilon(1e-8));
    }
}

TEST_CASE("opposite objectives bracket feasible values") {
    Rng rng(321);
    for (int iter = 0; iter < 50; ++iter) {
        const std::size_t n = 4;
        LinearProgram lp;
        lp.objective = rng.values(n, -2, 2);
        lp.ge_constraints = {row(rng.values(n, -1, 1), -0.5)};
        lp.simplex_constraint = true;
        const LpResult lo = solve(lp);
        for (double& c : lp.objective) c = -c;
        const LpResult hi = solve(lp);
        REQUIRE(lo.status == LpStatus::Optimal);
        REQUIRE(hi.status == LpStatus::Optimal);
        // any feasible point's value sits between min and -(-max)
        const auto p = rng.probability(n);
        if (dot(lp.ge_constraints[0].coeffs, p) >= -0.5) {
            for (double& c : lp.objective) c = -c; // restore
            const double value = dot(lp.objective, p);
            CHECK(value >= lo.value - 1e-9);
            CHECK(value <= -hi.value + 1e-9);
        }
    }
}

TEST_SUITE_END();
