#include "ipb/consistency.hpp"

#include <algorithm>
#include <cmath>

namespace ipb {

namespace {

constexpr double coherence_gap_tol = 1e-8;
constexpr double two_coherence_tol = 1e-9;

std::vector<ConstraintRow> domination_rows(const Assessment& a) {
    std::vector<ConstraintRow> rows;
    rows.reserve(a.size());
    for (const auto& e : a.entries()) {
        ConstraintRow r;
        r.coeffs.assign(e.gamble.values().begin(), e.gamble.values().end());
        r.rhs = e.lower;
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace

const char* consistency_level_name(ConsistencyLevel level) {
    switch (level) {
        case ConsistencyLevel::AvoidingSureLoss: return "asl";
        case ConsistencyLevel::TwoCoherence: return "2-coherence";
        case ConsistencyLevel::Coherence: return "coherence";
        case ConsistencyLevel::DFCoherence: return "dF-coherence";
    }
    return "?";
}

LinearProgram credal_program(const CredalPolytope& poly, std::vector<double> objective) {
    const std::size_t n = poly.assessment.partition()->size();
    if (objective.empty()) objective.assign(n, 0.0);
    LinearProgram lp;
    lp.objective = std::move(objective);
    lp.ge_constraints = domination_rows(poly.assessment);
    for (const auto& [gamble, value] : poly.mean_constraints) {
        if (!same_partition(gamble.partition(), poly.assessment.partition())) {
            raise(Errc::domain_mismatch, "mean-constraint gamble on a different partition");
        }
        ConstraintRow r;
        r.coeffs.assign(gamble.values().begin(), gamble.values().end());
        r.rhs = value;
        lp.eq_constraints.push_back(std::move(r));
    }
    lp.simplex_constraint = true;
    return lp;
}

bool credal_nonempty(const CredalPolytope& poly) {
    return solve(credal_program(poly, {})).status == LpStatus::Optimal;
}

std::vector<std::vector<double>> credal_vertices(const CredalPolytope& poly) {
    const LinearProgram lp = credal_program(poly, {});
    return enumerate_vertices(lp.objective.size(), lp.ge_constraints, lp.eq_constraints, true);
}

ConsistencyReport check_asl(const Assessment& a) {
    ConsistencyReport report;
    report.level = ConsistencyLevel::AvoidingSureLoss;
    const LpResult r = solve(credal_program(CredalPolytope{a, {}}, {}));
    report.pass = r.status == LpStatus::Optimal;
    if (report.pass) {
        report.witness_probability = r.solution;
    } else {
        report.note = "no dominating probability vector exists";
    }
    return report;
}

ConsistencyReport check_coherence(const Assessment& a) {
    ConsistencyReport report;
    report.level = ConsistencyLevel::Coherence;
    ConsistencyReport asl = check_asl(a);
    if (!asl.pass) {
        report.pass = false;
        report.note = "credal set empty (sure loss)";
        return report;
    }
    report.witness_probability = asl.witness_probability;
    report.pass = true;
    const CredalPolytope poly{a, {}};
    for (const auto& e : a.entries()) {
        const double env = credal_optimize(poly, e.gamble, Sense::Min);
        const double gap = e.lower - env;
        report.envelope_gaps.emplace_back(e.name, gap);
        if (gap < -coherence_gap_tol) {
            report.pass = false;
        }
    }
    if (!report.pass) report.note = "some assessed lower is not the credal envelope";
    return report;
}

ConsistencyReport check_2coherence(const Assessment& a) {
    ConsistencyReport report;
    report.level = ConsistencyLevel::TwoCoherence;
    report.pass = true;

    const auto& entries = a.entries();
    const std::size_t n = a.partition()->size();
    for (std::size_t i0 = 0; i0 < entries.size() && report.pass; ++i0) {
        for (std::size_t i1 = 0; i1 < entries.size() && report.pass; ++i1) {
            // Normalized gain program over (s1, s0+, s0-, t):
            //   minimize t
            //   s.t. s1 d1(w) - (s0+ - s0-) d0(w) <= t   for every atom w
            //        s1 + s0+ + s0- = 1,  s1, s0+, s0- >= 0.
            // A negative optimum exhibits multipliers with sup G2 < 0.
            const auto& e0 = entries[i0];
            const auto& e1 = entries[i1];
            LinearProgram lp;
            lp.objective = {0.0, 0.0, 0.0, 1.0};
            for (std::size_t w = 0; w < n; ++w) {
                const double d0 = e0.gamble[w] - e0.lower;
                const double d1 = e1.gamble[w] - e1.lower;
                ConstraintRow r;
                r.coeffs = {-d1, d0, -d0, 1.0};
                r.rhs = 0.0;
                lp.ge_constraints.push_back(std::move(r));
            }
            for (std::size_t j = 0; j < 3; ++j) {
                ConstraintRow sign;
                sign.coeffs.assign(4, 0.0);
                sign.coeffs[j] = 1.0;
                sign.rhs = 0.0;
                lp.ge_constraints.push_back(std::move(sign));
            }
            ConstraintRow norm;
            norm.coeffs = {1.0, 1.0, 1.0, 0.0};
            norm.rhs = 1.0;
            lp.eq_constraints.push_back(std::move(norm));

            const LpResult r = solve(lp);
            if (r.status != LpStatus::Optimal) {
                raise(Errc::malformed_program, "2-coherence pair program did not solve");
            }
            if (r.value < -two_coherence_tol) {
                report.pass = false;
                report.failing_pair = PairWitness{e0.name, e1.name,
                                                  r.solution[1] - r.solution[2],
                                                  r.solution[0], r.value};
            }
        }
    }
    if (!report.pass) report.note = "a two-term gain combination is everywhere negative";
    return report;
}

double credal_optimize(const CredalPolytope& poly, const Gamble& y, Sense sense) {
    if (!same_partition(y.partition(), poly.assessment.partition())) {
        raise(Errc::domain_mismatch, "objective gamble on a different partition");
    }
    std::vector<double> objective(y.values().begin(), y.values().end());
    if (sense == Sense::Max) {
        for (double& c : objective) c = -c;
    }
    const LpResult r = solve(credal_program(poly, std::move(objective)));
    if (r.status != LpStatus::Optimal) {
        raise(Errc::empty_credal_set, "the (constrained) credal set is empty");
    }
    return sense == Sense::Max ? -r.value : r.value;
}

double natural_extension(const Assessment& a, const Gamble& y) {
    return credal_optimize(CredalPolytope{a, {}}, y, Sense::Min);
}

double upper_extension(const Assessment& a, const Gamble& y) {
    return -natural_extension(a, -y);
}

SublinearUpperSum sublinear_upper_sum(const std::vector<double>& upper_values) {
    SublinearUpperSum out;
    for (double v : upper_values) out.value += v;
    out.consistency_required = ConsistencyLevel::Coherence;
    return out;
}

} // namespace ipb
