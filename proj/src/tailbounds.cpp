#include "ipb/tailbounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ipb {

namespace {

// A bound of one or more carries no information.
double clamp01(double raw, bool& vacuous) {
    vacuous = raw >= 1.0;
    return std::clamp(raw, 0.0, 1.0);
}

std::string describe(const char* side, const char* cmp, double threshold) {
    std::ostringstream s;
    s << side << "(X " << cmp << " " << threshold << ")";
    return s.str();
}

double expectation(const std::vector<double>& p, const Gamble& g) {
    double e = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) e += p[i] * g[i];
    return e;
}

double variance_under(const std::vector<double>& p, const Gamble& g) {
    const double e = expectation(p, g);
    return expectation(p, g * g) - e * e;
}

} // namespace

TailBoundReport markov_lower(double lprX, double a, bool nonneg) {
    if (a <= 0.0) {
        raise(Errc::non_positive_threshold, "threshold a must be positive");
    }
    if (!nonneg) {
        raise(Errc::negativity_flag_missing, "X >= 0 must be asserted");
    }
    if (lprX < 0.0) {
        raise(Errc::negative_moment, "lpr(X) must be nonnegative for a nonnegative gamble");
    }
    TailBoundReport r;
    r.event_description = describe("lpr", ">=", a);
    r.direction = BoundDirection::LessEq;
    r.prob_side = PrevisionSide::Lower;
    r.inequality_id = "markov-lower";
    r.consistency_required = ConsistencyLevel::TwoCoherence;
    r.assumptions_checked = {"X >= 0 asserted", "a > 0"};
    r.threshold = a;
    r.bound = clamp01(lprX / a, r.vacuous);
    return r;
}

TailBoundReport markov_upper(double uprX, double a, bool nonneg) {
    if (a <= 0.0) {
        raise(Errc::non_positive_threshold, "threshold a must be positive");
    }
    if (!nonneg) {
        raise(Errc::negativity_flag_missing, "X >= 0 must be asserted");
    }
    if (uprX < 0.0) {
        raise(Errc::negative_moment, "upr(X) must be nonnegative for a nonnegative gamble");
    }
    TailBoundReport r;
    r.event_description = describe("upr", ">=", a);
    r.direction = BoundDirection::LessEq;
    r.prob_side = PrevisionSide::Upper;
    r.inequality_id = "markov-upper";
    r.consistency_required = ConsistencyLevel::TwoCoherence;
    r.assumptions_checked = {"X >= 0 asserted", "a > 0"};
    r.threshold = a;
    r.bound = clamp01(uprX / a, r.vacuous);
    return r;
}

std::pair<TailBoundReport, TailBoundReport> cantelli_precise(double pX2, double eps,
                                                             bool pX_zero) {
    if (eps <= 0.0) {
        raise(Errc::non_positive_epsilon, "eps must be positive");
    }
    if (pX2 < 0.0) {
        raise(Errc::negative_moment, "P(X^2) must be nonnegative");
    }
    if (!pX_zero) {
        raise(Errc::precondition_failed, "P(X) = 0 must be asserted");
    }
    const double bound = pX2 / (pX2 + eps * eps);
    TailBoundReport below;
    below.event_description = describe("P", "<=", -eps);
    below.direction = BoundDirection::LessEq;
    below.prob_side = PrevisionSide::Lower;
    below.inequality_id = "cantelli-precise";
    below.consistency_required = ConsistencyLevel::DFCoherence;
    below.assumptions_checked = {"P(X) = 0 asserted", "eps > 0"};
    below.threshold = -eps;
    below.bound = bound;

    TailBoundReport above = below;
    above.event_description = describe("P", ">=", eps);
    above.threshold = eps;
    return {below, above};
}

TailBoundReport cantelli_imprecise(const Assessment& a, const std::string& x_name, double c,
                                   EpsChoice eps, TailSide side) {
    if (eps.kind == EpsChoice::Kind::Value && eps.value <= 0.0) {
        raise(Errc::non_positive_epsilon, "eps must be positive");
    }
    const Gamble& x = a.at(x_name).gamble;

    CredalPolytope pinned{a, {{x, c}}};
    if (!credal_nonempty(pinned)) {
        raise(Errc::empty_constrained_credal_set,
              "no dominating prevision attains E(X) = c (in particular when c is outside "
              "[inf X, sup X])");
    }

    const Gamble dev2 = (x - c) * (x - c);
    const double u = upper_extension(a, dev2);

    TailBoundReport r;
    r.direction = BoundDirection::LessEq;
    r.prob_side = PrevisionSide::Lower;
    r.inequality_id = "cantelli-asl";
    r.consistency_required = ConsistencyLevel::AvoidingSureLoss;
    r.assumptions_checked = {"credal set with the pin E(X) = c is non-empty",
                             "u = exact upper envelope of (X - c)^2"};

    double eps_value;
    if (eps.kind == EpsChoice::Kind::ThreeSigma) {
        if (u <= 0.0) {
            raise(Errc::non_positive_epsilon,
                  "three-sigma eps needs a non-degenerate second moment");
        }
        eps_value = 3.0 * std::sqrt(u);
        // u / (u + (3 sqrt(u))^2) = u / (10 u): the moment cancels.
        r.bound = 0.1;
        r.assumptions_checked.push_back("eps = 3 sqrt(u)");
    } else {
        eps_value = eps.value;
        r.bound = clamp01(u / (u + eps_value * eps_value), r.vacuous);
    }

    if (side == TailSide::Below) {
        r.threshold = c - eps_value;
        r.event_description = describe("lpr", "<=", r.threshold);
        r.event_indicator = event_leq(x, r.threshold).indicator();
    } else {
        r.threshold = c + eps_value;
        r.event_description = describe("lpr", ">=", r.threshold);
        r.event_indicator = event_geq(x, r.threshold).indicator();
    }
    return r;
}

VarianceReport variances(const Assessment& a, const std::string& x_name) {
    const Gamble& x = a.at(x_name).gamble;
    const CredalPolytope poly{a, {}};
    const auto vertices = credal_vertices(poly);
    if (vertices.empty()) {
        raise(Errc::empty_credal_set, "the credal set is empty");
    }

    VarianceReport report;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& v : vertices) {
        const double var = variance_under(v, x);
        if (var < best) {
            best = var;
            report.witness_p1 = v;
        }
    }
    report.lower_variance = std::max(0.0, best);
    report.argmin_c_lower = expectation(report.witness_p1, x);

    // c -> max_p E_p((X - c)^2) is a maximum of convex parabolas in c, so
    // golden-section search on [inf X, sup X] finds its global minimum.
    auto h = [&](double c) {
        const Gamble dev2 = (x - c) * (x - c);
        return credal_optimize(poly, dev2, Sense::Max);
    };
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = x.min_value();
    double hi = x.max_value();
    if (hi - lo < 1e-15) {
        report.argmin_c_upper = lo;
        report.upper_variance = std::max(report.lower_variance, h(lo));
    } else {
        double c1 = hi - gr * (hi - lo);
        double c2 = lo + gr * (hi - lo);
        double f1 = h(c1);
        double f2 = h(c2);
        while (hi - lo > 1e-9) {
            if (f1 <= f2) {
                hi = c2;
                c2 = c1;
                f2 = f1;
                c1 = hi - gr * (hi - lo);
                f1 = h(c1);
            } else {
                lo = c1;
                c1 = c2;
                f1 = f2;
                c2 = lo + gr * (hi - lo);
                f2 = h(c2);
            }
        }
        report.argmin_c_upper = f1 <= f2 ? c1 : c2;
        report.upper_variance = std::max(report.lower_variance, std::min(f1, f2));
    }

    report.coherent = check_coherence(a).pass;
    std::ostringstream notes;
    notes << "lower variance from " << vertices.size()
          << " credal vertices; upper variance by golden-section on the centre";
    if (!report.coherent) {
        notes << "; warning: the assessment is not coherent, variance semantics are weaker";
    }
    report.method_notes = notes.str();
    return report;
}

std::vector<TailBoundReport> cantelli_coherent(const Assessment& a, const std::string& x_name,
                                               double eps) {
    if (eps <= 0.0) {
        raise(Errc::non_positive_epsilon, "eps must be positive");
    }
    const Gamble& x = a.at(x_name).gamble;
    const double lprX = natural_extension(a, x);
    const double uprX = upper_extension(a, x);
    const VarianceReport vr = variances(a, x_name);
    const double lvx = vr.lower_variance;
    const double uvx = vr.upper_variance;
    const double lv_bound = lvx / (lvx + eps * eps);
    const double uv_bound = uvx / (uvx + eps * eps);

    std::vector<std::string> assumptions = {"coherence required on the relevant domain"};
    if (!vr.coherent) assumptions.push_back("warning: check_coherence failed on this assessment");

    std::vector<TailBoundReport> out;
    auto push = [&](const char* cmp, double threshold, double bound, const char* id) {
        TailBoundReport r;
        r.event_description = describe("lpr", cmp, threshold);
        r.direction = BoundDirection::LessEq;
        r.prob_side = PrevisionSide::Lower;
        r.inequality_id = id;
        r.consistency_required = ConsistencyLevel::Coherence;
        r.assumptions_checked = assumptions;
        r.threshold = threshold;
        r.bound = bound;
        r.event_indicator = (cmp[0] == '<' ? event_leq(x, threshold) : event_geq(x, threshold))
                                .indicator();
        out.push_back(std::move(r));
    };
    push("<=", uprX - eps, uv_bound, "cantelli-coh-uv");
    push("<=", lprX - eps, lv_bound, "cantelli-coh-lv");
    push(">=", lprX + eps, uv_bound, "cantelli-coh-uv");
    push(">=", uprX + eps, lv_bound, "cantelli-coh-lv");
    return out;
}

ComparisonReport compare_markov_cantelli(double lprX, double uprX, double lvx, double eps,
                                         bool nonneg) {
    if (!nonneg) {
        raise(Errc::negativity_flag_missing, "X >= 0 must be asserted");
    }
    if (lprX == 0.0) {
        raise(Errc::zero_lower_prevision,
              "lpr(X) = 0 makes the first-moment bound unimprovable; comparison is void");
    }
    if (lprX < 0.0 || lprX > uprX || lvx < 0.0 || eps <= 0.0) {
        raise(Errc::precondition_failed, "need 0 < lprX <= uprX, lvx >= 0, eps > 0");
    }
    ComparisonReport r;
    r.delta = lvx * (lvx + 4.0 * lprX * (uprX - lprX));
    r.eps2 = (lvx + std::sqrt(r.delta)) / (2.0 * lprX);
    r.markov_bound = lprX / (uprX + eps);
    r.cantelli_bound = lvx / (lvx + eps * eps);
    r.cantelli_preferred = eps > r.eps2;
    r.markov_sufficient = eps * lprX < lvx;
    std::ostringstream rule;
    rule << "second-moment bound is stricter iff eps > " << r.eps2 << " (here eps = " << eps
         << ")";
    r.preferred_for_eps = rule.str();
    return r;
}

TailBoundReport conjugate_cantelli(double lvx, double eps) {
    if (eps <= 0.0) {
        raise(Errc::non_positive_epsilon, "eps must be positive");
    }
    if (lvx < 0.0) {
        raise(Errc::negative_moment, "lower variance must be nonnegative");
    }
    TailBoundReport r;
    r.direction = BoundDirection::GreaterEq;
    r.prob_side = PrevisionSide::Upper;
    r.inequality_id = "cantelli-conjugate";
    r.consistency_required = ConsistencyLevel::Coherence;
    r.assumptions_checked = {"coherence required", "threshold is lpr(X) - eps"};
    r.bound = (eps * eps) / (lvx + eps * eps);
    r.event_description = "upr(X >= lpr(X) - eps)";
    return r;
}

TailBoundReport chebyshev_like(double dev2_upper, double b, CenterKind center_kind) {
    if (b <= 0.0) {
        raise(Errc::non_positive_threshold, "b must be positive");
    }
    if (dev2_upper < 0.0) {
        raise(Errc::negative_moment, "upr((X - center)^2) must be nonnegative");
    }
    TailBoundReport r;
    r.direction = BoundDirection::LessEq;
    r.prob_side = PrevisionSide::Upper;
    r.inequality_id = "chebyshev-like";
    r.consistency_required = ConsistencyLevel::TwoCoherence;
    r.assumptions_checked = {std::string("center is the ") +
                             (center_kind == CenterKind::Lower ? "lower" : "upper") +
                             " prevision of X"};
    r.threshold = b;
    r.bound = clamp01(dev2_upper / (b * b), r.vacuous);
    std::ostringstream desc;
    desc << "upr(|X - " << (center_kind == CenterKind::Lower ? "lpr(X)" : "upr(X)")
         << "| >= " << b << ")";
    r.event_description = desc.str();
    return r;
}

bool cauchy_like_check(const std::vector<double>& p, const Gamble& g) {
    if (p.size() != g.size()) {
        raise(Errc::dimension_error, "probability vector length differs from the partition");
    }
    const Gamble pos = event_gt(g, 0.0).indicator();
    const double lhs = expectation(p, pos * g);
    const double pa = expectation(p, pos);
    const double rhs = expectation(p, pos * g * g);
    return lhs * lhs <= pa * rhs + 1e-10;
}

} // namespace ipb
