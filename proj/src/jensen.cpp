#include "ipb/jensen.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ipb {

namespace {

constexpr double chord_equality_tol = 1e-12;

void require_interior(const FunctionSpec& f, double x, const char* what) {
    if (!f.interior(x, interiority_margin)) {
        std::ostringstream msg;
        msg << what << " = " << x << " is not interior to the domain [" << f.lo << ", " << f.hi
            << "] of " << f.name;
        raise(Errc::boundary_point, msg.str());
    }
}

std::string target_of(const char* measure, const FunctionSpec& f) {
    return std::string(measure) + "(" + f.name + "(X))";
}

/// Mark, within each (target, direction) group, the best applicable bound.
void mark_tightest(std::vector<JensenReport>& reports) {
    for (auto& r : reports) {
        if (!r.applicable) continue;
        bool best = true;
        for (const auto& other : reports) {
            if (&other == &r || !other.applicable) continue;
            if (other.target != r.target || other.direction != r.direction) continue;
            if (r.direction == BoundDirection::GreaterEq ? *other.bound > *r.bound
                                                         : *other.bound < *r.bound) {
                best = false;
                break;
            }
        }
        r.tightest = best;
    }
}

} // namespace

const char* direction_symbol(BoundDirection d) {
    return d == BoundDirection::LessEq ? "<=" : ">=";
}

const char* prevision_side_name(PrevisionSide s) {
    return s == PrevisionSide::Lower ? "lower" : "upper";
}

std::vector<JensenReport> jensen_base(double mu, double conj, const FunctionSpec& f, double at) {
    if (std::abs(mu - at) > 1e-12) {
        raise(Errc::precondition_failed, "the anchor must equal the measure value mu(X|B)");
    }
    (void)conj; // part of the caller's conjugacy contract; not used numerically
    require_interior(f, at, "mu(X|B)");

    std::vector<JensenReport> reports;
    const double value = f.eval(at);
    if (f.shape == Shape::Convex) {
        // Subgradient interval [dminus(at), dplus(at)].
        if (f.dplus(at) >= 0.0) {
            JensenReport r;
            r.target = target_of("mu", f);
            r.direction = BoundDirection::GreaterEq;
            r.bound = value;
            r.fired = "base-convex-mu";
            r.assumptions_checked = {"convex shape", "nonnegative subgradient exists at anchor",
                                     "mu monotone, translation-invariant, positively homogeneous"};
            r.applicable = true;
            reports.push_back(std::move(r));
        }
        if (f.dminus(at) <= 0.0) {
            JensenReport r;
            r.target = target_of("conj_mu", f);
            r.direction = BoundDirection::GreaterEq;
            r.bound = value;
            r.fired = "base-convex-conj";
            r.assumptions_checked = {"convex shape", "nonpositive subgradient exists at anchor",
                                     "conjugate pair"};
            r.applicable = true;
            reports.push_back(std::move(r));
        }
    } else {
        // Superdifferential interval [dplus(at), dminus(at)].
        if (f.dminus(at) >= 0.0) {
            JensenReport r;
            r.target = target_of("mu", f);
            r.direction = BoundDirection::LessEq;
            r.bound = value;
            r.fired = "base-concave-mu";
            r.assumptions_checked = {"concave shape", "nonnegative supergradient exists at anchor",
                                     "mu monotone, translation-invariant, positively homogeneous"};
            r.applicable = true;
            reports.push_back(std::move(r));
        }
        if (f.dplus(at) <= 0.0) {
            JensenReport r;
            r.target = target_of("conj_mu", f);
            r.direction = BoundDirection::LessEq;
            r.bound = value;
            r.fired = "base-concave-conj";
            r.assumptions_checked = {"concave shape", "nonpositive supergradient exists at anchor",
                                     "conjugate pair"};
            r.applicable = true;
            reports.push_back(std::move(r));
        }
    }
    mark_tightest(reports);
    return reports;
}

std::vector<JensenReport> jensen_bounds(double lprX, double uprX, const FunctionSpec& f) {
    if (lprX > uprX) {
        raise(Errc::conjugacy_violation, "lower prevision exceeds upper prevision");
    }
    require_interior(f, lprX, "lpr(X)");
    require_interior(f, uprX, "upr(X)");

    std::vector<JensenReport> reports;
    const double at_lpr = f.eval(lprX);
    const double at_upr = f.eval(uprX);

    if (f.shape == Shape::Convex) {
        {
            JensenReport r;
            r.target = target_of("upr", f);
            r.side = PrevisionSide::Upper;
            r.direction = BoundDirection::GreaterEq;
            r.bound = std::max(at_lpr, at_upr);
            r.fired = "convex-upper-max";
            r.assumptions_checked = {"2-coherent conjugate pair"};
            r.applicable = true;
            reports.push_back(std::move(r));
        }
        const bool at_lpr_fires = f.dplus(lprX) >= 0.0;
        const bool at_upr_fires = f.dminus(uprX) <= 0.0;
        if (at_lpr_fires) {
            JensenReport r;
            r.target = target_of("lpr", f);
            r.side = PrevisionSide::Lower;
            r.direction = BoundDirection::GreaterEq;
            r.bound = at_lpr;
            r.fired = "convex-lower-at-lpr";
            r.assumptions_checked = {"2-coherent conjugate pair",
                                     "right derivative at lpr(X) is nonnegative"};
            r.applicable = true;
            reports.push_back(std::move(r));
        }
        if (at_upr_fires) {
            JensenReport r;
            r.target = target_of("lpr", f);
            r.side = PrevisionSide::Lower;
            r.direction = BoundDirection::GreaterEq;
            r.bound = at_upr;
            r.fired = "convex-lower-at-upr";
            r.assumptions_checked = {"2-coherent conjugate pair",
                                     "left derivative at upr(X) is nonpositive"};
            r.applicable = true;
            reports.push_back(std::move(r));
        }
        if (!at_lpr_fires && !at_upr_fires) {
            JensenReport r;
            r.target = target_of("lpr", f);
            r.side = PrevisionSide::Lower;
            r.direction = BoundDirection::GreaterEq;
            r.fired = "convex-lower-none";
            r.assumptions_checked = {"derivative sign conditions fail at both anchors"};
            r.applicable = false;
            reports.push_back(std::move(r));
        }
    } else {
        {
            JensenReport r;
            r.target = target_of("lpr", f);
            r.side = PrevisionSide::Lower;
            r.direction = BoundDirection::LessEq;
            r.bound = std::min(at_lpr, at_upr);
            r.fired = "concave-lower-min";
            r.assumptions_checked = {"2-coherent conjugate pair"};
            r.applicable = true;
            reports.push_back(std::move(r));
        }
        const bool at_upr_fires = f.dminus(uprX) >= 0.0;
        const bool at_lpr_fires = f.dplus(lprX) <= 0.0;
        if (at_upr_fires) {
            JensenReport r;
            r.target = target_of("upr", f);
            r.side = PrevisionSide::Upper;
            r.direction = BoundDirection::LessEq;
            r.bound = at_upr;
            r.fired = "concave-upper-at-upr";
            r.assumptions_checked = {"2-coherent conjugate pair",
                                     "left derivative at upr(X) is nonnegative"};
            r.applicable = true;
            reports.push_back(std::move(r));
        }
        if (at_lpr_fires) {
            JensenReport r;
            r.target = target_of("upr", f);
            r.side = PrevisionSide::Upper;
            r.direction = BoundDirection::LessEq;
            r.bound = at_lpr;
            r.fired = "concave-upper-at-lpr";
            r.assumptions_checked = {"2-coherent conjugate pair",
                                     "right derivative at lpr(X) is nonpositive"};
            r.applicable = true;
            reports.push_back(std::move(r));
        }
        if (!at_upr_fires && !at_lpr_fires) {
            JensenReport r;
            r.target = target_of("upr", f);
            r.side = PrevisionSide::Upper;
            r.direction = BoundDirection::LessEq;
            r.fired = "concave-upper-none";
            r.assumptions_checked = {"derivative sign conditions fail at both anchors"};
            r.applicable = false;
            reports.push_back(std::move(r));
        }
    }
    mark_tightest(reports);
    return reports;
}

JensenReport jensen_precise(double pX, const FunctionSpec& f) {
    require_interior(f, pX, "P(X)");
    JensenReport r;
    r.side = PrevisionSide::Lower;
    r.bound = f.eval(pX);
    r.applicable = true;
    r.tightest = true;
    r.assumptions_checked = {"dF-coherent precise prevision"};
    if (f.shape == Shape::Convex) {
        r.target = target_of("P", f);
        r.direction = BoundDirection::GreaterEq;
        r.fired = "precise-convex";
    } else {
        r.target = target_of("P", f);
        r.direction = BoundDirection::LessEq;
        r.fired = "precise-concave";
    }
    return r;
}

ImprovedJensenReport improved_jensen(const Gamble& g, double lprX, double uprX,
                                     const FunctionSpec& f) {
    if (lprX > uprX) {
        raise(Errc::conjugacy_violation, "lower prevision exceeds upper prevision");
    }
    const Bounds b = bounds_of(g);
    if (!f.contains(b.inf) || !f.contains(b.sup)) {
        raise(Errc::domain_mismatch, "function domain does not cover the gamble range");
    }
    const HoleBracket xb = hole_bracket(g, lprX); // throws out_of_range when outside
    const HoleBracket zb = hole_bracket(g, uprX);

    auto chord = [&f](const HoleBracket& hb, double k) {
        const double w = (k - hb.lower) / (hb.upper - hb.lower);
        return f.eval(hb.upper) * w + f.eval(hb.lower) * (1.0 - w);
    };

    ImprovedJensenReport report;
    const bool concave = f.shape == Shape::Concave;
    report.side = concave ? PrevisionSide::Lower : PrevisionSide::Upper;

    if (concave) {
        if (xb.strict) {
            report.m1 = chord(xb, lprX);
            report.reasons.push_back("chord across the image hole at lpr(X) bounds lpr from above");
        } else {
            report.reasons.push_back(
                "lpr(X) lies in the image set; falling back to the plug-in value there");
        }
        if (zb.strict && f.eval(zb.lower) <= f.eval(zb.upper) + chord_equality_tol) {
            report.m2 = chord(zb, uprX);
            report.reasons.push_back("chord across the image hole at upr(X) bounds upr from above");
        } else if (zb.strict) {
            report.reasons.push_back(
                "function decreases across the bracket at upr(X); chord bound not applicable");
        } else {
            report.reasons.push_back(
                "upr(X) lies in the image set; falling back to the plug-in value there");
        }
        report.combined = std::min(report.m1.value_or(f.eval(lprX)),
                                   report.m2.value_or(f.eval(uprX)));
    } else {
        if (xb.strict && f.eval(xb.lower) <= f.eval(xb.upper) + chord_equality_tol) {
            report.m1 = chord(xb, lprX);
            report.reasons.push_back("chord across the image hole at lpr(X) bounds lpr from below");
        } else if (xb.strict) {
            report.reasons.push_back(
                "function decreases across the bracket at lpr(X); chord bound not applicable");
        } else {
            report.reasons.push_back(
                "lpr(X) lies in the image set; falling back to the plug-in value there");
        }
        if (zb.strict) {
            report.m2 = chord(zb, uprX);
            report.reasons.push_back("chord across the image hole at upr(X) bounds upr from below");
        } else {
            report.reasons.push_back(
                "upr(X) lies in the image set; falling back to the plug-in value there");
        }
        report.combined = std::max(report.m1.value_or(f.eval(lprX)),
                                   report.m2.value_or(f.eval(uprX)));
    }
    return report;
}

std::vector<JensenReport> lyapunov(double s, double t, const MomentKnowns& knowns) {
    if (!(0.0 < s && s < t)) {
        raise(Errc::bad_exponents, "exponents must satisfy 0 < s < t");
    }
    if (knowns.upper_abs_moment && *knowns.upper_abs_moment < 0.0) {
        raise(Errc::negative_moment, "upr(|X|^s) must be nonnegative");
    }
    if (knowns.lower_moment && *knowns.lower_moment < 0.0) {
        raise(Errc::negative_moment, "lpr(X^s) must be nonnegative");
    }
    const double power = t / s;
    std::ostringstream tstr;
    tstr << t;

    bool chain_checked = false;
    bool chain_ok = true;
    if (knowns.upper_abs_moment && knowns.lower_moment) {
        chain_checked = true;
        chain_ok = *knowns.lower_moment <= *knowns.upper_abs_moment + 1e-12;
    }

    std::vector<JensenReport> reports;
    if (knowns.upper_abs_moment) {
        JensenReport r;
        r.target = "upr(|X|^" + tstr.str() + ")";
        r.side = PrevisionSide::Upper;
        r.direction = BoundDirection::GreaterEq;
        r.fired = "power-mean-upper";
        r.assumptions_checked = {"0 < s < t", "2-coherent conjugate pair"};
        if (chain_checked) {
            r.assumptions_checked.push_back(chain_ok ? "moment chain lpr <= upr holds"
                                                     : "moment chain lpr <= upr violated");
        }
        r.applicable = chain_ok;
        if (chain_ok) r.bound = std::pow(*knowns.upper_abs_moment, power);
        reports.push_back(std::move(r));
    }
    if (knowns.lower_moment) {
        JensenReport r;
        r.target = "lpr(X^" + tstr.str() + ")";
        r.side = PrevisionSide::Lower;
        r.direction = BoundDirection::GreaterEq;
        r.fired = "power-mean-lower-nonneg";
        r.assumptions_checked = {"0 < s < t"};
        if (knowns.nonneg) {
            r.assumptions_checked.push_back("X >= 0 asserted");
        } else {
            r.assumptions_checked.push_back("X >= 0 not asserted: bound unavailable");
        }
        if (chain_checked) {
            r.assumptions_checked.push_back(chain_ok ? "moment chain lpr <= upr holds"
                                                     : "moment chain lpr <= upr violated");
        }
        r.applicable = knowns.nonneg && chain_ok;
        if (r.applicable) r.bound = std::pow(*knowns.lower_moment, power);
        reports.push_back(std::move(r));
    }
    mark_tightest(reports);
    return reports;
}

VariancePropertyCheck variance_property_check(double lprX, double lprX2, double uprX,
                                              double uprX2, bool nonneg) {
    if (!nonneg) {
        raise(Errc::negativity_flag_missing, "the check requires X >= 0 to be asserted");
    }
    VariancePropertyCheck out;
    out.lower_ok = lprX * lprX <= lprX2 + 1e-12;
    out.upper_ok = uprX * uprX <= uprX2 + 1e-12;
    return out;
}

MomentInference moment_inference(const Assessment& a, const std::string& x_name, int power) {
    if (power < 2) {
        raise(Errc::bad_exponents, "moment power must be >= 2");
    }
    const AssessmentEntry& entry = a.at(x_name);
    const Gamble& g = entry.gamble;
    if (power % 2 == 1 && g.min_value() < 0.0) {
        raise(Errc::domain_mismatch,
              "odd moment inference needs a nonnegative gamble (x^k is convex on [0, inf) only)");
    }
    MomentInference out;
    out.lprX = natural_extension(a, g);
    out.uprX = upper_extension(a, g);
    const FunctionSpec f = functions::power(power);
    out.jensen = jensen_bounds(out.lprX, out.uprX, f);
    out.improved = improved_jensen(g, out.lprX, out.uprX, f);
    const Gamble fx = apply_function(g, f);
    out.exact_lower = natural_extension(a, fx);
    out.exact_upper = upper_extension(a, fx);
    return out;
}

} // namespace ipb
