#ifndef IPB_JENSEN_HPP
#define IPB_JENSEN_HPP

#include <optional>
#include <string>
#include <vector>

#include "ipb/consistency.hpp"
#include "ipb/core.hpp"
#include "ipb/function_spec.hpp"

namespace ipb {

enum class BoundDirection { LessEq, GreaterEq };

enum class PrevisionSide { Lower, Upper };

const char* direction_symbol(BoundDirection d);
const char* prevision_side_name(PrevisionSide s);

/// Margin inside the function domain required of anchor points; the
/// supporting-line argument needs interior points.
inline constexpr double interiority_margin = 1e-12;

/// One derived inequality: `target direction bound`, e.g.
/// "lpr(square(X))" GreaterEq 0.5625.
struct JensenReport {
    std::string target;
    std::optional<PrevisionSide> side; // absent for the generic measure pair
    std::optional<double> bound;       // absent iff not applicable
    BoundDirection direction = BoundDirection::GreaterEq;
    std::string fired; // identifier of the inequality that produced it
    std::vector<std::string> assumptions_checked;
    bool applicable = false;
    bool tightest = false; // best bound among reports sharing a target
};

/// Supporting-line bounds for a generic monotone, translation-invariant,
/// positively homogeneous measure `mu` with conjugate value `conj`,
/// evaluated at the anchor mu(X|B) = at. Emits every applicable branch.
std::vector<JensenReport> jensen_base(double mu, double conj, const FunctionSpec& f, double at);

/// The four unconditional inequalities for a conjugate 2-coherent pair
/// (lprX, uprX). Convex f: upr(f(X)) >= max{f(lprX), f(uprX)} always, plus
/// lower-prevision branches gated by the one-sided derivative signs.
/// Concave f: mirrored.
std::vector<JensenReport> jensen_bounds(double lprX, double uprX, const FunctionSpec& f);

/// Precise collapse: P(f(X)) >= f(P(X)) for convex f, <= for concave.
JensenReport jensen_precise(double pX, const FunctionSpec& f);

/// Chord-improved bounds exploiting holes of the image set around the
/// assessed values. m1 is the chord value at lprX (branches a1/b2), m2 the
/// chord value at uprX (a2/b1); `combined` merges them with the plain
/// plug-in fallbacks on the side named by `side`.
struct ImprovedJensenReport {
    std::optional<double> m1;
    std::optional<double> m2;
    std::optional<double> combined;
    PrevisionSide side = PrevisionSide::Lower;
    std::vector<std::string> reasons;
};

ImprovedJensenReport improved_jensen(const Gamble& g, double lprX, double uprX,
                                     const FunctionSpec& f);

/// Known moment values feeding the power-mean bounds.
struct MomentKnowns {
    std::optional<double> upper_abs_moment; // upr(|X|^s)
    std::optional<double> lower_moment;     // lpr(X^s), meaningful when nonneg
    bool nonneg = false;                    // X >= 0 asserted by the caller
};

/// Power-mean bounds for 0 < s < t: upr(|X|^t) >= upr(|X|^s)^(t/s), and for
/// nonnegative X also lpr(X^t) >= lpr(X^s)^(t/s).
std::vector<JensenReport> lyapunov(double s, double t, const MomentKnowns& knowns);

struct VariancePropertyCheck {
    bool lower_ok = false;
    bool upper_ok = false;
};

/// Diagnostic for supplied moment pairs of a nonnegative gamble:
/// lprX^2 <= lprX2 and uprX^2 <= uprX2 within 1e-12.
VariancePropertyCheck variance_property_check(double lprX, double lprX2, double uprX,
                                              double uprX2, bool nonneg);

/// Everything the moment problem yields for X^power: the plug-in bounds,
/// the chord-improved report, and the exact envelope values for comparison.
struct MomentInference {
    std::vector<JensenReport> jensen;
    ImprovedJensenReport improved;
    double exact_lower = 0.0;
    double exact_upper = 0.0;
    double lprX = 0.0;
    double uprX = 0.0;
};

MomentInference moment_inference(const Assessment& a, const std::string& x_name, int power);

} // namespace ipb

#endif
