#ifndef IPB_TAILBOUNDS_HPP
#define IPB_TAILBOUNDS_HPP

#include <optional>
#include <string>
#include <vector>

#include "ipb/consistency.hpp"
#include "ipb/core.hpp"
#include "ipb/jensen.hpp"

namespace ipb {

/// A bound on the lower or upper probability of a one-sided event.
/// `direction` LessEq means `bound` majorizes the target probability.
/// `consistency_required` is the weakest level under which the inequality
/// is established.
struct TailBoundReport {
    std::string event_description;
    double bound = 0.0;
    BoundDirection direction = BoundDirection::LessEq;
    PrevisionSide prob_side = PrevisionSide::Lower;
    std::string inequality_id;
    ConsistencyLevel consistency_required = ConsistencyLevel::Coherence;
    std::vector<std::string> assumptions_checked;
    bool vacuous = false; // raw formula clamped into [0, 1]
    /// Indicator of the bounded event, when the partition is in scope.
    std::optional<Gamble> event_indicator;
    double threshold = 0.0;
};

/// lpr(X >= a) <= lpr(X)/a for nonnegative X; needs 2-coherence only.
TailBoundReport markov_lower(double lprX, double a, bool nonneg);

/// upr(X >= a) <= upr(X)/a for nonnegative X; needs 2-coherence only.
TailBoundReport markov_upper(double uprX, double a, bool nonneg);

/// Precise one-sided second-moment bounds for a centred prevision
/// (P(X) = 0): both P(X <= -eps) and P(X >= eps) are at most
/// pX2 / (pX2 + eps^2).
std::pair<TailBoundReport, TailBoundReport> cantelli_precise(double pX2, double eps, bool pX_zero);

enum class TailSide { Below, Above };

/// Epsilon choice for cantelli_imprecise: an explicit value, or three
/// standard deviations of the exact upper second moment (which makes the
/// bound identically 1/10).
struct EpsChoice {
    enum class Kind { Value, ThreeSigma } kind = Kind::Value;
    double value = 0.0;

    static EpsChoice of(double v) { return EpsChoice{Kind::Value, v}; }
    static EpsChoice three_sigma() { return EpsChoice{Kind::ThreeSigma, 0.0}; }
};

/// One-sided bound around an arbitrary centre c under sure-loss avoidance
/// plus the pin E_P(X) = c:
///   lpr(X <= c - eps)  (or >= c + eps)  <=  u / (u + eps^2),
/// with u the exact upper envelope of (X - c)^2 over the credal set.
TailBoundReport cantelli_imprecise(const Assessment& a, const std::string& x_name, double c,
                                   EpsChoice eps, TailSide side);

/// Walley's lower and upper variance of one assessed gamble.
struct VarianceReport {
    double lower_variance = 0.0;
    double upper_variance = 0.0;
    double argmin_c_lower = 0.0;
    double argmin_c_upper = 0.0;
    std::vector<double> witness_p1; // credal vertex attaining the lower variance
    std::string method_notes;
    bool coherent = false; // verdict of check_coherence on the assessment
};

/// lower variance by credal-vertex enumeration (the variance is concave in
/// p, so its minimum sits at a vertex); upper variance by golden-section
/// search on c -> upper envelope of (X - c)^2, which is convex.
VarianceReport variances(const Assessment& a, const std::string& x_name);

/// The four coherent-case bounds built from the lower/upper variance, one
/// per threshold lpr/upr -/+ eps.
std::vector<TailBoundReport> cantelli_coherent(const Assessment& a, const std::string& x_name,
                                               double eps);

/// Which of the two competing bounds on lpr(X >= upr(X) + eps) is tighter.
struct ComparisonReport {
    double delta = 0.0;
    double eps2 = 0.0; // crossover threshold: the second-moment bound wins iff eps > eps2
    std::string preferred_for_eps;
    double markov_bound = 0.0;
    double cantelli_bound = 0.0;
    bool cantelli_preferred = false;
    bool markov_sufficient = false; // eps * lpr(X) < lvx
};

ComparisonReport compare_markov_cantelli(double lprX, double uprX, double lvx, double eps,
                                         bool nonneg);

/// upr(X >= lpr(X) - eps) >= eps^2 / (lvx + eps^2).
TailBoundReport conjugate_cantelli(double lvx, double eps);

enum class CenterKind { Lower, Upper };

/// upr(|X - center| >= b) <= upr((X - center)^2) / b^2.
TailBoundReport chebyshev_like(double dev2_upper, double b, CenterKind center_kind);

/// Diagnostic for the positive-part second-moment inequality
/// (E_p(I_A X))^2 <= E_p(I_A) E_p(I_A X^2) with A = (g > 0).
bool cauchy_like_check(const std::vector<double>& p, const Gamble& g);

} // namespace ipb

#endif
