#ifndef IPB_ORACLE_HPP
#define IPB_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ipb/consistency.hpp"
#include "ipb/core.hpp"
#include "ipb/jensen.hpp"
#include "ipb/tailbounds.hpp"

namespace ipb {

/// Certificates tolerate this much negative slack before flagging a bound.
inline constexpr double certificate_slack_tol = 1e-7;

struct EnvelopePair {
    double lower = 0.0;
    double upper = 0.0;
    std::string gamble_description;
};

/// Exact lower/upper envelopes of E_p(y) over the credal set of `a`.
EnvelopePair exact_envelope(const Assessment& a, const Gamble& y, std::string description = "");

/// Slack between a claimed bound and the exact envelope of its target,
/// signed so that valid domination means slack >= -certificate_slack_tol.
struct Certificate {
    std::string target;
    double bound = 0.0;
    BoundDirection direction = BoundDirection::LessEq;
    PrevisionSide side = PrevisionSide::Lower;
    double exact = 0.0;
    double slack = 0.0;
    bool valid = false;
};

/// Core check: the claimed `bound direction side-envelope(target)` relation
/// against the exact envelope value.
Certificate certify_value(const Assessment& a, const Gamble& target, PrevisionSide side,
                          BoundDirection direction, double bound, std::string description = "");

/// Certify a tail bound. The event indicator is taken from the report when
/// present; otherwise it must be supplied.
Certificate certify(const Assessment& a, const TailBoundReport& report,
                    const std::optional<Gamble>& event_indicator = std::nullopt);

/// Certify a plug-in bound on a prevision of `target_gamble`.
Certificate certify(const Assessment& a, const JensenReport& report, const Gamble& target_gamble);

/// Deterministic-by-seed points of the credal polytope: random convex
/// mixtures of its vertices. Every returned vector satisfies all
/// constraints within 1e-9.
std::vector<std::vector<double>> sample_credal(const Assessment& a, int count,
                                               std::uint64_t seed);

/// Sampled spread of the variance over the credal set: (min, max) of
/// V_p(X) over the vertices plus `samples` random mixtures.
std::pair<double, double> brute_variance(const Assessment& a, const std::string& x_name,
                                         int samples, std::uint64_t seed);

} // namespace ipb

#endif
