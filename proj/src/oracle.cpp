#include "ipb/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace ipb {

EnvelopePair exact_envelope(const Assessment& a, const Gamble& y, std::string description) {
    const CredalPolytope poly{a, {}};
    EnvelopePair e;
    e.lower = credal_optimize(poly, y, Sense::Min);
    e.upper = credal_optimize(poly, y, Sense::Max);
    e.gamble_description = std::move(description);
    return e;
}

Certificate certify_value(const Assessment& a, const Gamble& target, PrevisionSide side,
                          BoundDirection direction, double bound, std::string description) {
    const CredalPolytope poly{a, {}};
    Certificate cert;
    cert.target = std::move(description);
    cert.bound = bound;
    cert.direction = direction;
    cert.side = side;
    cert.exact = credal_optimize(poly, target,
                                 side == PrevisionSide::Lower ? Sense::Min : Sense::Max);
    cert.slack = direction == BoundDirection::LessEq ? bound - cert.exact : cert.exact - bound;
    cert.valid = cert.slack >= -certificate_slack_tol;
    return cert;
}

Certificate certify(const Assessment& a, const TailBoundReport& report,
                    const std::optional<Gamble>& event_indicator) {
    const std::optional<Gamble>& target =
        event_indicator.has_value() ? event_indicator : report.event_indicator;
    if (!target.has_value()) {
        raise(Errc::precondition_failed,
              "the report carries no event indicator; pass the event explicitly");
    }
    return certify_value(a, *target, report.prob_side, report.direction, report.bound,
                         report.event_description);
}

Certificate certify(const Assessment& a, const JensenReport& report, const Gamble& target_gamble) {
    if (!report.applicable || !report.bound.has_value()) {
        raise(Errc::precondition_failed, "cannot certify an inapplicable report");
    }
    if (!report.side.has_value()) {
        raise(Errc::precondition_failed,
              "the report does not name a prevision side; certify_value directly");
    }
    return certify_value(a, target_gamble, *report.side, report.direction, *report.bound,
                         report.target);
}

std::vector<std::vector<double>> sample_credal(const Assessment& a, int count,
                                               std::uint64_t seed) {
    if (count < 0) {
        raise(Errc::out_of_range, "sample count must be nonnegative");
    }
    const auto vertices = credal_vertices(CredalPolytope{a, {}});
    if (vertices.empty()) {
        raise(Errc::empty_credal_set, "the credal set is empty");
    }
    const std::size_t n = a.partition()->size();

    std::vector<std::vector<double>> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        // Per-sample engine keyed by (seed, index): shards reproduce the
        // serial stream.
        std::seed_seq sk{static_cast<std::uint64_t>(k), seed};
        std::mt19937_64 eng(sk);
        std::exponential_distribution<double> expo(1.0);
        std::vector<double> w(vertices.size());
        double total = 0.0;
        for (double& wi : w) {
            wi = expo(eng);
            total += wi;
        }
        std::vector<double> p(n, 0.0);
        for (std::size_t v = 0; v < vertices.size(); ++v) {
            const double weight = w[v] / total;
            for (std::size_t j = 0; j < n; ++j) p[j] += weight * vertices[v][j];
        }
        out.push_back(std::move(p));
    }
    return out;
}

std::pair<double, double> brute_variance(const Assessment& a, const std::string& x_name,
                                         int samples, std::uint64_t seed) {
    const Gamble& x = a.at(x_name).gamble;
    auto points = sample_credal(a, samples, seed);
    const auto vertices = credal_vertices(CredalPolytope{a, {}});
    points.insert(points.end(), vertices.begin(), vertices.end());

    double vmin = std::numeric_limits<double>::infinity();
    double vmax = -std::numeric_limits<double>::infinity();
    const Gamble x2 = x * x;
    for (const auto& p : points) {
        double e = 0.0;
        double e2 = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            e += p[j] * x[j];
            e2 += p[j] * x2[j];
        }
        const double v = e2 - e * e;
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    return {vmin, vmax};
}

} // namespace ipb
