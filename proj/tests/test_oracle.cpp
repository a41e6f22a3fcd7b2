#include <doctest.h>

#include <cmath>

#include "ipb/oracle.hpp"
#include "test_support.hpp"

using namespace ipb;
using ipb::testing::code_of;
using ipb::testing::coherent_assessment;
using ipb::testing::ex43_assessment;
using ipb::testing::expectation;
using ipb::testing::precise_assessment;
using ipb::testing::Rng;

TEST_SUITE_BEGIN("oracle");

TEST_CASE("exact envelopes of the worked example") {
    const Assessment a = ex43_assessment();
    const Gamble x = a.at("X").gamble;

    const EnvelopePair sq = exact_envelope(a, x * x);
    CHECK(sq.lower == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sq.upper == doctest::Approx(4.0).epsilon(1e-12));

    const EnvelopePair c = exact_envelope(a, constant_gamble(a.partition(), 2.5));
    CHECK(c.lower == doctest::Approx(2.5));
    CHECK(c.upper == doctest::Approx(2.5));

    // assessed gamble of a coherent assessment: lower envelope = assessed value
    CHECK(exact_envelope(a, x).lower == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("envelope conjugacy under negation") {
    Rng rng(515);
    for (int iter = 0; iter < 25; ++iter) {
        const std::size_t n = static_cast<std::size_t>(rng.uniform_int(3, 6));
        const Assessment a = coherent_assessment(rng, n, rng.uniform_int(1, 3));
        const Gamble y(a.partition(), rng.values(n, -3, 3));
        const EnvelopePair e = exact_envelope(a, y);
        const EnvelopePair ne = exact_envelope(a, -y);
        CHECK(ne.lower == doctest::Approx(-e.upper).epsilon(1e-9));
        CHECK(ne.upper == doctest::Approx(-e.lower).epsilon(1e-9));
        CHECK(e.lower <= e.upper + 1e-12);
        CHECK(e.lower >= y.min_value() - 1e-9);
        CHECK(e.upper <= y.max_value() + 1e-9);
    }
}

TEST_CASE("certification verdicts") {
    const Assessment a = ex43_assessment();
    const Gamble x = a.at("X").gamble;

    SUBCASE("a valid first-moment bound") {
        // shifted nonnegative version: Y = X + 1 >= 0, lpr(Y) = 1.75
        const Gamble y = x + 1.0;
        const TailBoundReport r = markov_lower(1.75, 3.0, true);
        const Certificate cert = certify(a, r, event_geq(y, 3.0).indicator());
        CHECK(cert.valid);
        CHECK(cert.slack >= 0.0);
    }
    SUBCASE("a corrupted bound is flagged") {
        // (X >= 0) has exact lower probability 7/12 > 0; claim less than that
        TailBoundReport r = markov_lower(1.75, 1.0, true);
        r.bound = 0.25;
        const Gamble y = x + 1.0;
        const Certificate cert = certify(a, r, event_geq(y, 1.0).indicator());
        CHECK_FALSE(cert.valid);
        CHECK(cert.slack < -certificate_slack_tol);
        CHECK(cert.exact == doctest::Approx(7.0 / 12.0).epsilon(1e-9));
    }
    SUBCASE("vacuous bounds always hold") {
        TailBoundReport r = markov_lower(2.0, 1.0, true); // clamps to 1
        const Certificate cert = certify(a, r, event_geq(x, 1.0).indicator());
        CHECK(r.vacuous);
        CHECK(cert.valid);
    }
    SUBCASE("reports without an event need an explicit target") {
        const TailBoundReport r = markov_lower(1.0, 2.0, true);
        CHECK(code_of([&] { certify(a, r); }) == Errc::precondition_failed);
    }
    SUBCASE("plug-in reports certify against the function image") {
        const auto rs = jensen_bounds(0.75, 2.0, functions::square());
        for (const auto& r : rs) {
            if (!r.applicable) continue;
            const Certificate cert = certify(a, r, x * x);
            CHECK(cert.valid);
        }
    }
}

TEST_CASE("credal sampling") {
    const Assessment a = ex43_assessment();

    SUBCASE("zero count") {
        CHECK(sample_credal(a, 0, 7).empty());
    }
    SUBCASE("samples satisfy every constraint and are deterministic") {
        const auto s1 = sample_credal(a, 100, 12345);
        const auto s2 = sample_credal(a, 100, 12345);
        REQUIRE(s1.size() == 100);
        CHECK(s1 == s2);
        const Gamble x = a.at("X").gamble;
        for (const auto& p : s1) {
            double sum = 0.0;
            for (double v : p) {
                CHECK(v >= -1e-9);
                sum += v;
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(expectation(p, x) >= 0.75 - 1e-9);
        }
        CHECK(sample_credal(a, 100, 999) != s1); // different seed, different stream
    }
    SUBCASE("a precise assessment yields the unique vector") {
        const auto part = make_partition(3);
        const std::vector<double> p = {0.2, 0.5, 0.3};
        const Assessment prec = precise_assessment(part, p);
        for (const auto& s : sample_credal(prec, 20, 3)) {
            for (std::size_t i = 0; i < 3; ++i) CHECK(s[i] == doctest::Approx(p[i]).epsilon(1e-9));
        }
    }
    SUBCASE("empty credal sets are reported") {
        const auto part = make_partition(2);
        Assessment bad(part);
        bad.add_lower("X", Gamble(part, {0, 1}), 2.0);
        CHECK(code_of([&] { sample_credal(bad, 5, 1); }) == Errc::empty_credal_set);
    }
}

TEST_CASE("sampled points dominate every entry and satisfy the product bound") {
    Rng rng(777);
    for (int iter = 0; iter < 12; ++iter) {
        const std::size_t n = static_cast<std::size_t>(rng.uniform_int(3, 6));
        const Assessment a = coherent_assessment(rng, n, rng.uniform_int(1, 3));
        const auto samples = sample_credal(a, 50, 1000 + static_cast<std::uint64_t>(iter));
        const Gamble probe(a.partition(), rng.values(n, -3, 3));
        for (const auto& p : samples) {
            for (const auto& e : a.entries()) {
                CHECK(expectation(p, e.gamble) >= e.lower - 1e-9);
            }
            CHECK(cauchy_like_check(p, probe));
        }
    }
}

TEST_CASE("sampled variance spread brackets the computed variances") {
    Rng rng(4242);
    for (int iter = 0; iter < 10; ++iter) {
        const std::size_t n = static_cast<std::size_t>(rng.uniform_int(3, 5));
        const Assessment a = coherent_assessment(rng, n, rng.uniform_int(1, 2));
        const auto [vmin, vmax] = brute_variance(a, "X0", 400, 99);
        const VarianceReport vr = variances(a, "X0");
        CHECK(vmin >= vr.lower_variance - 1e-9);
        CHECK(vmax <= vr.upper_variance + 1e-6);
    }
}

TEST_CASE("brute variance of the worked example reaches zero at a vertex") {
    const auto [vmin, vmax] = brute_variance(ex43_assessment(), "X", 200, 11);
    CHECK(vmin == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(vmax > 1.0); // the spread is wide: some vertex has variance 2.1875
}

TEST_CASE("brute variance of a precise assessment is a point") {
    const auto part = make_partition(3);
    const Assessment a = precise_assessment(part, {0.25, 0.25, 0.5});
    Assessment with_x = a;
    const Gamble x(part, {0, 1, 4});
    with_x.add_lower("X", x, 0.0);
    const auto [vmin, vmax] = brute_variance(with_x, "X", 50, 5);
    const double e = 0.25 * 0 + 0.25 * 1 + 0.5 * 4;
    const double v = (0.25 * 0 + 0.25 * 1 + 0.5 * 16) - e * e;
    CHECK(vmin == doctest::Approx(v).epsilon(1e-9));
    CHECK(vmax == doctest::Approx(v).epsilon(1e-9));
}

TEST_CASE("brute variance of a constant gamble is zero") {
    const auto part = make_partition(3);
    Assessment a(part);
    a.add_lower("C", constant_gamble(part, 2.0), 2.0);
    const auto [vmin, vmax] = brute_variance(a, "C", 100, 8);
    CHECK(vmin == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(vmax == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_SUITE_END();
